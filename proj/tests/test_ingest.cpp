#include <gtest/gtest.h>

#include <fstream>

#include "issuecast/cache.hpp"
#include "issuecast/error.hpp"
#include "issuecast/github_client.hpp"
#include "issuecast/ingest.hpp"
#include "issuecast/synthetic.hpp"
#include "support.hpp"

using namespace issuecast;
using namespace issuecast::ingest;
using testing_support::TempDir;

namespace {

IssueRecord record(std::int64_t id, const std::string& when, std::vector<std::string> labels, bool pr = false) {
    IssueRecord r;
    r.id = id;
    r.created_at = parse_timestamp(when);
    r.labels = std::move(labels);
    r.is_pull_request = pr;
    r.kind = classify(r);
    return r;
}

ProjectBundle random_bundle(std::mt19937_64& rng, int index) {
    const std::size_t n = 1 + rng() % 80;
    std::vector<std::int64_t> issues(n), bugs(n), enh(n);
    for (std::size_t t = 0; t < n; ++t) {
        issues[t] = static_cast<std::int64_t>(rng() % 40);
        bugs[t] = issues[t] ? static_cast<std::int64_t>(rng() % (issues[t] + 1)) : 0;
        const auto rest = issues[t] - bugs[t];
        enh[t] = rest ? static_cast<std::int64_t>(rng() % (rest + 1)) : 0;
    }
    filter::ProjectMeta meta{static_cast<std::int64_t>(rng() % 100), static_cast<std::int64_t>(rng() % 5000),
                             static_cast<std::int64_t>(n), static_cast<std::int64_t>(rng() % 900),
                             static_cast<std::int64_t>(rng() % 50), static_cast<std::int64_t>(rng() % 20),
                             rng() % 2 == 0};
    const auto start = parse_date("2018-01-01") + std::chrono::days(7 * static_cast<int>(rng() % 300));
    return make_bundle("org/repo-" + std::to_string(index), meta, start, issues, bugs, enh);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST(Dates, RoundTrip) {
    EXPECT_EQ(format_date(parse_date("2020-02-29")), "2020-02-29");
    EXPECT_EQ(format_timestamp(parse_timestamp("2021-03-04T05:06:07Z")), "2021-03-04T05:06:07Z");
    EXPECT_EQ(parse_timestamp("2021-03-04"), parse_timestamp("2021-03-04T00:00:00Z"));
    EXPECT_THROW(parse_date("2021-02-30"), Error);
    EXPECT_THROW(parse_date("yesterday"), Error);
}

TEST(Classify, LabelRules) {
    const std::vector<std::string> a{"Bug", "p1"}, b{"enhancement"}, c{"bug", "enhancement"}, d{"question"};
    EXPECT_EQ(classify(a), IssueKind::Bug);
    EXPECT_EQ(classify(b), IssueKind::Enhancement);
    EXPECT_EQ(classify(c), IssueKind::Bug);
    EXPECT_EQ(classify(d), IssueKind::Other);
    EXPECT_EQ(classify(std::vector<std::string>{"type: Feature Request"}), IssueKind::Enhancement);
    EXPECT_EQ(classify(std::vector<std::string>{}), IssueKind::Other);
}

TEST(Classify, PatternFile) {
    TempDir dir;
    write_text(dir / "p.json", R"({"bug": ["crash"], "enhancement": ["wish"]})");
    const auto p = LabelPatterns::load(dir / "p.json");
    EXPECT_EQ(classify(std::vector<std::string>{"Crash report"}, p), IssueKind::Bug);
    EXPECT_EQ(classify(std::vector<std::string>{"bug"}, p), IssueKind::Other);
    EXPECT_EQ(classify(std::vector<std::string>{"wishlist"}, p), IssueKind::Enhancement);
    write_text(dir / "bad.json", "[1, 2");
    EXPECT_THROW(LabelPatterns::load(dir / "bad.json"), Error);
    EXPECT_THROW(LabelPatterns::load(dir / "missing.json"), Error);
}

TEST(ParseIssue, FieldsAndPullRequests) {
    const auto r = parse_issue(R"({"id": 17, "created_at": "2022-05-01T10:00:00Z",
        "labels": [{"name": "Defect"}, "misc"], "pull_request": {"url": "x"}})");
    EXPECT_EQ(r.id, 17);
    EXPECT_TRUE(r.is_pull_request);
    EXPECT_EQ(r.kind, IssueKind::Bug);
    EXPECT_EQ(r.labels.size(), 2U);
    const auto plain = parse_issue(R"({"id": 3, "created_at": "2022-05-01T10:00:00Z", "pull_request": null})");
    EXPECT_FALSE(plain.is_pull_request);
    EXPECT_THROW(parse_issue(R"({"created_at": "2022-05-01T10:00:00Z"})"), Error);
}

TEST(Bucket, WeekIndexAndCounts) {
    const auto start = parse_date("2021-01-04");
    std::vector<IssueRecord> rs;
    for (int i = 0; i < 5; ++i) rs.push_back(record(i, "2021-01-05T00:00:00Z", {"question"}));
    for (int i = 5; i < 8; ++i) rs.push_back(record(i, "2021-01-06T12:00:00Z", {"bug"}));
    for (int i = 8; i < 10; ++i) rs.push_back(record(i, "2021-01-10T23:59:59Z", {"feature"}));
    rs.push_back(record(10, "2021-01-12T00:00:00Z", {"bug"}));  // day 8
    rs.push_back(record(11, "2021-01-05T00:00:00Z", {"bug"}, true));
    rs.push_back(record(12, "2020-12-31T00:00:00Z", {}));
    const auto b = bucket_weekly(rs, start, parse_date("2021-03-07"), "o/r");
    EXPECT_EQ(b.issues.size(), 9U);
    EXPECT_EQ(b.issues.values()[0], 10);
    EXPECT_EQ(b.bugs.values()[0], 3);
    EXPECT_EQ(b.enhancements.values()[0], 2);
    EXPECT_EQ(b.issues.values()[1], 1);
    EXPECT_EQ(b.bugs.values()[1], 1);
    EXPECT_EQ(b.dropped, 1U);
    EXPECT_EQ(b.issues.project_id(), "o/r");
}

TEST(Bucket, EmptyRange) {
    const auto start = parse_date("2021-01-04");
    const auto b = bucket_weekly({}, start, start + std::chrono::days(69), "x");
    EXPECT_EQ(b.issues.size(), 10U);
    for (const auto* s : {&b.issues, &b.bugs, &b.enhancements}) {
        for (auto v : s->values()) EXPECT_EQ(v, 0);
    }
    EXPECT_THROW(bucket_weekly({}, start, start - std::chrono::days(1)), Error);
}

TEST(Bucket, SubsetInvariant) {
    std::mt19937_64 rng(71);
    const std::vector<std::vector<std::string>> labels{{"bug"}, {"feature"}, {"bug", "feature"}, {}, {"docs"}};
    for (int s = 0; s < 50; ++s) {
        std::vector<IssueRecord> rs;
        const auto start = parse_date("2020-06-01");
        for (int i = 0; i < 300; ++i) {
            IssueRecord r;
            r.id = i;
            r.created_at = Timestamp{start} + std::chrono::seconds(rng() % (86400LL * 7 * 20));
            r.labels = labels[rng() % labels.size()];
            r.is_pull_request = rng() % 7 == 0;
            r.kind = classify(r);
            rs.push_back(r);
        }
        const auto b = bucket_weekly(rs, start, start + std::chrono::days(7 * 20 - 1));
        std::int64_t total = 0;
        for (std::size_t t = 0; t < b.issues.size(); ++t) {
            EXPECT_LE(b.bugs.values()[t] + b.enhancements.values()[t], b.issues.values()[t]);
            total += b.issues.values()[t];
        }
        std::int64_t expected = 0;
        for (const auto& r : rs) expected += !r.is_pull_request;
        EXPECT_EQ(total, expected);
    }
}

TEST(Bundle, Invariants) {
    const auto start = parse_date("2020-01-06");
    EXPECT_THROW(make_bundle("p", {}, start, {3, 3}, {2, 2}, {2, 0}), Error);
    EXPECT_THROW(make_bundle("p", {}, start, {3, 3}, {2}, {0, 0}), Error);
    const auto b = make_bundle("p", {}, start, {3, 3}, {2, 2}, {1, 0});
    EXPECT_EQ(b.weeks(), 2U);
    EXPECT_EQ(&b.series(ts::Attribute::Bugs), &b.bugs);
}

TEST(Cache, SaveLoadIdentity) {
    std::mt19937_64 rng(72);
    TempDir dir;
    for (int i = 0; i < 100; ++i) {
        const auto bundle = random_bundle(rng, i);
        const auto path = dir / (project_file_stem(bundle.project_id) + ".csv");
        save_cache(bundle, path);
        EXPECT_EQ(load_cache(path), bundle);
    }
    EXPECT_EQ(list_cache_files(dir.path()).size(), 100U);
}

TEST(Cache, FileLayout) {
    TempDir dir;
    const auto b = make_bundle("a/b", {1, 30, 2, 12, 9, 2, true}, parse_date("2020-01-06"), {3, 1}, {1, 0}, {2, 0});
    save_cache(b, dir / "a__b.csv");
    EXPECT_EQ(testing_support::slurp(dir / "a__b.csv"),
              "week_index,week_start_date,issues,bugs,enhancements\n0,2020-01-06,3,1,2\n1,2020-01-13,1,0,0\n");
    EXPECT_EQ(sidecar_path(dir / "a__b.csv"), dir / "a__b.meta.json");
    EXPECT_TRUE(std::filesystem::exists(dir / "a__b.meta.json"));
    EXPECT_EQ(project_file_stem("owner/name"), "owner__name");
}

TEST(Cache, RejectsMalformedFiles) {
    TempDir dir;
    const auto b = make_bundle("x/y", {1, 30, 3, 12, 9, 2, true}, parse_date("2020-01-06"), {3, 1, 2}, {1, 0, 1},
                               {2, 0, 0});
    save_cache(b, dir / "x.csv");
    const std::string header = "week_index,week_start_date,issues,bugs,enhancements\n";
    auto expect_format_error = [&](const std::string& body) {
        write_text(dir / "x.csv", body);
        try {
            load_cache(dir / "x.csv");
            ADD_FAILURE() << body;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::FormatError) << body;
        }
    };
    expect_format_error(header + "0,2020-01-06,3,1,2\n1,2020-01-13,1,0,0\n3,2020-01-27,2,1,0\n");
    expect_format_error(header + "0,2020-01-06,3,4,0\n");
    expect_format_error(header + "0,2020-01-06,3,1,1\n1,2020-01-14,1,0,0\n");
    expect_format_error(header + "0,2020-01-06,3,-1,1\n");
    expect_format_error(header + "0,2020-01-06,3,x,1\n");
    expect_format_error(header + "0,2020-01-06,3,1\n");
    expect_format_error("week,date,issues,bugs,enhancements\n0,2020-01-06,3,1,1\n");
    expect_format_error(header);

    write_text(dir / "x.csv", header + "0,2020-01-06,3,1,1\n");
    std::filesystem::remove(dir / "x.meta.json");
    try {
        load_cache(dir / "x.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::IoError);
    }
}

TEST(Synthetic, DeterministicAndValid) {
    const auto a = synthetic::make_corpus(5, 11);
    const auto b = synthetic::make_corpus(5, 11);
    EXPECT_EQ(a, b);
    for (const auto& p : a) {
        EXPECT_NO_THROW(validate(p));
        EXPECT_TRUE(filter::evaluate_filters(p.meta).passed);
        EXPECT_EQ(p.weeks(), 104U);
    }
    EXPECT_EQ(a[3].project_id, "synthetic-003");
}
