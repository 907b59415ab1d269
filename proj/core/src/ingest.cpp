#include "issuecast/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "issuecast/error.hpp"

namespace issuecast::ingest {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool any_label_matches(std::span<const std::string> labels, const std::vector<std::string>& patterns) {
    for (const auto& label : labels) {
        const auto l = lower(label);
        for (const auto& p : patterns) {
            if (!p.empty() && l.find(lower(p)) != std::string::npos) return true;
        }
    }
    return false;
}

}  // namespace

std::string_view to_string(IssueKind kind) noexcept {
    switch (kind) {
        case IssueKind::Bug: return "bug";
        case IssueKind::Enhancement: return "enhancement";
        case IssueKind::Other: return "other";
    }
    return "other";
}

LabelPatterns LabelPatterns::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::IoError, "cannot read pattern file " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::FormatError, "pattern file " + path.string() + ": " + e.what());
    }
    LabelPatterns out;
    auto read_list = [&](const char* key, std::vector<std::string>& dst) {
        if (!doc.contains(key)) return;
        if (!doc[key].is_array()) {
            throw Error(Errc::FormatError, std::string("pattern key '") + key + "' must be an array of strings");
        }
        dst.clear();
        for (const auto& item : doc[key]) {
            if (!item.is_string()) {
                throw Error(Errc::FormatError, std::string("pattern key '") + key + "' must hold strings");
            }
            dst.push_back(item.get<std::string>());
        }
    };
    read_list("bug", out.bug);
    read_list("enhancement", out.enhancement);
    return out;
}

IssueKind classify(std::span<const std::string> labels, const LabelPatterns& patterns) {
    if (any_label_matches(labels, patterns.bug)) return IssueKind::Bug;
    if (any_label_matches(labels, patterns.enhancement)) return IssueKind::Enhancement;
    return IssueKind::Other;
}

IssueKind classify(const IssueRecord& record, const LabelPatterns& patterns) {
    return classify(record.labels, patterns);
}

const ts::WeeklySeries& ProjectBundle::series(ts::Attribute attribute) const noexcept {
    switch (attribute) {
        case ts::Attribute::Bugs: return bugs;
        case ts::Attribute::Enhancements: return enhancements;
        case ts::Attribute::Issues: break;
    }
    return issues;
}

void validate(const ProjectBundle& bundle) {
    filter::validate(bundle.meta);
    const auto n = bundle.issues.size();
    if (bundle.bugs.size() != n || bundle.enhancements.size() != n) {
        throw Error(Errc::FormatError, bundle.project_id + ": attribute series differ in length");
    }
    if (bundle.bugs.start_date() != bundle.issues.start_date() ||
        bundle.enhancements.start_date() != bundle.issues.start_date()) {
        throw Error(Errc::FormatError, bundle.project_id + ": attribute series differ in start date");
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (bundle.bugs.values()[t] + bundle.enhancements.values()[t] > bundle.issues.values()[t]) {
            throw Error(Errc::FormatError, bundle.project_id + ": week " + std::to_string(t) +
                                               " has more bugs + enhancements than issues");
        }
    }
}

ProjectBundle make_bundle(std::string project_id, const filter::ProjectMeta& meta, Date start_date,
                          std::vector<std::int64_t> issues, std::vector<std::int64_t> bugs,
                          std::vector<std::int64_t> enhancements) {
    ProjectBundle bundle{
        project_id,
        meta,
        ts::WeeklySeries(project_id, ts::Attribute::Issues, start_date, std::move(issues)),
        ts::WeeklySeries(project_id, ts::Attribute::Bugs, start_date, std::move(bugs)),
        ts::WeeklySeries(project_id, ts::Attribute::Enhancements, start_date, std::move(enhancements)),
    };
    validate(bundle);
    return bundle;
}

BucketedCounts bucket_weekly(std::span<const IssueRecord> records, Date start_date, Date end_date,
                             const std::string& project_id) {
    if (end_date < start_date) {
        throw Error(Errc::InvalidRange, "bucket range ends before it starts");
    }
    const auto weeks = static_cast<std::size_t>((end_date - start_date).count() / 7 + 1);
    std::vector<std::int64_t> issues(weeks, 0), bugs(weeks, 0), enhancements(weeks, 0);
    std::size_t dropped = 0;
    for (const auto& r : records) {
        const Date day = std::chrono::floor<std::chrono::days>(r.created_at);
        if (day < start_date || day > end_date) {
            ++dropped;
            continue;
        }
        if (r.is_pull_request) continue;
        const auto week = static_cast<std::size_t>((day - start_date).count() / 7);
        ++issues[week];
        if (r.kind == IssueKind::Bug) ++bugs[week];
        if (r.kind == IssueKind::Enhancement) ++enhancements[week];
    }
    return {
        ts::WeeklySeries(project_id, ts::Attribute::Issues, start_date, std::move(issues)),
        ts::WeeklySeries(project_id, ts::Attribute::Bugs, start_date, std::move(bugs)),
        ts::WeeklySeries(project_id, ts::Attribute::Enhancements, start_date, std::move(enhancements)),
        dropped,
    };
}

std::string project_file_stem(std::string_view project_id) {
    std::string out;
    for (char c : project_id) {
        if (c == '/') {
            out += "__";
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') {
            out += c;
        } else {
            out += '_';
        }
    }
    return out;
}

}  // namespace issuecast::ingest
