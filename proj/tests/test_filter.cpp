#include <gtest/gtest.h>

#include <algorithm>

#include "issuecast/error.hpp"
#include "issuecast/filter.hpp"
#include "support.hpp"

using namespace issuecast;
using namespace issuecast::filter;

namespace {

ProjectMeta minimal() { return {1, 21, 50, 11, 8, 1, true}; }

std::int64_t& field(ProjectMeta& m, int k) {
    switch (k) {
        case 0: return m.pull_request_count;
        case 1: return m.commit_count;
        case 2: return m.duration_weeks;
        case 3: return m.issue_count;
        case 4: return m.contributor_count;
        default: return m.release_count;
    }
}

ProjectMeta random_meta(std::mt19937_64& rng) {
    ProjectMeta m;
    for (int k = 0; k < 6; ++k) field(m, k) = static_cast<std::int64_t>(rng() % 60);
    m.is_software_dev = rng() % 5 != 0;
    return m;
}

}  // namespace

TEST(Filter, CommitsIsStrict) {
    auto m = minimal();
    m.commit_count = 20;
    const auto r = evaluate_filters(m);
    EXPECT_FALSE(r.verdict(Rule::Commits));
    EXPECT_FALSE(r.passed);
}

TEST(Filter, MinimalBoundariesPass) {
    const auto r = evaluate_filters(minimal());
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.rule_verdicts.size(), 7U);
}

TEST(Filter, SevenContributorsFail) {
    auto m = minimal();
    m.contributor_count = 7;
    const auto r = evaluate_filters(m);
    EXPECT_FALSE(r.verdict(Rule::PersonalPurpose));
    EXPECT_FALSE(r.passed);
}

TEST(Filter, EachBoundary) {
    struct Case {
        int field;
        std::int64_t value;
        Rule rule;
    };
    for (const auto& c : {Case{0, 0, Rule::Collaboration}, Case{2, 49, Rule::Duration}, Case{3, 10, Rule::Issues},
                          Case{5, 0, Rule::Releases}}) {
        auto m = minimal();
        field(m, c.field) = c.value;
        EXPECT_FALSE(rule_passes(c.rule, m)) << to_string(c.rule);
        EXPECT_EQ(first_failed_rule(m), static_cast<std::size_t>(std::find(kAllRules.begin(), kAllRules.end(), c.rule) -
                                                                 kAllRules.begin()));
    }
    auto m = minimal();
    m.is_software_dev = false;
    EXPECT_FALSE(evaluate_filters(m).verdict(Rule::SoftwareDevelopment));
    EXPECT_EQ(first_failed_rule(minimal()), kAllRules.size());
}

TEST(Filter, PassedIsConjunction) {
    std::mt19937_64 rng(61);
    for (int s = 0; s < 1000; ++s) {
        const auto m = random_meta(rng);
        const auto r = evaluate_filters(m);
        bool all = true;
        for (auto rule : kAllRules) {
            EXPECT_EQ(r.verdict(rule), rule_passes(rule, m));
            all = all && r.verdict(rule);
        }
        EXPECT_EQ(r.passed, all);
    }
}

TEST(Filter, Monotonicity) {
    std::mt19937_64 rng(62);
    int passing = 0;
    for (int s = 0; s < 1000; ++s) {
        auto m = s % 2 ? random_meta(rng) : minimal();
        if (!evaluate_filters(m).passed) continue;
        ++passing;
        auto bigger = m;
        for (int k = 0; k < 6; ++k) {
            if (rng() % 2) field(bigger, k) += static_cast<std::int64_t>(rng() % 1000);
        }
        EXPECT_TRUE(evaluate_filters(bigger).passed);
    }
    EXPECT_GT(passing, 400);
}

TEST(Filter, RejectsNegativeCounts) {
    auto m = minimal();
    m.release_count = -1;
    EXPECT_THROW(validate(m), Error);
    EXPECT_THROW(evaluate_filters(m), Error);
}

TEST(Filter, RuleNames) {
    EXPECT_EQ(to_string(Rule::Collaboration), "Collaboration");
    EXPECT_EQ(to_string(Rule::PersonalPurpose), "PersonalPurpose");
    EXPECT_EQ(to_string(Rule::SoftwareDevelopment), "SoftwareDevelopment");
}
