#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace issuecast::filter {

struct ProjectMeta {
    std::int64_t pull_request_count = 0;
    std::int64_t commit_count = 0;
    std::int64_t duration_weeks = 0;
    std::int64_t issue_count = 0;
    std::int64_t contributor_count = 0;
    std::int64_t release_count = 0;
    /// Cannot be detected from repository data; configured per project.
    bool is_software_dev = true;

    friend bool operator==(const ProjectMeta&, const ProjectMeta&) = default;
};

/// Throws Error{InvalidArgument} if any count is negative.
void validate(const ProjectMeta& meta);

enum class Rule {
    Collaboration,        // pull requests >= 1
    Commits,              // commits > 20
    Duration,             // weeks of activity >= 50
    Issues,               // issues > 10
    PersonalPurpose,      // contributors >= 8
    Releases,             // releases >= 1
    SoftwareDevelopment,  // configured flag
};

inline constexpr std::array<Rule, 7> kAllRules{
    Rule::Collaboration, Rule::Commits,  Rule::Duration,           Rule::Issues,
    Rule::PersonalPurpose, Rule::Releases, Rule::SoftwareDevelopment,
};

std::string_view to_string(Rule rule) noexcept;

struct FilterOutcome {
    bool passed = false;
    std::map<std::string, bool> rule_verdicts;  // keyed by to_string(rule)

    [[nodiscard]] bool verdict(Rule rule) const { return rule_verdicts.at(std::string(to_string(rule))); }
};

bool rule_passes(Rule rule, const ProjectMeta& meta) noexcept;
FilterOutcome evaluate_filters(const ProjectMeta& meta);

/// The first rule in kAllRules order that `meta` fails; Rule count if none.
/// Discard tables attribute each rejected project to exactly this rule.
std::size_t first_failed_rule(const ProjectMeta& meta) noexcept;

}  // namespace issuecast::filter
