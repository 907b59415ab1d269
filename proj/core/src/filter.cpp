#include "issuecast/filter.hpp"

#include "issuecast/error.hpp"

namespace issuecast::filter {

void validate(const ProjectMeta& meta) {
    if (meta.pull_request_count < 0 || meta.commit_count < 0 || meta.duration_weeks < 0 || meta.issue_count < 0 ||
        meta.contributor_count < 0 || meta.release_count < 0) {
        throw Error(Errc::InvalidArgument, "project metadata counts must be non-negative");
    }
}

std::string_view to_string(Rule rule) noexcept {
    switch (rule) {
        case Rule::Collaboration: return "Collaboration";
        case Rule::Commits: return "Commits";
        case Rule::Duration: return "Duration";
        case Rule::Issues: return "Issues";
        case Rule::PersonalPurpose: return "PersonalPurpose";
        case Rule::Releases: return "Releases";
        case Rule::SoftwareDevelopment: return "SoftwareDevelopment";
    }
    return "Unknown";
}

bool rule_passes(Rule rule, const ProjectMeta& meta) noexcept {
    switch (rule) {
        case Rule::Collaboration: return meta.pull_request_count >= 1;
        case Rule::Commits: return meta.commit_count > 20;
        case Rule::Duration: return meta.duration_weeks >= 50;
        case Rule::Issues: return meta.issue_count > 10;
        case Rule::PersonalPurpose: return meta.contributor_count >= 8;
        case Rule::Releases: return meta.release_count >= 1;
        case Rule::SoftwareDevelopment: return meta.is_software_dev;
    }
    return false;
}

FilterOutcome evaluate_filters(const ProjectMeta& meta) {
    validate(meta);
    FilterOutcome out;
    out.passed = true;
    for (Rule rule : kAllRules) {
        const bool ok = rule_passes(rule, meta);
        out.rule_verdicts.emplace(std::string(to_string(rule)), ok);
        out.passed = out.passed && ok;
    }
    return out;
}

std::size_t first_failed_rule(const ProjectMeta& meta) noexcept {
    for (std::size_t i = 0; i < kAllRules.size(); ++i) {
        if (!rule_passes(kAllRules[i], meta)) return i;
    }
    return kAllRules.size();
}

}  // namespace issuecast::filter
