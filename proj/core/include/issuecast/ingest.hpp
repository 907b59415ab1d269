#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "issuecast/dates.hpp"
#include "issuecast/filter.hpp"
#include "issuecast/timeseries.hpp"

namespace issuecast::ingest {

enum class IssueKind { Bug, Enhancement, Other };

std::string_view to_string(IssueKind kind) noexcept;

struct IssueRecord {
    std::int64_t id = 0;
    Timestamp created_at{};
    std::vector<std::string> labels;
    bool is_pull_request = false;
    IssueKind kind = IssueKind::Other;
};

/// Case-insensitive substring patterns. Bug patterns are checked first.
struct LabelPatterns {
    std::vector<std::string> bug{"bug", "defect"};
    std::vector<std::string> enhancement{"enhancement", "feature", "improvement"};

    /// Reads `{"bug": [...], "enhancement": [...]}`; a missing key keeps the default list.
    static LabelPatterns load(const std::filesystem::path& path);
};

IssueKind classify(std::span<const std::string> labels, const LabelPatterns& patterns = {});
IssueKind classify(const IssueRecord& record, const LabelPatterns& patterns = {});

/// Issues, bugs and enhancements of one project on a shared weekly calendar.
/// bugs[t] + enhancements[t] <= issues[t] for every week.
struct ProjectBundle {
    std::string project_id;
    filter::ProjectMeta meta;
    ts::WeeklySeries issues;
    ts::WeeklySeries bugs;
    ts::WeeklySeries enhancements;

    [[nodiscard]] std::size_t weeks() const noexcept { return issues.size(); }
    [[nodiscard]] const ts::WeeklySeries& series(ts::Attribute attribute) const noexcept;

    friend bool operator==(const ProjectBundle&, const ProjectBundle&) = default;
};

/// Builds and validates a bundle. Throws Error{FormatError} when the subset
/// invariant fails or lengths differ.
ProjectBundle make_bundle(std::string project_id, const filter::ProjectMeta& meta, Date start_date,
                          std::vector<std::int64_t> issues, std::vector<std::int64_t> bugs,
                          std::vector<std::int64_t> enhancements);

void validate(const ProjectBundle& bundle);

struct BucketedCounts {
    ts::WeeklySeries issues;
    ts::WeeklySeries bugs;
    ts::WeeklySeries enhancements;
    std::size_t dropped = 0;  // records dated outside [start_date, end_date]
};

/// Week index = floor(days since start_date / 7). The range is inclusive and
/// spans floor((end - start) / 7) + 1 weeks. Pull requests are not counted.
BucketedCounts bucket_weekly(std::span<const IssueRecord> records, Date start_date, Date end_date,
                             const std::string& project_id = {});

/// `owner/repo` becomes `owner__repo`, usable as a file stem.
std::string project_file_stem(std::string_view project_id);

}  // namespace issuecast::ingest
