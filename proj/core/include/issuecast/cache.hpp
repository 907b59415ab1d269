#pragma once

#include <filesystem>
#include <vector>

#include "issuecast/ingest.hpp"

namespace issuecast::ingest {

/// Header of the weekly-count cache file.
inline constexpr std::string_view kCacheHeader = "week_index,week_start_date,issues,bugs,enhancements";

/// `foo.csv` -> `foo.meta.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// Writes the weekly CSV and its metadata sidecar. Each file is written to a
/// temporary name in the same directory and renamed into place.
void save_cache(const ProjectBundle& bundle, const std::filesystem::path& csv_path);

/// Throws Error{IoError} if either file is unreadable and Error{FormatError}
/// on a bad header, a negative or non-integer count, a gap in week indices,
/// inconsistent week dates, or a week where bugs + enhancements > issues.
ProjectBundle load_cache(const std::filesystem::path& csv_path);

/// Every `*.csv` directly inside `dir`, sorted by filename.
std::vector<std::filesystem::path> list_cache_files(const std::filesystem::path& dir);

}  // namespace issuecast::ingest
