#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace issuecast::cli {

/// Fixed-precision decimal used for every real number in CSV output.
std::string fmt_real(double value, int decimals = 9);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const;
};

/// Plain comma-separated reader (no quoting; none of our files need it).
CsvTable read_csv(const std::filesystem::path& path);

/// Writes to a temporary file and renames it into place.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace issuecast::cli
