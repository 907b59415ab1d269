#include "issuecast/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "issuecast/error.hpp"

namespace issuecast::cli {

std::string fmt_real(double value, int decimals) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;  // drop negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string out(buf);
    if (out.size() > 1 && out[0] == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw Error(Errc::FormatError, "missing CSV column '" + std::string(name) + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::IoError, "cannot read " + path.string());
    }
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) out.push_back(field);
        if (!line.empty() && line.back() == ',') out.emplace_back();
        return out;
    };
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(Errc::FormatError, path.string() + " is empty");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto row = split(line);
        if (row.size() != table.header.size()) {
            throw Error(Errc::FormatError, path.filename().string() + ": row has " + std::to_string(row.size()) +
                                               " fields, header has " + std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(Errc::IoError, "cannot write " + tmp.string());
        }
        out << content;
        if (!out.flush()) {
            throw Error(Errc::IoError, "short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace issuecast::cli
