#include "issuecast/cache.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "issuecast/error.hpp"

namespace issuecast::ingest {
namespace {

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(Errc::IoError, "cannot write " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw Error(Errc::IoError, "short write to " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(Errc::IoError, "cannot move cache file into place at " + path.string());
    }
}

std::int64_t parse_count(std::string_view field, const std::string& where) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(Errc::FormatError, where + ": '" + std::string(field) + "' is not an integer");
    }
    if (value < 0) {
        throw Error(Errc::FormatError, where + ": negative count");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(sep, pos);
        out.push_back(line.substr(pos, next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

nlohmann::ordered_json meta_to_json(const std::string& project_id, const filter::ProjectMeta& m) {
    return nlohmann::ordered_json{
        {"project_id", project_id},
        {"pull_request_count", m.pull_request_count},
        {"commit_count", m.commit_count},
        {"duration_weeks", m.duration_weeks},
        {"issue_count", m.issue_count},
        {"contributor_count", m.contributor_count},
        {"release_count", m.release_count},
        {"is_software_dev", m.is_software_dev},
    };
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".meta.json");
    return p;
}

void save_cache(const ProjectBundle& bundle, const std::filesystem::path& csv_path) {
    validate(bundle);
    std::ostringstream csv;
    csv << kCacheHeader << '\n';
    for (std::size_t t = 0; t < bundle.weeks(); ++t) {
        csv << t << ',' << format_date(bundle.issues.week_start(t)) << ',' << bundle.issues.values()[t] << ','
            << bundle.bugs.values()[t] << ',' << bundle.enhancements.values()[t] << '\n';
    }
    nlohmann::ordered_json meta = meta_to_json(bundle.project_id, bundle.meta);
    write_atomically(csv_path, csv.str());
    write_atomically(sidecar_path(csv_path), meta.dump(2) + "\n");
}

ProjectBundle load_cache(const std::filesystem::path& csv_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) {
        throw Error(Errc::IoError, "cannot read " + csv_path.string());
    }
    const std::string where = csv_path.filename().string();
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(Errc::FormatError, where + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCacheHeader) {
        throw Error(Errc::FormatError, where + ": unexpected header '" + line + "'");
    }

    std::vector<std::int64_t> issues, bugs, enhancements;
    Date start{};
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string at = where + " row " + std::to_string(row + 1);
        const auto fields = split(line, ',');
        if (fields.size() != 5) {
            throw Error(Errc::FormatError, at + ": expected 5 fields");
        }
        const auto week = parse_count(fields[0], at);
        if (static_cast<std::size_t>(week) != row) {
            throw Error(Errc::FormatError, at + ": week index " + std::to_string(week) + " breaks contiguity");
        }
        const Date date = parse_date(fields[1]);
        if (row == 0) {
            start = date;
        } else if (date != start + std::chrono::days{7 * static_cast<long>(row)}) {
            throw Error(Errc::FormatError, at + ": week start date is not 7 days after the previous week");
        }
        issues.push_back(parse_count(fields[2], at));
        bugs.push_back(parse_count(fields[3], at));
        enhancements.push_back(parse_count(fields[4], at));
        if (bugs.back() + enhancements.back() > issues.back()) {
            throw Error(Errc::FormatError, at + ": bugs + enhancements exceed issues");
        }
        ++row;
    }
    if (row == 0) {
        throw Error(Errc::FormatError, where + ": no weekly rows");
    }

    const auto meta_path = sidecar_path(csv_path);
    std::ifstream meta_in(meta_path);
    if (!meta_in) {
        throw Error(Errc::IoError, "cannot read metadata sidecar " + meta_path.string());
    }
    std::string project_id;
    filter::ProjectMeta meta;
    try {
        nlohmann::json doc;
        meta_in >> doc;
        project_id = doc.at("project_id").get<std::string>();
        meta.pull_request_count = doc.at("pull_request_count").get<std::int64_t>();
        meta.commit_count = doc.at("commit_count").get<std::int64_t>();
        meta.duration_weeks = doc.at("duration_weeks").get<std::int64_t>();
        meta.issue_count = doc.at("issue_count").get<std::int64_t>();
        meta.contributor_count = doc.at("contributor_count").get<std::int64_t>();
        meta.release_count = doc.at("release_count").get<std::int64_t>();
        meta.is_software_dev = doc.value("is_software_dev", true);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::FormatError, meta_path.filename().string() + ": " + e.what());
    }
    try {
        return make_bundle(project_id, meta, start, std::move(issues), std::move(bugs), std::move(enhancements));
    } catch (const Error& e) {
        throw Error(Errc::FormatError, e.what());
    }
}

std::vector<std::filesystem::path> list_cache_files(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(Errc::IoError, dir.string() + " is not a directory");
    }
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace issuecast::ingest
