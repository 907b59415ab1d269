#include <algorithm>
#include <cmath>
#include <optional>
#include <map>
#include <set>
#include <sstream>

#include "issuecast/commands.hpp"
#include "issuecast/csv.hpp"
#include "issuecast/error.hpp"
#include "issuecast/ingest.hpp"
#include "issuecast/stats.hpp"

namespace issuecast::cli {
namespace {

namespace fs = std::filesystem;

struct Line {
    std::string label;
    std::string colour;
    std::vector<double> ys;
};

constexpr double kWidth = 640;
constexpr double kHeight = 360;
constexpr double kLeft = 56;
constexpr double kRight = 150;
constexpr double kTop = 36;
constexpr double kBottom = 40;

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Line>& lines) {
    std::size_t n = 0;
    double y_max = 0.0;
    for (const auto& l : lines) {
        n = std::max(n, l.ys.size());
        for (double y : l.ys) {
            if (std::isfinite(y)) y_max = std::max(y_max, y);
        }
    }
    if (y_max <= 0.0) y_max = 1.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](std::size_t i) { return kLeft + (n > 1 ? plot_w * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0); };
    auto py = [&](double y) { return kTop + plot_h * (1.0 - std::clamp(y, 0.0, y_max) / y_max); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(title)
       << "</text>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
       << kTop + plot_h << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
       << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double y = y_max * k / 4.0;
        os << "<text x=\"" << kLeft - 4 << "\" y=\"" << fmt_real(py(y) + 4, 2) << "\" text-anchor=\"end\">"
           << fmt_real(y, 2) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 8 << "\" text-anchor=\"middle\">"
       << xml_escape(x_label) << "</text>\n";
    os << "<text x=\"14\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
       << kTop + plot_h / 2 << ")\">" << xml_escape(y_label) << "</text>\n";
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto& l = lines[li];
        os << "<polyline fill=\"none\" stroke=\"" << l.colour << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < l.ys.size(); ++i) {
            if (!std::isfinite(l.ys[i])) continue;
            if (!first) os << ' ';
            os << fmt_real(px(i), 2) << ',' << fmt_real(py(l.ys[i]), 2);
            first = false;
        }
        os << "\"/>\n";
        const double ly = kTop + 14.0 * static_cast<double>(li);
        os << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 30
           << "\" y2=\"" << ly << "\" stroke=\"" << l.colour << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << kWidth - kRight + 34 << "\" y=\"" << ly + 4 << "\">" << xml_escape(l.label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

const char* colour_for(const std::string& source) { return source == "ISSUE" ? "#d62728" : "#1f77b4"; }

double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const auto m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

CommandResult cmd_report(const RunConfig& config) {
    config.validate();
    CommandResult result;
    if (config.inputs.empty()) {
        throw Error(Errc::InvalidArgument, "report needs at least one output directory");
    }
    {
        std::ostringstream os;
        os << "command: report\n";
        for (const auto& in : config.inputs) os << "input: " << in << "\n";
        os << "out: " << config.out_dir.string() << "\n"
           << "write: " << (config.out_dir / "report.md").string() << "\n";
        result.plan = os.str();
    }
    if (config.dry_run) return result;

    auto find = [&](const char* name) -> std::optional<fs::path> {
        for (const auto& in : config.inputs) {
            const auto p = fs::path(in) / name;
            if (fs::exists(p)) return p;
        }
        return std::nullopt;
    };

    std::ostringstream md;
    md << "# issuecast report\n\n";
    auto write_svg = [&](const std::string& name, const std::string& svg) {
        write_file(config.out_dir / name, svg);
        result.written.push_back(config.out_dir / name);
    };

    if (const auto path = find("evaluation.csv")) {
        const auto table = read_csv(*path);
        const auto c_p = table.column("project_id");
        const auto c_a = table.column("attribute");
        const auto c_s = table.column("source");
        const auto c_m = table.column("mae");
        // (attribute, source) -> project -> step errors
        std::map<std::pair<std::string, std::string>, std::map<std::string, std::vector<double>>> groups;
        for (const auto& row : table.rows) groups[{row[c_a], row[c_s]}][row[c_p]].push_back(std::stod(row[c_m]));

        md << "## Forecast error\n\n"
           << "| attribute | source | projects | median of mean MAE | mean of mean MAE |\n"
           << "|---|---|---:|---:|---:|\n";
        std::map<std::string, std::vector<Line>> charts;
        for (const auto& [key, projects] : groups) {
            std::vector<double> means;
            for (const auto& [id, errs] : projects) means.push_back(stats::mean(errs));
            std::sort(means.begin(), means.end());
            md << "| " << key.first << " | " << key.second << " | " << means.size() << " | "
               << fmt_real(median(means), 4) << " | " << fmt_real(stats::mean(means), 4) << " |\n";
            charts[key.first].push_back({key.second, colour_for(key.second), means});
        }
        md << "\n";
        for (const auto& [attr, lines] : charts) {
            const auto name = "mae_" + attr + ".svg";
            write_svg(name, line_chart("Mean MAE per project: " + attr, "projects (sorted)", "mean MAE", lines));
            md << "![" << attr << "](" << name << ")\n\n";
        }
    }

    if (const auto path = find("forecasts.csv")) {
        const auto table = read_csv(*path);
        const auto c_p = table.column("project_id");
        const auto c_a = table.column("attribute");
        const auto c_s = table.column("source");
        const auto c_h = table.column("horizon");
        const auto c_w = table.column("week_index");
        const auto c_act = table.column("actual");
        const auto c_f = table.column("forecast");
        std::string project;
        for (const auto& row : table.rows) {
            if (project.empty() || row[c_p] < project) project = row[c_p];
        }
        // attribute -> source -> week -> value
        std::map<std::string, std::map<std::string, std::map<std::size_t, double>>> series;
        std::map<std::string, std::map<std::size_t, double>> actual;
        for (const auto& row : table.rows) {
            if (row[c_p] != project || row[c_h] != "1") continue;
            const auto week = static_cast<std::size_t>(std::stoull(row[c_w]));
            series[row[c_a]][row[c_s]][week] = std::stod(row[c_f]);
            actual[row[c_a]][week] = std::stod(row[c_act]);
        }
        if (!project.empty()) {
            md << "## One-week-ahead forecasts for " << project << "\n\n";
        }
        for (const auto& [attr, by_source] : series) {
            std::vector<Line> lines;
            std::vector<double> act;
            for (const auto& [w, v] : actual[attr]) act.push_back(v);
            lines.push_back({"actual", "#000000", act});
            for (const auto& [source, points] : by_source) {
                std::vector<double> ys;
                for (const auto& [w, v] : points) ys.push_back(v);
                lines.push_back({source, colour_for(source), ys});
            }
            const auto name = "forecast_" + ingest::project_file_stem(project) + "_" + attr + ".svg";
            write_svg(name, line_chart(project + " " + attr + " (horizon 1)", "test week", "count", lines));
            md << "![" << attr << "](" << name << ")\n\n";
        }
    }

    if (const auto path = find("correlations.csv")) {
        const auto table = read_csv(*path);
        const auto c_pair = table.column("pair");
        const auto c_rho = table.column("rho");
        const auto c_str = table.column("strength");
        std::map<std::string, std::vector<double>> rhos;
        std::map<std::string, std::map<std::string, std::size_t>> strengths;
        for (const auto& row : table.rows) {
            if (row[c_rho] != "NA") rhos[row[c_pair]].push_back(std::stod(row[c_rho]));
            ++strengths[row[c_pair]][row[c_str]];
        }
        md << "## Correlation\n\n| pair | projects | median rho | moderate-to-strong | none | undefined |\n"
           << "|---|---:|---:|---:|---:|---:|\n";
        for (auto& [pair, counts] : strengths) {
            std::size_t total = 0;
            for (const auto& [k, v] : counts) total += v;
            md << "| " << pair << " | " << total << " | " << fmt_real(median(rhos[pair]), 4) << " | "
               << counts["moderate-to-strong"] << " | " << counts["none"] << " | " << counts["undefined"] << " |\n";
        }
        md << "\n";
    }

    if (const auto path = find("comparison.csv")) {
        const auto table = read_csv(*path);
        const auto c_scope = table.column("scope");
        md << "## ISSUE versus LOCAL (pooled)\n\n"
           << "| attribute | n ISSUE | n LOCAL | mean ISSUE | mean LOCAL | t | df | p | rejected |\n"
           << "|---|---:|---:|---:|---:|---:|---:|---:|---|\n";
        for (const auto& row : table.rows) {
            if (row[c_scope] != "ALL") continue;
            md << "|";
            for (const char* col : {"attribute", "n_issue", "n_local", "mean_issue", "mean_local", "t_statistic",
                                    "degrees_of_freedom", "p_value", "hypothesis_rejected"}) {
                md << ' ' << row[table.column(col)] << " |";
            }
            md << "\n";
        }
        md << "\n";
    }

    write_file(config.out_dir / "report.md", md.str());
    result.written.insert(result.written.begin(), config.out_dir / "report.md");
    return result;
}

}  // namespace issuecast::cli
