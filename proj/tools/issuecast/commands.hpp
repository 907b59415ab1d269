#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "issuecast/arima.hpp"
#include "issuecast/dates.hpp"
#include "issuecast/eval.hpp"

namespace issuecast::cli {

struct Failure {
    std::string project;
    std::string code;
    std::string message;
};

struct CommandResult {
    int exit_code = 0;
    std::vector<Failure> failures;
    std::vector<std::filesystem::path> written;
    /// Resolved plan; the only output of a dry run.
    std::string plan;
};

/// Options shared by every subcommand.
struct RunConfig {
    std::vector<std::string> inputs;  // repositories, cache directories or output directories
    eval::WindowConfig window;
    arima::TransferMode mode = arima::TransferMode::Coefficients;
    std::filesystem::path out_dir = "out";
    std::optional<std::filesystem::path> patterns;
    std::string token;  // empty: read GITHUB_TOKEN
    unsigned jobs = 0;  // 0: all cores
    bool dry_run = false;

    // fetch only
    std::string base_url = "https://api.github.com";
    std::optional<Date> since;
    std::optional<Date> until;
    bool software_dev = true;

    void validate() const;
    [[nodiscard]] unsigned resolved_jobs() const;
};

/// Mines each repository into `<out>/<owner>__<repo>.csv` plus its metadata sidecar.
CommandResult cmd_fetch(const RunConfig& config);
/// Writes filter_report.csv (discards per rule, one column per corpus) and filter_projects.csv.
CommandResult cmd_filter(const RunConfig& config);
/// Rolling-window LOCAL and ISSUE evaluation: evaluation.csv, forecasts.csv, summary.json.
CommandResult cmd_evaluate(const RunConfig& config);
/// Spearman correlations: correlations.csv and the "correlations" block of summary.json.
CommandResult cmd_correlate(const RunConfig& config);
/// Welch comparisons of ISSUE against LOCAL errors read from evaluation.csv.
CommandResult cmd_compare(const RunConfig& config);
/// report.md plus SVG charts from the outputs of the other commands.
CommandResult cmd_report(const RunConfig& config);
/// Writes a synthetic corpus of cache files.
CommandResult cmd_synth(const RunConfig& config, std::size_t projects, std::uint64_t seed, std::size_t weeks);

std::string failures_json(const std::string& command, const std::vector<Failure>& failures);

/// evaluation.csv column order.
inline constexpr std::string_view kEvaluationHeader = "project_id,attribute,source,step_index,mae";
inline constexpr std::string_view kForecastHeader =
    "project_id,attribute,source,step_index,origin_week,horizon,week_index,actual,forecast";
inline constexpr std::string_view kCorrelationHeader =
    "project_id,pair,rho,strength";
inline constexpr std::string_view kComparisonHeader =
    "scope,attribute,n_issue,n_local,mean_issue,mean_local,t_statistic,degrees_of_freedom,p_value,hypothesis_rejected";

}  // namespace issuecast::cli
