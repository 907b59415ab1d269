#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "issuecast/arima.hpp"
#include "issuecast/ingest.hpp"
#include "issuecast/stats.hpp"

namespace issuecast::eval {

struct WindowConfig {
    int train_weeks = 20;
    int test_weeks = 4;
    int step_weeks = 1;

    /// Throws Error{InvalidArgument} unless all are >= 1 and train_weeks >= 12.
    void validate() const;
};

/// floor((n - train - test) / step) + 1 when n >= train + test, else 0.
std::size_t rolling_step_count(std::size_t n, const WindowConfig& config);

enum class ModelSource { Local, Issue };

std::string_view to_string(ModelSource source) noexcept;

struct StepForecast {
    std::size_t origin_index = 0;  // last training week
    std::vector<double> values;    // test_weeks forecasts
};

struct RollingEvalResult {
    std::string project_id;
    ts::Attribute target_attribute = ts::Attribute::Issues;
    ModelSource model_source = ModelSource::Local;
    std::vector<double> per_step_mae;
    double mean_mae = 0.0;
    double mae_variance = 0.0;  // population variance of per_step_mae
    std::size_t steps = 0;
    bool series_too_short = false;
    /// Windows whose order selection or fit failed and used the window mean instead.
    std::size_t fallback_windows = 0;
    /// Forecast values clamped to zero across all windows.
    std::size_t clamped_values = 0;
    std::vector<StepForecast> forecasts;
};

/// Slides a train/test window over `target`. Without `source` each window is
/// fit on the target itself (LOCAL); with `source` the model comes from the
/// source window through arima::transfer_forecast (ISSUE). One MAE per window
/// over its test_weeks forecasts.
RollingEvalResult rolling_eval(const ts::WeeklySeries& target, const ts::WeeklySeries* source,
                               const WindowConfig& config = {},
                               arima::TransferMode mode = arima::TransferMode::Coefficients,
                               const arima::FitOptions& options = {});

/// LOCAL results for issues, bugs and enhancements, in that order.
std::array<RollingEvalResult, 3> run_rq1(const ingest::ProjectBundle& bundle, const WindowConfig& config = {},
                                         const arima::FitOptions& options = {});

struct CorrelationReport {
    std::string project_id;
    std::optional<double> rho_issues_bugs;
    std::optional<double> rho_issues_enhancements;
    std::optional<double> rho_bugs_enhancements;
    stats::CorrelationStrength strength_issues_bugs = stats::CorrelationStrength::Undefined;
    stats::CorrelationStrength strength_issues_enhancements = stats::CorrelationStrength::Undefined;
    stats::CorrelationStrength strength_bugs_enhancements = stats::CorrelationStrength::Undefined;
};

/// Spearman's rho over the full weekly history for each attribute pair. A pair
/// involving a constant series is left empty and labeled Undefined.
CorrelationReport run_rq2(const ingest::ProjectBundle& bundle);

/// ISSUE-model results for bugs and enhancements, in that order.
std::array<RollingEvalResult, 2> run_rq3(const ingest::ProjectBundle& bundle, const WindowConfig& config = {},
                                         arima::TransferMode mode = arima::TransferMode::Coefficients,
                                         const arima::FitOptions& options = {});

struct ComparisonOutcome {
    stats::WelchResult welch;
    /// p < 0.05 rejects "ISSUE errors are larger than LOCAL errors".
    bool hypothesis_rejected = false;
    std::string decision;
};

/// Welch's test of ISSUE per-step errors against LOCAL per-step errors with
/// the one-sided alternative "ISSUE greater".
ComparisonOutcome run_rq4(const RollingEvalResult& issue, const RollingEvalResult& local);
ComparisonOutcome run_rq4(std::span<const double> issue_errors, std::span<const double> local_errors);

/// Concatenated per_step_mae of several results.
std::vector<double> pool_errors(std::span<const RollingEvalResult> results);

struct ProjectEvaluation {
    std::string project_id;
    std::array<RollingEvalResult, 3> local;  // issues, bugs, enhancements
    std::array<RollingEvalResult, 2> issue;  // bugs, enhancements
    std::optional<std::string> error;
};

/// Runs RQ1 and RQ3 for every bundle on `jobs` worker threads. The result is
/// sorted by project_id and does not depend on `jobs`.
std::vector<ProjectEvaluation> evaluate_projects(std::span<const ingest::ProjectBundle> bundles,
                                                 const WindowConfig& config = {},
                                                 arima::TransferMode mode = arima::TransferMode::Coefficients,
                                                 unsigned jobs = 1, const arima::FitOptions& options = {});

}  // namespace issuecast::eval
