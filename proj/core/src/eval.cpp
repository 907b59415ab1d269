#include "issuecast/eval.hpp"

#include <algorithm>
#include <cmath>

#include "issuecast/error.hpp"
#include "issuecast/parallel.hpp"

namespace issuecast::eval {
namespace {

arima::Forecast mean_model_forecast(std::span<const double> window, int horizon, const arima::FitOptions& options) {
    const auto model = arima::fit(window, arima::ArimaOrder{0, 0, 0}, options);
    return arima::forecast(model, horizon);
}

void summarize(RollingEvalResult& r) {
    r.steps = r.per_step_mae.size();
    if (r.per_step_mae.empty()) {
        r.mean_mae = 0.0;
        r.mae_variance = 0.0;
        return;
    }
    r.mean_mae = stats::mean(r.per_step_mae);
    r.mae_variance = stats::population_variance(r.per_step_mae);
}

}  // namespace

void WindowConfig::validate() const {
    if (train_weeks < 1 || test_weeks < 1 || step_weeks < 1) {
        throw Error(Errc::InvalidArgument, "window sizes and step must be at least 1");
    }
    if (train_weeks < static_cast<int>(arima::kMinOrderSelectionLength)) {
        throw Error(Errc::InvalidArgument, "training window must span at least 12 weeks");
    }
}

std::size_t rolling_step_count(std::size_t n, const WindowConfig& config) {
    config.validate();
    const auto span = static_cast<std::size_t>(config.train_weeks + config.test_weeks);
    if (n < span) return 0;
    return (n - span) / static_cast<std::size_t>(config.step_weeks) + 1;
}

std::string_view to_string(ModelSource source) noexcept {
    return source == ModelSource::Local ? "LOCAL" : "ISSUE";
}

RollingEvalResult rolling_eval(const ts::WeeklySeries& target, const ts::WeeklySeries* source,
                               const WindowConfig& config, arima::TransferMode mode,
                               const arima::FitOptions& options) {
    config.validate();
    if (source && (source->size() != target.size() || source->start_date() != target.start_date())) {
        throw Error(Errc::WindowMismatch, "source and target series are not aligned");
    }

    RollingEvalResult out;
    out.project_id = target.project_id();
    out.target_attribute = target.attribute();
    out.model_source = source ? ModelSource::Issue : ModelSource::Local;

    const std::size_t steps = rolling_step_count(target.size(), config);
    if (steps == 0) {
        out.series_too_short = true;
        return out;
    }

    const auto tgt = target.as_real();
    const auto src = source ? source->as_real() : std::vector<double>{};
    const auto train = static_cast<std::size_t>(config.train_weeks);
    const int horizon = config.test_weeks;

    out.per_step_mae.reserve(steps);
    out.forecasts.reserve(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        const std::size_t begin = s * static_cast<std::size_t>(config.step_weeks);
        const std::span<const double> target_window(tgt.data() + begin, train);
        const std::span<const double> actual(tgt.data() + begin + train, static_cast<std::size_t>(horizon));

        arima::Forecast fc;
        try {
            if (source) {
                const std::span<const double> source_window(src.data() + begin, train);
                fc = arima::transfer_forecast(source_window, target_window, horizon, mode, options);
            } else {
                const auto selection = arima::select_order(target_window);
                const auto model = arima::fit(target_window, selection.order, options);
                fc = arima::forecast(model, horizon);
            }
        } catch (const Error&) {
            fc = mean_model_forecast(target_window, horizon, options);
            ++out.fallback_windows;
        }
        out.clamped_values += fc.clamped_count;
        out.per_step_mae.push_back(stats::mae(actual, fc.values));
        out.forecasts.push_back({begin + train - 1, std::move(fc.values)});
    }
    summarize(out);
    return out;
}

std::array<RollingEvalResult, 3> run_rq1(const ingest::ProjectBundle& bundle, const WindowConfig& config,
                                         const arima::FitOptions& options) {
    return {
        rolling_eval(bundle.issues, nullptr, config, arima::TransferMode::Coefficients, options),
        rolling_eval(bundle.bugs, nullptr, config, arima::TransferMode::Coefficients, options),
        rolling_eval(bundle.enhancements, nullptr, config, arima::TransferMode::Coefficients, options),
    };
}

CorrelationReport run_rq2(const ingest::ProjectBundle& bundle) {
    CorrelationReport out;
    out.project_id = bundle.project_id;
    const auto issues = bundle.issues.as_real();
    const auto bugs = bundle.bugs.as_real();
    const auto enhancements = bundle.enhancements.as_real();

    auto pair = [](std::span<const double> x, std::span<const double> y, std::optional<double>& rho,
                   stats::CorrelationStrength& strength) {
        try {
            rho = stats::spearman_rho(x, y);
            strength = stats::classify_correlation(*rho);
        } catch (const Error& e) {
            if (e.code() != Errc::ConstantInput && e.code() != Errc::InsufficientLength) throw;
            rho.reset();
            strength = stats::CorrelationStrength::Undefined;
        }
    };
    pair(issues, bugs, out.rho_issues_bugs, out.strength_issues_bugs);
    pair(issues, enhancements, out.rho_issues_enhancements, out.strength_issues_enhancements);
    pair(bugs, enhancements, out.rho_bugs_enhancements, out.strength_bugs_enhancements);
    return out;
}

std::array<RollingEvalResult, 2> run_rq3(const ingest::ProjectBundle& bundle, const WindowConfig& config,
                                         arima::TransferMode mode, const arima::FitOptions& options) {
    return {
        rolling_eval(bundle.bugs, &bundle.issues, config, mode, options),
        rolling_eval(bundle.enhancements, &bundle.issues, config, mode, options),
    };
}

ComparisonOutcome run_rq4(std::span<const double> issue_errors, std::span<const double> local_errors) {
    if (issue_errors.empty() || local_errors.empty()) {
        throw Error(Errc::EmptyInput, "comparison needs non-empty error traces");
    }
    ComparisonOutcome out;
    out.welch = stats::welch_t_test(issue_errors, local_errors);
    out.hypothesis_rejected = out.welch.reject_at_5pct;
    out.decision = out.hypothesis_rejected
                       ? "p < 0.05: reject 'ISSUE errors are larger than LOCAL errors'; ISSUE errors are "
                         "reported as comparable to LOCAL errors"
                       : "p >= 0.05: 'ISSUE errors are larger than LOCAL errors' is not rejected";
    return out;
}

ComparisonOutcome run_rq4(const RollingEvalResult& issue, const RollingEvalResult& local) {
    return run_rq4(issue.per_step_mae, local.per_step_mae);
}

std::vector<double> pool_errors(std::span<const RollingEvalResult> results) {
    std::vector<double> out;
    for (const auto& r : results) out.insert(out.end(), r.per_step_mae.begin(), r.per_step_mae.end());
    return out;
}

std::vector<ProjectEvaluation> evaluate_projects(std::span<const ingest::ProjectBundle> bundles,
                                                 const WindowConfig& config, arima::TransferMode mode, unsigned jobs,
                                                 const arima::FitOptions& options) {
    config.validate();
    std::vector<ProjectEvaluation> out(bundles.size());
    parallel_for(bundles.size(), jobs, [&](std::size_t i) {
        auto& slot = out[i];
        slot.project_id = bundles[i].project_id;
        try {
            slot.local = run_rq1(bundles[i], config, options);
            slot.issue = run_rq3(bundles[i], config, mode, options);
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    });
    std::stable_sort(out.begin(), out.end(),
                     [](const ProjectEvaluation& a, const ProjectEvaluation& b) { return a.project_id < b.project_id; });
    return out;
}

}  // namespace issuecast::eval
