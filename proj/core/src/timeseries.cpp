#include "issuecast/timeseries.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "issuecast/error.hpp"
#include "least_squares.hpp"

namespace issuecast::ts {

std::string_view to_string(Attribute attribute) noexcept {
    switch (attribute) {
        case Attribute::Issues: return "issues";
        case Attribute::Bugs: return "bugs";
        case Attribute::Enhancements: return "enhancements";
    }
    return "unknown";
}

Attribute parse_attribute(std::string_view name) {
    if (name == "issues") return Attribute::Issues;
    if (name == "bugs") return Attribute::Bugs;
    if (name == "enhancements") return Attribute::Enhancements;
    throw Error(Errc::InvalidArgument, "unknown attribute '" + std::string(name) + "'");
}

WeeklySeries::WeeklySeries(std::string project_id, Attribute attribute, Date start_date,
                           std::vector<std::int64_t> values)
    : project_id_(std::move(project_id)), attribute_(attribute), start_date_(start_date), values_(std::move(values)) {
    if (values_.empty()) {
        throw Error(Errc::InsufficientLength, "weekly series must hold at least one week");
    }
    if (std::any_of(values_.begin(), values_.end(), [](std::int64_t v) { return v < 0; })) {
        throw Error(Errc::InvalidArgument, "weekly counts must be non-negative");
    }
}

Date WeeklySeries::week_start(std::size_t index) const noexcept {
    return start_date_ + std::chrono::days{7 * static_cast<long>(index)};
}

std::vector<double> WeeklySeries::as_real() const {
    return {values_.begin(), values_.end()};
}

bool is_constant(std::span<const double> values) noexcept {
    return std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
}

// ---------------------------------------------------------------------------

AcfResult acf(std::span<const double> values, int max_lag) {
    if (max_lag < 0) {
        throw Error(Errc::InvalidArgument, "max_lag must be non-negative");
    }
    const std::size_t n = values.size();
    if (n < static_cast<std::size_t>(max_lag) + 2) {
        throw Error(Errc::InsufficientLength, "acf needs at least max_lag + 2 observations");
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double denom = 0.0;
    for (double v : values) denom += (v - mean) * (v - mean);
    if (denom == 0.0 || is_constant(values)) {
        throw Error(Errc::ZeroVariance, "autocorrelation of a constant series is undefined");
    }

    AcfResult out;
    out.max_lag = max_lag;
    out.significance_band = 1.96 / std::sqrt(static_cast<double>(n));
    out.correlations.resize(static_cast<std::size_t>(max_lag) + 1);
    out.correlations[0] = 1.0;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(max_lag); ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) num += (values[t] - mean) * (values[t + k] - mean);
        out.correlations[k] = num / denom;
    }
    return out;
}

AcfResult acf(const WeeklySeries& series, int max_lag) {
    const auto values = series.as_real();
    return acf(values, max_lag);
}

// ---------------------------------------------------------------------------

double adf_critical_value_5pct(std::size_t n) {
    if (n == 0) {
        throw Error(Errc::InsufficientLength, "critical value needs a positive sample size");
    }
    // (1/n, critical value), descending in 1/n.
    static constexpr std::array<std::array<double, 2>, 4> table{{
        {1.0 / 25.0, -3.00},
        {1.0 / 50.0, -2.93},
        {1.0 / 100.0, -2.89},
        {0.0, -2.86},
    }};
    const double x = 1.0 / static_cast<double>(n);
    std::size_t seg = 0;
    while (seg + 2 < table.size() && x < table[seg + 1][0]) ++seg;
    const auto& hi = table[seg];
    const auto& lo = table[seg + 1];
    const double slope = (hi[1] - lo[1]) / (hi[0] - lo[0]);
    return lo[1] + slope * (x - lo[0]);
}

AdfResult adf_test(std::span<const double> values, int regression_lags) {
    if (regression_lags < 0) {
        throw Error(Errc::InvalidArgument, "regression_lags must be non-negative");
    }
    const std::size_t n = values.size();
    const auto lags = static_cast<std::size_t>(regression_lags);
    if (n < lags + 10) {
        throw Error(Errc::InsufficientLength, "adf_test needs at least regression_lags + 10 observations");
    }

    std::vector<double> dy(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) dy[t] = values[t + 1] - values[t];

    AdfResult out;
    out.regression_lags = regression_lags;
    out.critical_value_5pct = adf_critical_value_5pct(n);

    if (is_constant(values)) {
        throw Error(Errc::SingularRegression, "lagged level is collinear with the constant (constant series)");
    }
    if (is_constant(std::span<const double>(dy).subspan(lags))) {
        // Deterministic ramp: no mean reversion to detect.
        out.statistic = 0.0;
        out.is_stationary = false;
        return out;
    }

    const std::size_t cols = 2 + lags;
    const std::size_t rows = dy.size() - lags;
    if (rows <= cols) {
        throw Error(Errc::InsufficientLength, "adf regression is not overdetermined");
    }
    std::vector<double> design;
    design.reserve(rows * cols);
    std::vector<double> response;
    response.reserve(rows);
    for (std::size_t t = lags; t < dy.size(); ++t) {
        design.push_back(1.0);
        design.push_back(values[t]);
        for (std::size_t i = 1; i <= lags; ++i) design.push_back(dy[t - i]);
        response.push_back(dy[t]);
    }

    detail::LeastSquaresFit fit;
    try {
        fit = detail::least_squares(design, cols, response);
    } catch (const Error& e) {
        // A degenerate lagged difference column: drop augmentation lags one at a time.
        if (e.code() != Errc::SingularRegression || regression_lags == 0) throw;
        return adf_test(values, regression_lags - 1);
    }
    const double sigma2 = fit.sse / static_cast<double>(rows - cols);
    const double beta = fit.coefficients[1];
    const double se = std::sqrt(sigma2 * fit.unscaled_variance[1]);
    if (se > 0.0) {
        out.statistic = beta / se;
    } else if (beta < 0.0) {
        out.statistic = -std::numeric_limits<double>::infinity();
    } else if (beta > 0.0) {
        out.statistic = std::numeric_limits<double>::infinity();
    } else {
        out.statistic = 0.0;
    }
    out.is_stationary = out.statistic < out.critical_value_5pct;
    return out;
}

AdfResult adf_test(const WeeklySeries& series, int regression_lags) {
    const auto values = series.as_real();
    return adf_test(values, regression_lags);
}

// ---------------------------------------------------------------------------

namespace {

void check_box_cox_domain(std::span<const double> values, double lambda, double shift) {
    if (lambda == 1.0) return;
    for (double v : values) {
        if (!(v + shift > 0.0)) {
            throw Error(Errc::DomainError, "Box-Cox input must be positive after shifting");
        }
    }
}

double box_cox_one(double x, double lambda) {
    return lambda == 0.0 ? std::log(x) : (std::pow(x, lambda) - 1.0) / lambda;
}

}  // namespace

double box_cox_log_likelihood(std::span<const double> positive_values, double lambda) {
    const auto n = static_cast<double>(positive_values.size());
    double log_sum = 0.0;
    double mean = 0.0;
    std::vector<double> w(positive_values.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        log_sum += std::log(positive_values[i]);
        w[i] = box_cox_one(positive_values[i], lambda);
        mean += w[i];
    }
    mean /= n;
    double var = 0.0;
    for (double x : w) var += (x - mean) * (x - mean);
    var /= n;
    return -0.5 * n * std::log(var) + (lambda - 1.0) * log_sum;
}

double box_cox_fit(std::span<const double> positive_values) {
    if (positive_values.size() < 4) {
        throw Error(Errc::InsufficientLength, "box_cox_fit needs at least 4 observations");
    }
    for (double v : positive_values) {
        if (!(v > 0.0)) {
            throw Error(Errc::DomainError, "box_cox_fit requires strictly positive input");
        }
    }
    if (is_constant(positive_values)) {
        return 1.0;
    }
    double best_lambda = 1.0;
    double best_llf = -std::numeric_limits<double>::infinity();
    for (int i = -20; i <= 20; ++i) {
        const double lambda = static_cast<double>(i) / 10.0;
        const double llf = box_cox_log_likelihood(positive_values, lambda);
        if (std::isfinite(llf) && llf > best_llf) {
            best_llf = llf;
            best_lambda = lambda;
        }
    }
    return best_lambda;
}

std::vector<double> box_cox_apply(std::span<const double> values, double lambda, double shift) {
    check_box_cox_domain(values, lambda, shift);
    std::vector<double> out(values.size());
    if (lambda == 1.0) {
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] + shift - 1.0;
        return out;
    }
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = box_cox_one(values[i] + shift, lambda);
    return out;
}

BoxCoxInverse box_cox_invert(std::span<const double> transformed, double lambda, double shift) {
    BoxCoxInverse out;
    out.values.resize(transformed.size());
    out.domain_clamped.assign(transformed.size(), false);
    for (std::size_t i = 0; i < transformed.size(); ++i) {
        const double w = transformed[i];
        double v = 0.0;
        bool bad = false;
        if (lambda == 0.0) {
            v = std::exp(w) - shift;
        } else if (lambda == 1.0) {
            v = w + 1.0 - shift;
        } else {
            const double base = lambda * w + 1.0;
            if (base <= 0.0) {
                bad = true;
            } else {
                v = std::pow(base, 1.0 / lambda) - shift;
            }
        }
        if (!std::isfinite(v)) bad = true;
        if (bad) {
            v = 0.0;
            out.domain_clamped[i] = true;
            ++out.domain_clamped_count;
        }
        if (v < 0.0) {
            v = 0.0;
            ++out.negative_clamped_count;
        }
        out.values[i] = v;
    }
    return out;
}

// ---------------------------------------------------------------------------

Differenced difference(std::span<const double> values, int d) {
    if (d < 0) {
        throw Error(Errc::InvalidArgument, "differencing order must be non-negative");
    }
    if (values.size() <= static_cast<std::size_t>(d)) {
        throw Error(Errc::InsufficientLength, "series must be longer than the differencing order");
    }
    Differenced out;
    out.values.assign(values.begin(), values.end());
    for (int k = 0; k < d; ++k) {
        out.heads.push_back(out.values.front());
        for (std::size_t t = 0; t + 1 < out.values.size(); ++t) {
            out.values[t] = out.values[t + 1] - out.values[t];
        }
        out.values.pop_back();
    }
    return out;
}

std::vector<double> inverse_difference(std::span<const double> differenced, std::span<const double> heads) {
    std::vector<double> level(differenced.begin(), differenced.end());
    for (std::size_t k = heads.size(); k-- > 0;) {
        std::vector<double> up;
        up.reserve(level.size() + 1);
        up.push_back(heads[k]);
        for (double step : level) up.push_back(up.back() + step);
        level = std::move(up);
    }
    return level;
}

std::vector<double> integrate_continuation(std::span<const double> differenced_forecasts,
                                           std::span<const double> level_tails) {
    std::vector<double> level(differenced_forecasts.begin(), differenced_forecasts.end());
    for (std::size_t k = level_tails.size(); k-- > 0;) {
        double acc = level_tails[k];
        for (double& x : level) {
            acc += x;
            x = acc;
        }
    }
    return level;
}

// ---------------------------------------------------------------------------

DifferencingChoice select_d(std::span<const double> values, int regression_lags) {
    for (int d = 0; d <= kMaxDifferencing; ++d) {
        const auto diffed = difference(values, d);
        if (is_constant(diffed.values)) {
            return {d, false};
        }
        if (diffed.values.size() < static_cast<std::size_t>(regression_lags) + 10) {
            // Too short to test further; treat as unresolved at this order.
            return {d, true};
        }
        if (adf_test(diffed.values, regression_lags).is_stationary) {
            return {d, false};
        }
    }
    return {kMaxDifferencing, true};
}

DifferencingChoice select_d(const WeeklySeries& series, int regression_lags) {
    const auto values = series.as_real();
    return select_d(values, regression_lags);
}

}  // namespace issuecast::ts
