#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "issuecast/dates.hpp"

namespace issuecast::ts {

enum class Attribute { Issues, Bugs, Enhancements };

std::string_view to_string(Attribute attribute) noexcept;
/// Accepts the lowercase names produced by to_string ("issues", "bugs", "enhancements").
Attribute parse_attribute(std::string_view name);

/// Weekly counts of one attribute of one project. Index i covers the seven
/// days starting at start_date + 7*i; there are no gaps.
class WeeklySeries {
public:
    WeeklySeries(std::string project_id, Attribute attribute, Date start_date, std::vector<std::int64_t> values);

    [[nodiscard]] const std::string& project_id() const noexcept { return project_id_; }
    [[nodiscard]] Attribute attribute() const noexcept { return attribute_; }
    [[nodiscard]] Date start_date() const noexcept { return start_date_; }
    [[nodiscard]] const std::vector<std::int64_t>& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] Date week_start(std::size_t index) const noexcept;

    /// Counts widened to double, the form every numeric routine consumes.
    [[nodiscard]] std::vector<double> as_real() const;

    friend bool operator==(const WeeklySeries&, const WeeklySeries&) = default;

private:
    std::string project_id_;
    Attribute attribute_;
    Date start_date_;
    std::vector<std::int64_t> values_;
};

/// Everything needed to map model-scale values back to counts: the Box-Cox
/// parameters and the leading value of each differencing level.
struct TransformState {
    double lambda = 1.0;
    double shift = 1.0;
    int d = 0;
    std::vector<double> retained_heads;
};

// ---------------------------------------------------------------------------
// Autocorrelation

struct AcfResult {
    int max_lag = 0;
    std::vector<double> correlations;  // r_0 .. r_max_lag
    double significance_band = 0.0;    // 1.96 / sqrt(n)
};

AcfResult acf(std::span<const double> values, int max_lag);
AcfResult acf(const WeeklySeries& series, int max_lag);

// ---------------------------------------------------------------------------
// Augmented Dickey-Fuller, constant-only regression

inline constexpr int kDefaultAdfLags = 1;

struct AdfResult {
    double statistic = 0.0;
    double critical_value_5pct = 0.0;
    bool is_stationary = false;
    int regression_lags = 0;
};

/// 5% critical value for the constant-only Dickey-Fuller test, linear in 1/n
/// through the tabulated points n = 25, 50, 100 and the asymptotic value.
/// Shorter samples extrapolate along the n = 25..50 segment.
double adf_critical_value_5pct(std::size_t n);

/// Regresses dy_t on [1, y_{t-1}, dy_{t-1}, ..., dy_{t-lags}] and reports the
/// t-ratio of the y_{t-1} coefficient. A series whose first differences are all
/// equal is a deterministic ramp; it is reported with statistic 0 (unit root
/// not rejected) rather than as a singular regression.
AdfResult adf_test(std::span<const double> values, int regression_lags = kDefaultAdfLags);
AdfResult adf_test(const WeeklySeries& series, int regression_lags = kDefaultAdfLags);

// ---------------------------------------------------------------------------
// Box-Cox power transform

inline constexpr double kDefaultShift = 1.0;

/// Profile log-likelihood of the Box-Cox model at `lambda` (up to a constant).
double box_cox_log_likelihood(std::span<const double> positive_values, double lambda);

/// Grid search over lambda in {-2.0, -1.9, ..., 2.0}. Constant input returns 1.
double box_cox_fit(std::span<const double> positive_values);

/// w = ((v + shift)^lambda - 1) / lambda, or ln(v + shift) at lambda = 0.
/// lambda = 1 is affine and accepts any real input; otherwise v + shift must be > 0.
std::vector<double> box_cox_apply(std::span<const double> values, double lambda, double shift);

struct BoxCoxInverse {
    std::vector<double> values;            // clamped at 0
    std::vector<bool> domain_clamped;      // lambda*w + 1 <= 0, or non-finite result
    std::size_t domain_clamped_count = 0;
    std::size_t negative_clamped_count = 0;  // in-domain results below 0 after un-shifting
};

BoxCoxInverse box_cox_invert(std::span<const double> transformed, double lambda, double shift);

// ---------------------------------------------------------------------------
// Differencing

struct Differenced {
    std::vector<double> values;
    std::vector<double> heads;  // heads[k] = first value of difference level k
};

Differenced difference(std::span<const double> values, int d);
std::vector<double> inverse_difference(std::span<const double> differenced, std::span<const double> heads);

/// Integrates forecasts of the d-th difference onto the end of a series.
/// `level_tails[k]` is the last observed value of difference level k.
std::vector<double> integrate_continuation(std::span<const double> differenced_forecasts,
                                           std::span<const double> level_tails);

// ---------------------------------------------------------------------------
// Differencing order

inline constexpr int kMaxDifferencing = 2;

struct DifferencingChoice {
    int d = 0;
    bool nonstationary_at_cap = false;
};

/// Smallest d in {0, 1, 2} whose d-times differenced series passes adf_test.
/// A differenced series that is exactly constant counts as stationary.
DifferencingChoice select_d(std::span<const double> values, int regression_lags = kDefaultAdfLags);
DifferencingChoice select_d(const WeeklySeries& series, int regression_lags = kDefaultAdfLags);

/// True when every element equals the first one.
bool is_constant(std::span<const double> values) noexcept;

}  // namespace issuecast::ts
