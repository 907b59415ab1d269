#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "issuecast/timeseries.hpp"

namespace issuecast::arima {

struct ArimaOrder {
    int p = 0;  // autoregressive lags
    int d = 0;  // differencing, 0..2
    int q = 0;  // moving-average lags; always 0 for fitted models

    friend bool operator==(const ArimaOrder&, const ArimaOrder&) = default;
};

inline constexpr int kMaxArOrder = 3;
inline constexpr std::size_t kMinOrderSelectionLength = 12;

struct OrderSelection {
    ArimaOrder order;
    bool constant_window = false;
    bool nonstationary_at_cap = false;
};

/// d from select_d, q = 0, and p = the number of leading lags of the
/// d-differenced series whose autocorrelation falls outside the 1.96/sqrt(n)
/// band, capped at min(3, (n - d - 1) / 3).
OrderSelection select_order(std::span<const double> values, int adf_lags = ts::kDefaultAdfLags);
OrderSelection select_order(const ts::WeeklySeries& series, int adf_lags = ts::kDefaultAdfLags);

struct FitOptions {
    /// Skip the Box-Cox grid search and use this exponent. 1.0 with the default
    /// shift of 1.0 is the identity transform.
    std::optional<double> fixed_lambda;
    double shift = ts::kDefaultShift;
};

/// State needed to start the forecast recursion at the end of a window.
struct ForecastSeed {
    std::size_t origin_index = 0;     // index of the last training observation
    std::vector<double> lags;         // last p values of the differenced series, oldest first
    std::vector<double> level_tails;  // last value of each difference level 0..d-1 (transformed scale)
};

struct ArimaModel {
    ArimaOrder order;
    std::vector<double> ar_coefficients;
    std::vector<double> ma_coefficients;  // declared for completeness, never estimated
    double intercept = 0.0;
    ts::TransformState transform;
    double residual_variance = 0.0;
    std::size_t fit_window_length = 0;
    /// Order requested by the caller; differs from `order.p` when a singular
    /// lag matrix forced a smaller p.
    int requested_p = 0;
    /// Mean of the transformed, differenced window the model was fit on.
    double differenced_mean = 0.0;
    ForecastSeed seed;
};

/// Shift, Box-Cox, difference d times, then ordinary least squares of y_t on
/// [1, y_{t-1}, ..., y_{t-p}]. A singular lag matrix drops p one step at a
/// time; p = 0 is the window mean.
ArimaModel fit(std::span<const double> window, ArimaOrder order, const FitOptions& options = {});
ArimaModel fit(const ts::WeeklySeries& series, ArimaOrder order, const FitOptions& options = {});

/// Transform `window` with an existing transform's lambda and shift, and
/// collect the tail values a p/d model needs to forecast past its end.
ForecastSeed make_seed(std::span<const double> window, const ArimaOrder& order, double lambda, double shift);

struct Forecast {
    std::size_t origin_index = 0;
    int horizon = 0;
    std::vector<double> values;        // original count scale, >= 0
    std::size_t clamped_count = 0;     // negatives or inverse-transform domain failures set to 0
};

Forecast forecast(const ArimaModel& model, const ForecastSeed& seed, int horizon);
Forecast forecast(const ArimaModel& model, int horizon);

// ---------------------------------------------------------------------------
// Cross-attribute transfer

enum class TransferMode {
    /// Order and AR coefficients come from the source window; the transform,
    /// the recursion seed and the level of the intercept come from the target.
    Coefficients,
    /// Fit and forecast on the source alone; values stay in source scale.
    Direct,
};

struct WindowRange {
    std::size_t start = 0;
    std::size_t length = 0;
};

Forecast transfer_forecast(std::span<const double> source_window, std::span<const double> target_window, int horizon,
                           TransferMode mode = TransferMode::Coefficients, const FitOptions& options = {},
                           int adf_lags = ts::kDefaultAdfLags);

Forecast transfer_forecast(const ts::WeeklySeries& source, const ts::WeeklySeries& target, WindowRange window,
                           int horizon, TransferMode mode = TransferMode::Coefficients,
                           const FitOptions& options = {});

}  // namespace issuecast::arima
