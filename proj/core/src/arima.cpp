#include "issuecast/arima.hpp"

#include <algorithm>
#include <numeric>

#include "issuecast/error.hpp"
#include "least_squares.hpp"

namespace issuecast::arima {
namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void check_order(const ArimaOrder& order) {
    if (order.p < 0 || order.d < 0 || order.d > ts::kMaxDifferencing) {
        throw Error(Errc::InvalidArgument, "ARIMA order needs p >= 0 and d in 0..2");
    }
    if (order.q != 0) {
        throw Error(Errc::InvalidArgument, "moving-average terms are not estimated (q must be 0)");
    }
}

struct TransformedWindow {
    double lambda = 1.0;
    std::vector<double> transformed;
    ts::Differenced differenced;
};

TransformedWindow transform_window(std::span<const double> window, int d, const FitOptions& options) {
    TransformedWindow out;
    if (options.fixed_lambda) {
        out.lambda = *options.fixed_lambda;
    } else {
        std::vector<double> shifted(window.begin(), window.end());
        for (double& v : shifted) v += options.shift;
        out.lambda = ts::box_cox_fit(shifted);
    }
    out.transformed = ts::box_cox_apply(window, out.lambda, options.shift);
    out.differenced = ts::difference(out.transformed, d);
    return out;
}

ForecastSeed seed_from(const std::vector<double>& transformed, const std::vector<double>& differenced, int p, int d) {
    ForecastSeed seed;
    seed.origin_index = transformed.size() - 1;
    seed.lags.assign(differenced.end() - p, differenced.end());
    std::vector<double> level = transformed;
    for (int k = 0; k < d; ++k) {
        seed.level_tails.push_back(level.back());
        for (std::size_t t = 0; t + 1 < level.size(); ++t) level[t] = level[t + 1] - level[t];
        level.pop_back();
    }
    return seed;
}

}  // namespace

OrderSelection select_order(std::span<const double> values, int adf_lags) {
    const std::size_t n = values.size();
    if (n < kMinOrderSelectionLength) {
        throw Error(Errc::InsufficientLength, "order selection needs at least 12 observations");
    }
    OrderSelection out;
    if (ts::is_constant(values)) {
        out.constant_window = true;
        return out;
    }
    const auto choice = ts::select_d(values, adf_lags);
    out.order.d = choice.d;
    out.nonstationary_at_cap = choice.nonstationary_at_cap;

    const auto diffed = ts::difference(values, choice.d);
    if (ts::is_constant(diffed.values)) {
        return out;
    }
    const int cap = std::min(kMaxArOrder, static_cast<int>((n - static_cast<std::size_t>(choice.d) - 1) / 3));
    if (cap <= 0) {
        return out;
    }
    const auto r = ts::acf(diffed.values, cap);
    int p = 0;
    while (p < cap && std::abs(r.correlations[static_cast<std::size_t>(p) + 1]) > r.significance_band) ++p;
    out.order.p = p;
    return out;
}

OrderSelection select_order(const ts::WeeklySeries& series, int adf_lags) {
    const auto values = series.as_real();
    return select_order(values, adf_lags);
}

ArimaModel fit(std::span<const double> window, ArimaOrder order, const FitOptions& options) {
    check_order(order);
    const std::size_t n = window.size();
    const auto p_req = static_cast<std::size_t>(order.p);
    const auto d = static_cast<std::size_t>(order.d);
    if (n < p_req + d + std::max<std::size_t>(p_req, 1) + 2) {
        throw Error(Errc::InsufficientLength, "window too short for the requested ARIMA order");
    }

    const auto tw = transform_window(window, order.d, options);
    const auto& y = tw.differenced.values;

    ArimaModel model;
    model.requested_p = order.p;
    model.fit_window_length = n;
    model.transform = {tw.lambda, options.shift, order.d, tw.differenced.heads};
    model.differenced_mean = mean_of(y);

    int p = order.p;
    for (; p > 0; --p) {
        const auto lags = static_cast<std::size_t>(p);
        const std::size_t rows = y.size() - lags;
        const std::size_t cols = lags + 1;
        std::vector<double> design;
        design.reserve(rows * cols);
        std::vector<double> response;
        response.reserve(rows);
        for (std::size_t t = lags; t < y.size(); ++t) {
            design.push_back(1.0);
            for (std::size_t i = 1; i <= lags; ++i) design.push_back(y[t - i]);
            response.push_back(y[t]);
        }
        try {
            const auto ls = detail::least_squares(design, cols, response);
            model.intercept = ls.coefficients[0];
            model.ar_coefficients.assign(ls.coefficients.begin() + 1, ls.coefficients.end());
            model.residual_variance = ls.sse / static_cast<double>(rows - lags - 1);
            break;
        } catch (const Error& e) {
            if (e.code() != Errc::SingularRegression) throw;
        }
    }
    if (p == 0) {
        model.intercept = model.differenced_mean;
        model.ar_coefficients.clear();
        double sse = 0.0;
        for (double v : y) sse += (v - model.intercept) * (v - model.intercept);
        model.residual_variance = sse / static_cast<double>(y.size() - 1);
    }
    model.order = {p, order.d, 0};
    model.seed = seed_from(tw.transformed, y, p, order.d);
    return model;
}

ArimaModel fit(const ts::WeeklySeries& series, ArimaOrder order, const FitOptions& options) {
    const auto values = series.as_real();
    return fit(values, order, options);
}

ForecastSeed make_seed(std::span<const double> window, const ArimaOrder& order, double lambda, double shift) {
    check_order(order);
    const auto transformed = ts::box_cox_apply(window, lambda, shift);
    const auto diffed = ts::difference(transformed, order.d);
    if (diffed.values.size() < static_cast<std::size_t>(order.p)) {
        throw Error(Errc::InsufficientLength, "window too short to seed the AR recursion");
    }
    return seed_from(transformed, diffed.values, order.p, order.d);
}

Forecast forecast(const ArimaModel& model, const ForecastSeed& seed, int horizon) {
    if (horizon < 1) {
        throw Error(Errc::HorizonZero, "forecast horizon must be at least 1");
    }
    const auto p = static_cast<std::size_t>(model.order.p);
    if (seed.lags.size() != p || seed.level_tails.size() != static_cast<std::size_t>(model.order.d) ||
        model.ar_coefficients.size() != p) {
        throw Error(Errc::InvalidArgument, "forecast seed does not match the model order");
    }

    std::vector<double> history = seed.lags;
    std::vector<double> diffed;
    diffed.reserve(static_cast<std::size_t>(horizon));
    for (int h = 0; h < horizon; ++h) {
        double next = model.intercept;
        for (std::size_t i = 1; i <= p; ++i) next += model.ar_coefficients[i - 1] * history[history.size() - i];
        history.push_back(next);
        diffed.push_back(next);
    }
    const auto levels = ts::integrate_continuation(diffed, seed.level_tails);
    auto inverted = ts::box_cox_invert(levels, model.transform.lambda, model.transform.shift);

    Forecast out;
    out.origin_index = seed.origin_index;
    out.horizon = horizon;
    out.clamped_count = inverted.domain_clamped_count + inverted.negative_clamped_count;
    out.values = std::move(inverted.values);
    return out;
}

Forecast forecast(const ArimaModel& model, int horizon) {
    return forecast(model, model.seed, horizon);
}

Forecast transfer_forecast(std::span<const double> source_window, std::span<const double> target_window, int horizon,
                           TransferMode mode, const FitOptions& options, int adf_lags) {
    if (source_window.size() != target_window.size()) {
        throw Error(Errc::WindowMismatch, "source and target windows differ in length");
    }
    if (horizon < 1) {
        throw Error(Errc::HorizonZero, "forecast horizon must be at least 1");
    }
    const auto selection = select_order(source_window, adf_lags);
    const auto source_model = fit(source_window, selection.order, options);
    if (mode == TransferMode::Direct) {
        return forecast(source_model, horizon);
    }

    const auto tw = transform_window(target_window, source_model.order.d, options);
    ArimaModel target_model = source_model;
    target_model.transform = {tw.lambda, options.shift, source_model.order.d, tw.differenced.heads};
    target_model.differenced_mean = mean_of(tw.differenced.values);
    const double persistence =
        1.0 - std::accumulate(source_model.ar_coefficients.begin(), source_model.ar_coefficients.end(), 0.0);
    target_model.intercept =
        source_model.intercept + persistence * (target_model.differenced_mean - source_model.differenced_mean);
    target_model.seed = seed_from(tw.transformed, tw.differenced.values, source_model.order.p, source_model.order.d);
    return forecast(target_model, horizon);
}

Forecast transfer_forecast(const ts::WeeklySeries& source, const ts::WeeklySeries& target, WindowRange window,
                           int horizon, TransferMode mode, const FitOptions& options) {
    if (source.start_date() != target.start_date() || window.length == 0 ||
        window.start + window.length > source.size() || window.start + window.length > target.size()) {
        throw Error(Errc::WindowMismatch, "both series must cover the training window on the same calendar");
    }
    const auto src = source.as_real();
    const auto tgt = target.as_real();
    const auto first = static_cast<std::ptrdiff_t>(window.start);
    const auto last = first + static_cast<std::ptrdiff_t>(window.length);
    const std::vector<double> src_window(src.begin() + first, src.begin() + last);
    const std::vector<double> tgt_window(tgt.begin() + first, tgt.begin() + last);
    auto out = transfer_forecast(src_window, tgt_window, horizon, mode, options);
    out.origin_index += window.start;
    return out;
}

}  // namespace issuecast::arima
