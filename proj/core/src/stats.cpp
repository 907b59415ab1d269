#include "issuecast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "issuecast/error.hpp"

namespace issuecast::stats {

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw Error(Errc::EmptyInput, "mean of an empty sequence");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_variance(std::span<const double> values) {
    const double m = mean(values);
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return s / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
    if (values.size() < 2) {
        throw Error(Errc::InsufficientLength, "sample variance needs two observations");
    }
    const double m = mean(values);
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return s / static_cast<double>(values.size() - 1);
}

double mae(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw Error(Errc::LengthMismatch, "mae inputs differ in length");
    }
    if (actual.empty()) {
        throw Error(Errc::EmptyInput, "mae of empty sequences");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) s += std::abs(predicted[i] - actual[i]);
    return s / static_cast<double>(actual.size());
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(Errc::LengthMismatch, "correlation inputs differ in length");
    }
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw Error(Errc::ConstantInput, "correlation with a constant sequence is undefined");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(Errc::LengthMismatch, "spearman inputs differ in length");
    }
    if (x.size() < 3) {
        throw Error(Errc::InsufficientLength, "spearman needs at least 3 pairs");
    }
    auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
    };
    if (constant(x) || constant(y)) {
        throw Error(Errc::ConstantInput, "spearman with a constant sequence is undefined");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

std::string_view to_string(CorrelationStrength strength) noexcept {
    switch (strength) {
        case CorrelationStrength::None: return "none";
        case CorrelationStrength::ModerateToStrong: return "moderate-to-strong";
        case CorrelationStrength::Undefined: return "undefined";
    }
    return "undefined";
}

CorrelationStrength classify_correlation(double rho) noexcept {
    if (!std::isfinite(rho)) return CorrelationStrength::Undefined;
    return std::abs(rho) >= 0.3 ? CorrelationStrength::ModerateToStrong : CorrelationStrength::None;
}

namespace {

// Continued fraction for I_x(a,b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 2000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

// I_x(a,b) given both x and 1-x, so callers can pass an accurately computed complement.
double incomplete_beta_pair(double a, double b, double x, double one_minus_x) {
    if (x <= 0.0) return 0.0;
    if (one_minus_x <= 0.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                             b * std::log(one_minus_x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, one_minus_x) / b;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw Error(Errc::InvalidArgument, "incomplete beta needs a > 0 and b > 0");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(Errc::InvalidArgument, "incomplete beta needs x in [0, 1]");
    }
    return incomplete_beta_pair(a, b, x, 1.0 - x);
}

double t_cdf(double t, double df) {
    if (!(df > 0.0) || std::isnan(df)) {
        throw Error(Errc::InvalidDf, "t distribution needs df > 0");
    }
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    if (t == 0.0) return 0.5;
    const double t2 = t * t;
    const double x = df / (df + t2);
    const double complement = t2 / (df + t2);
    // P(|T| > |t|) = I_x(df/2, 1/2)
    const double tail = 0.5 * incomplete_beta_pair(0.5 * df, 0.5, x, complement);
    return t > 0.0 ? 1.0 - tail : tail;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw Error(Errc::InsufficientLength, "welch_t_test needs at least two observations per sample");
    }
    WelchResult out;
    out.n_a = a.size();
    out.n_b = b.size();
    out.mean_a = mean(a);
    out.mean_b = mean(b);
    const double va = sample_variance(a);
    const double vb = sample_variance(b);
    if (!std::isfinite(va) || !std::isfinite(vb)) {
        throw Error(Errc::InvalidArgument, "sample variances must be finite");
    }
    const auto na = static_cast<double>(out.n_a);
    const auto nb = static_cast<double>(out.n_b);
    const double ea = va / na;
    const double eb = vb / nb;
    const double se2 = ea + eb;
    if (se2 == 0.0) {
        out.both_zero_variance = true;
        out.degrees_of_freedom = na + nb - 2.0;
        out.t_statistic = 0.0;
        out.p_value = 0.5;
        out.reject_at_5pct = false;
        return out;
    }
    out.t_statistic = (out.mean_a - out.mean_b) / std::sqrt(se2);
    out.degrees_of_freedom = se2 * se2 / (ea * ea / (na - 1.0) + eb * eb / (nb - 1.0));
    out.p_value = t_cdf(-out.t_statistic, out.degrees_of_freedom);
    out.reject_at_5pct = out.p_value < kSignificanceLevel;
    return out;
}

}  // namespace issuecast::stats
