#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace issuecast::stats {

/// Mean absolute error. Weighting each distinct (actual, predicted) pair by
/// its empirical frequency gives the same number, so the plain mean is used.
double mae(std::span<const double> actual, std::span<const double> predicted);

/// 1-based ranks; tied values share the average of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of average ranks.
double spearman_rho(std::span<const double> x, std::span<const double> y);

enum class CorrelationStrength { None, ModerateToStrong, Undefined };

std::string_view to_string(CorrelationStrength strength) noexcept;

/// |rho| >= 0.3 is moderate-to-strong; below that, none.
CorrelationStrength classify_correlation(double rho) noexcept;

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

/// Student-t CDF for real df > 0.
double t_cdf(double t, double df);

struct WelchResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 0.5;  // one-sided, alternative: mean(a) > mean(b)
    bool reject_at_5pct = false;
    bool both_zero_variance = false;
    double mean_a = 0.0;
    double mean_b = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

inline constexpr double kSignificanceLevel = 0.05;

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of freedom.
/// When both samples have zero variance the statistic is undefined; the result
/// then reports t = 0, p = 0.5 and sets both_zero_variance.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> values);
/// Divides by n.
double population_variance(std::span<const double> values);
/// Divides by n - 1.
double sample_variance(std::span<const double> values);

}  // namespace issuecast::stats
