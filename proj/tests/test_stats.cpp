#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "issuecast/error.hpp"
#include "issuecast/stats.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace issuecast;
using namespace issuecast::stats;
using testing_support::normals;
using testing_support::uniform;

TEST(Mae, KnownValues) {
    const std::vector<double> a{1, 2, 3}, p{2, 2, 2};
    EXPECT_DOUBLE_EQ(mae(a, p), 2.0 / 3.0);
    EXPECT_EQ(mae(a, a), 0.0);
    EXPECT_THROW(mae(a, std::vector<double>{1, 2}), Error);
    EXPECT_THROW(mae(std::vector<double>{}, std::vector<double>{}), Error);
}

TEST(Mae, GroupedFormEqualsPlainMean) {
    std::mt19937_64 rng(51);
    for (int s = 0; s < 1000; ++s) {
        const std::size_t n = 1 + rng() % 20;
        std::vector<double> a(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<double>(rng() % 10);
            p[i] = s % 2 ? static_cast<double>(rng() % 10) : 10.0 * uniform(rng);
        }
        EXPECT_NEAR(mae(a, p), oracle::grouped_mae(a, p), 1e-12);
    }
}

TEST(Mae, Properties) {
    std::mt19937_64 rng(52);
    for (int s = 0; s < 200; ++s) {
        const auto a = normals(rng, 8), p = normals(rng, 8);
        const double m = mae(a, p);
        EXPECT_GE(m, 0.0);
        EXPECT_NEAR(m, oracle::plain_mae(a, p), 1e-12);
        EXPECT_DOUBLE_EQ(m, mae(p, a));
    }
}

TEST(Spearman, KnownValues) {
    std::vector<double> x{4, 1, 7, 3, 9};
    EXPECT_DOUBLE_EQ(spearman_rho(x, x), 1.0);
    std::vector<double> rev(x);
    std::sort(rev.begin(), rev.end());
    std::vector<double> sorted = rev;
    std::reverse(rev.begin(), rev.end());
    EXPECT_DOUBLE_EQ(spearman_rho(sorted, rev), -1.0);
    const std::vector<double> a{1, 2, 2, 4}, b{1, 3, 2, 4};
    EXPECT_NEAR(spearman_rho(a, b), oracle::spearman(a, b), 1e-12);
    EXPECT_NEAR(spearman_rho(a, b), 0.9486832980505139, 1e-12);
}

TEST(Spearman, Errors) {
    const std::vector<double> c{2, 2, 2, 2}, x{1, 2, 3, 4};
    try {
        spearman_rho(c, x);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ConstantInput);
    }
    EXPECT_THROW(spearman_rho(x, std::vector<double>{1, 2, 3}), Error);
    EXPECT_THROW(spearman_rho(std::vector<double>{1, 2}, std::vector<double>{2, 1}), Error);
}

TEST(Spearman, MatchesBruteForceWithTies) {
    std::mt19937_64 rng(53);
    for (int s = 0; s < 300; ++s) {
        const std::size_t n = 3 + rng() % 40;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<double>(rng() % 6);
            y[i] = static_cast<double>(rng() % 6) + 0.5 * x[i];
        }
        if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
            std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
            continue;
        }
        EXPECT_NEAR(spearman_rho(x, y), oracle::spearman(x, y), 1e-12);
        const auto r = average_ranks(x);
        EXPECT_EQ(r, oracle::ranks(x));
    }
}

TEST(Spearman, InvariantUnderMonotoneTransform) {
    std::mt19937_64 rng(54);
    for (int s = 0; s < 100; ++s) {
        const auto x = normals(rng, 25), y = normals(rng, 25);
        std::vector<double> ex(x);
        for (auto& v : ex) v = std::exp(v);
        EXPECT_NEAR(spearman_rho(x, y), spearman_rho(ex, y), 1e-12);
        const double r = spearman_rho(x, y);
        EXPECT_GE(r, -1.0);
        EXPECT_LE(r, 1.0);
    }
}

TEST(Spearman, IndependentNoiseIsWeak) {
    std::mt19937_64 rng(55);
    int weak = 0;
    for (int s = 0; s < 100; ++s) weak += std::abs(spearman_rho(normals(rng, 200), normals(rng, 200))) < 0.3;
    EXPECT_GE(weak, 95);
}

TEST(Correlation, StrengthLabels) {
    EXPECT_EQ(classify_correlation(0.29), CorrelationStrength::None);
    EXPECT_EQ(classify_correlation(0.3), CorrelationStrength::ModerateToStrong);
    EXPECT_EQ(classify_correlation(-0.8), CorrelationStrength::ModerateToStrong);
    EXPECT_EQ(classify_correlation(std::nan("")), CorrelationStrength::Undefined);
    EXPECT_EQ(to_string(CorrelationStrength::ModerateToStrong), "moderate-to-strong");
}

TEST(TCdf, KnownValues) {
    EXPECT_DOUBLE_EQ(t_cdf(0.0, 3.3), 0.5);
    EXPECT_NEAR(t_cdf(1.5, 3.7), 0.8932009153989934, 1e-12);
    EXPECT_NEAR(t_cdf(-2.2, 12.5), 0.023641591451071933, 1e-12);
    EXPECT_NEAR(t_cdf(0.3, 0.8), 0.5882728280234875, 1e-12);
    // Cauchy has a closed form.
    EXPECT_NEAR(t_cdf(1.0, 1.0), 0.75, 1e-14);
    EXPECT_NEAR(t_cdf(1.96, 1000.0), 0.5 * std::erfc(-1.96 / std::sqrt(2.0)), 1e-3);
    EXPECT_THROW(t_cdf(1.0, 0.0), Error);
    EXPECT_THROW(t_cdf(1.0, -2.0), Error);
}

TEST(TCdf, Symmetry) {
    std::mt19937_64 rng(56);
    for (int s = 0; s < 1000; ++s) {
        const double t = 10.0 * (uniform(rng) - 0.5);
        const double df = 0.5 + 200.0 * uniform(rng);
        EXPECT_NEAR(t_cdf(t, df) + t_cdf(-t, df), 1.0, 1e-12);
    }
}

TEST(TCdf, MatchesNumericalIntegration) {
    std::mt19937_64 rng(57);
    for (int s = 0; s < 100; ++s) {
        const double t = 8.0 * (uniform(rng) - 0.5);
        const double df = 1.0 + 100.0 * uniform(rng);
        EXPECT_NEAR(t_cdf(t, df), oracle::t_cdf(t, df), 1e-8);
    }
}

TEST(IncompleteBeta, Edges) {
    EXPECT_EQ(incomplete_beta(2.0, 3.0, 0.0), 0.0);
    EXPECT_EQ(incomplete_beta(2.0, 3.0, 1.0), 1.0);
    // I_x(1, 1) = x and I_x(a, 1) = x^a.
    EXPECT_NEAR(incomplete_beta(1.0, 1.0, 0.37), 0.37, 1e-14);
    EXPECT_NEAR(incomplete_beta(2.5, 1.0, 0.6), std::pow(0.6, 2.5), 1e-14);
    EXPECT_THROW(incomplete_beta(1.0, 1.0, 1.5), Error);
}

TEST(Welch, IdenticalSamples) {
    const std::vector<double> a{1.0, 2.5, 3.0, 0.5};
    const auto r = welch_t_test(a, a);
    EXPECT_DOUBLE_EQ(r.t_statistic, 0.0);
    EXPECT_DOUBLE_EQ(r.p_value, 0.5);
    EXPECT_FALSE(r.reject_at_5pct);
}

TEST(Welch, EqualVariancesGivePooledDf) {
    const std::vector<double> a{1, 2, 3, 4, 5}, b{11, 12, 13, 14, 15};
    EXPECT_DOUBLE_EQ(welch_t_test(a, b).degrees_of_freedom, 8.0);
}

TEST(Welch, ReferenceValues) {
    const std::vector<double> a{0.3, 1.9, 1.1, 2.4, 0.8, 1.6, 1.2, 0.2, 2.0, 1.3};
    const std::vector<double> b{0.1, 0.9, 1.4, 0.5, -0.2, 0.7, 1.0, 0.4};
    const auto r = welch_t_test(a, b);
    EXPECT_NEAR(r.t_statistic, 2.3380197626877126, 1e-10);
    EXPECT_NEAR(r.degrees_of_freedom, 15.844942609988314, 1e-9);
    EXPECT_NEAR(r.p_value, 0.01642017275209121, 1e-10);
    EXPECT_TRUE(r.reject_at_5pct);
    EXPECT_EQ(r.n_a, 10U);
    EXPECT_EQ(r.n_b, 8U);
}

TEST(Welch, SeededNormalSamplesMatchReference) {
    std::mt19937_64 rng(2024);
    const auto a = normals(rng, 50, 1.0);
    const auto b = normals(rng, 50, 0.0);
    const auto r = welch_t_test(a, b);
    EXPECT_NEAR(r.t_statistic, 4.16706119242679, 1e-9);
    EXPECT_NEAR(r.degrees_of_freedom, 94.92292399119273, 1e-8);
    EXPECT_NEAR(r.p_value, 3.402974173326921e-05, 1e-6);

    std::mt19937_64 rng2(99);
    const auto c = normals(rng2, 30, 2.0, 1.0);
    const auto d = normals(rng2, 45, 2.0, 1.5);
    const auto q = welch_t_test(c, d);
    EXPECT_NEAR(q.t_statistic, -0.46841699926459296, 1e-9);
    EXPECT_NEAR(q.p_value, 0.6795575791065009, 1e-6);
    EXPECT_FALSE(q.reject_at_5pct);
}

TEST(Welch, MatchesBruteForceOracle) {
    std::mt19937_64 rng(58);
    for (int s = 0; s < 100; ++s) {
        const auto a = normals(rng, 2 + rng() % 40, uniform(rng), 0.5 + uniform(rng));
        const auto b = normals(rng, 2 + rng() % 40, uniform(rng), 0.5 + 2.0 * uniform(rng));
        const auto r = welch_t_test(a, b);
        const auto o = oracle::welch(a, b);
        EXPECT_NEAR(r.t_statistic, o.t, 1e-9);
        EXPECT_NEAR(r.degrees_of_freedom, o.df, 1e-9);
        EXPECT_NEAR(r.p_value, o.p, 1e-6);
    }
}

TEST(Welch, DegenerateInputs) {
    const std::vector<double> z{2, 2, 2}, w{2, 2};
    const auto r = welch_t_test(z, w);
    EXPECT_TRUE(r.both_zero_variance);
    EXPECT_DOUBLE_EQ(r.p_value, 0.5);
    EXPECT_DOUBLE_EQ(r.degrees_of_freedom, 3.0);
    EXPECT_THROW(welch_t_test(std::vector<double>{1.0}, w), Error);
}

TEST(Welch, LargerFirstSampleIsRejected) {
    const std::vector<double> local{1.0, 1.2, 0.8, 1.1, 0.9, 1.05};
    std::vector<double> issue(local);
    for (auto& v : issue) v *= 10.0;
    const auto r = welch_t_test(issue, local);
    EXPECT_LT(r.p_value, 1e-4);
    EXPECT_TRUE(r.reject_at_5pct);
}

TEST(Moments, Basics) {
    const std::vector<double> x{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(mean(x), 2.5);
    EXPECT_DOUBLE_EQ(population_variance(x), 1.25);
    EXPECT_DOUBLE_EQ(sample_variance(x), 5.0 / 3.0);
    EXPECT_THROW(mean(std::vector<double>{}), Error);
}
