#include <gtest/gtest.h>

#include "issuecast/error.hpp"
#include "least_squares.hpp"
#include "support.hpp"

using namespace issuecast;
using issuecast::detail::least_squares;

namespace {

// Normal equations solved by Gauss-Jordan with partial pivoting.
std::vector<double> normal_equations(const std::vector<double>& x, std::size_t cols, const std::vector<double>& y) {
    const std::size_t rows = y.size();
    std::vector<std::vector<double>> a(cols, std::vector<double>(cols + 1, 0.0));
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t r = 0; r < rows; ++r) a[i][j] += x[r * cols + i] * x[r * cols + j];
        }
        for (std::size_t r = 0; r < rows; ++r) a[i][cols] += x[r * cols + i] * y[r];
    }
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < cols; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        }
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < cols; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= cols; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<double> beta(cols);
    for (std::size_t c = 0; c < cols; ++c) beta[c] = a[c][cols] / a[c][c];
    return beta;
}

}  // namespace

TEST(LeastSquares, MatchesNormalEquations) {
    std::mt19937_64 rng(41);
    for (int s = 0; s < 200; ++s) {
        const std::size_t cols = 1 + rng() % 4;
        const std::size_t rows = cols + 5 + rng() % 30;
        std::vector<double> x(rows * cols), y(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            x[r * cols] = 1.0;
            for (std::size_t c = 1; c < cols; ++c) x[r * cols + c] = testing_support::normal(rng);
            y[r] = testing_support::normal(rng) * 3.0 + 1.0;
        }
        const auto fit = least_squares(x, cols, y);
        const auto oracle = normal_equations(x, cols, y);
        double sse = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            double pred = 0.0;
            for (std::size_t c = 0; c < cols; ++c) pred += x[r * cols + c] * oracle[c];
            sse += (y[r] - pred) * (y[r] - pred);
        }
        for (std::size_t c = 0; c < cols; ++c) EXPECT_NEAR(fit.coefficients[c], oracle[c], 1e-8);
        EXPECT_NEAR(fit.sse, sse, 1e-8 * std::max(1.0, sse));
        EXPECT_EQ(fit.unscaled_variance.size(), cols);
    }
}

TEST(LeastSquares, UnscaledVarianceIsInverseGramDiagonal) {
    // Single regressor: (X'X)^-1 = 1 / sum(x^2).
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{2, 4, 6, 8.5};
    const auto fit = least_squares(x, 1, y);
    EXPECT_NEAR(fit.unscaled_variance[0], 1.0 / 30.0, 1e-14);
    EXPECT_NEAR(fit.coefficients[0], (2 + 8 + 18 + 34.0) / 30.0, 1e-14);
}

TEST(LeastSquares, CollinearColumnsAreSingular) {
    const std::vector<double> x{1, 2, 1, 2, 1, 2, 1, 2};
    const std::vector<double> y{1, 2, 3, 4};
    try {
        least_squares(x, 2, y);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::SingularRegression);
    }
}

TEST(LeastSquares, UnderdeterminedThrows) {
    const std::vector<double> x{1, 2, 3, 4, 5, 6};
    const std::vector<double> y{1, 2};
    EXPECT_THROW(least_squares(x, 3, y), Error);
}
