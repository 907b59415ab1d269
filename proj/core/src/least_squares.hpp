#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace issuecast::detail {

struct LeastSquaresFit {
    std::vector<double> coefficients;
    double sse = 0.0;
    // Diagonal of (X'X)^-1; multiply by the residual variance for squared standard errors.
    std::vector<double> unscaled_variance;
};

/// Householder-QR least squares on a row-major `rows x cols` design.
/// Throws Error{SingularRegression} when a column is (numerically) a linear
/// combination of the preceding ones, and Error{InsufficientLength} when
/// rows < cols.
LeastSquaresFit least_squares(std::span<const double> design, std::size_t cols,
                              std::span<const double> response);

}  // namespace issuecast::detail
