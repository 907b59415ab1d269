#include "least_squares.hpp"

#include <cmath>

#include "issuecast/error.hpp"

namespace issuecast::detail {

LeastSquaresFit least_squares(std::span<const double> design, std::size_t cols,
                              std::span<const double> response) {
    const std::size_t rows = response.size();
    if (cols == 0 || design.size() != rows * cols) {
        throw Error(Errc::InvalidArgument, "design matrix shape does not match response length");
    }
    if (rows < cols) {
        throw Error(Errc::InsufficientLength, "regression has fewer rows than columns");
    }

    // Column-major working copy; R ends up in the upper triangle.
    std::vector<double> a(rows * cols);
    std::vector<double> col_norm(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = design[r * cols + c];
            a[c * rows + r] = v;
            col_norm[c] += v * v;
        }
    }
    for (double& n : col_norm) n = std::sqrt(n);

    std::vector<double> b(response.begin(), response.end());
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[c * rows + r]; };

    for (std::size_t k = 0; k < cols; ++k) {
        double norm = 0.0;
        for (std::size_t r = k; r < rows; ++r) norm += at(r, k) * at(r, k);
        norm = std::sqrt(norm);
        if (col_norm[k] == 0.0 || norm <= 1e-10 * col_norm[k]) {
            throw Error(Errc::SingularRegression, "design column " + std::to_string(k) + " is collinear");
        }
        const double alpha = at(k, k) > 0 ? -norm : norm;
        // v = x - alpha e1, stored in place below the diagonal.
        at(k, k) -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t r = k; r < rows; ++r) vnorm2 += at(r, k) * at(r, k);

        for (std::size_t c = k + 1; c < cols; ++c) {
            double dot = 0.0;
            for (std::size_t r = k; r < rows; ++r) dot += at(r, k) * at(r, c);
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t r = k; r < rows; ++r) at(r, c) -= f * at(r, k);
        }
        double dot = 0.0;
        for (std::size_t r = k; r < rows; ++r) dot += at(r, k) * b[r];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t r = k; r < rows; ++r) b[r] -= f * at(r, k);

        at(k, k) = alpha;
    }

    LeastSquaresFit fit;
    fit.coefficients.assign(cols, 0.0);
    for (std::size_t i = cols; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < cols; ++c) s -= at(i, c) * fit.coefficients[c];
        fit.coefficients[i] = s / at(i, i);
    }
    for (std::size_t r = cols; r < rows; ++r) fit.sse += b[r] * b[r];

    // R^-1 by back substitution, then diag(R^-1 R^-T).
    std::vector<double> rinv(cols * cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        rinv[j * cols + j] = 1.0 / at(j, j);
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= j; ++k) s += at(i, k) * rinv[k * cols + j];
            rinv[i * cols + j] = -s / at(i, i);
        }
    }
    fit.unscaled_variance.assign(cols, 0.0);
    for (std::size_t i = 0; i < cols; ++i) {
        double s = 0.0;
        for (std::size_t k = i; k < cols; ++k) s += rinv[i * cols + k] * rinv[i * cols + k];
        fit.unscaled_variance[i] = s;
    }
    return fit;
}

}  // namespace issuecast::detail
