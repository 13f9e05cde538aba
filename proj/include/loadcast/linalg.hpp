#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace loadcast {

/// Dense row-major matrix, sized for small least-squares designs.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Minimizes ||X b - y|| with a Householder QR factorization.
/// Throws std::domain_error when X is (numerically) rank deficient.
[[nodiscard]] inline std::vector<double> least_squares(const Matrix& X, std::span<const double> y) {
    const std::size_t m = X.rows();
    const std::size_t n = X.cols();
    if (y.size() != m) {
        throw std::invalid_argument("least_squares: design has " + std::to_string(m) +
                                    " rows but response has " + std::to_string(y.size()));
    }
    if (m < n) {
        throw std::domain_error("least_squares: rank-deficient design (fewer rows than columns)");
    }

    // Column-major working copy; a[j] is column j.
    std::vector<std::vector<double>> a(n, std::vector<double>(m));
    std::vector<double> colnorm(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            a[j][i] = X(i, j);
            colnorm[j] += X(i, j) * X(i, j);
        }
        colnorm[j] = std::sqrt(colnorm[j]);
    }
    std::vector<double> qty(y.begin(), y.end());
    std::vector<double> diag(n);

    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += a[k][i] * a[k][i];
        norm = std::sqrt(norm);
        // A column that is (almost) spanned by earlier ones leaves nothing behind.
        if (norm <= 1e-10 * std::max(colnorm[k], 1e-300)) {
            throw std::domain_error("least_squares: rank-deficient design (column " +
                                    std::to_string(k) + ")");
        }
        double alpha = a[k][k] > 0 ? -norm : norm;
        std::vector<double> v(m - k);
        for (std::size_t i = k; i < m; ++i) v[i - k] = a[k][i];
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (double x : v) vnorm2 += x * x;

        auto reflect = [&](std::vector<double>& col) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += v[i - k] * col[i];
            double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i) col[i] -= f * v[i - k];
        };
        for (std::size_t j = k; j < n; ++j) reflect(a[j]);
        reflect(qty);
        diag[k] = a[k][k];
    }

    std::vector<double> b(n);
    for (std::size_t kk = n; kk-- > 0;) {
        double s = qty[kk];
        for (std::size_t j = kk + 1; j < n; ++j) s -= a[j][kk] * b[j];
        b[kk] = s / diag[kk];
    }
    return b;
}

struct Line {
    double intercept = 0.0;
    double slope = 0.0;

    [[nodiscard]] double at(double t) const { return intercept + slope * t; }
};

/// Least-squares line through (t, y[t]) for t = 0..n-1.
[[nodiscard]] inline Line fit_line(std::span<const double> y) {
    if (y.size() < 2) {
        throw std::invalid_argument("fit_line needs at least two points");
    }
    Matrix X(y.size(), 2);
    for (std::size_t t = 0; t < y.size(); ++t) {
        X(t, 0) = 1.0;
        X(t, 1) = static_cast<double>(t);
    }
    auto b = least_squares(X, y);
    return {b[0], b[1]};
}

}  // namespace loadcast
