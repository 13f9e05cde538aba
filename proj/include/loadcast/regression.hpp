#pragma once

// Linear trend plus seasonal dummies:
//   y_t = c0 + t0 * t + sum_{j=2..s} beta_j * d_j(t),   t = 1..n
// Season 1 (the phase of the first training point) is the reference level.

#include "loadcast/linalg.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace loadcast {

struct RegressionFit {
    int season = 12;
    double c0 = 0.0;
    double t0 = 0.0;
    std::vector<double> betas;  // beta_2..beta_s
    std::vector<double> fitted;

    /// Model value at time t (1-based).
    [[nodiscard]] double at(std::size_t t) const {
        std::size_t j = (t - 1) % std::size_t(season) + 1;
        double v = c0 + t0 * double(t);
        if (j > 1) v += betas[j - 2];
        return v;
    }
};

/// Columns [1, t, d_2, ..., d_s] for t = 1..n.
[[nodiscard]] inline Matrix design_matrix(std::size_t n, int s) {
    if (s < 2) throw std::invalid_argument("design_matrix: season must be at least 2");
    if (n < std::size_t(s) + 1) {
        throw std::invalid_argument("underdetermined design: " + std::to_string(n) +
                                    " observations for " + std::to_string(s + 1) + " coefficients");
    }
    Matrix X(n, std::size_t(s) + 1);
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t t = r + 1;
        X(r, 0) = 1.0;
        X(r, 1) = double(t);
        std::size_t j = (t - 1) % std::size_t(s) + 1;
        if (j > 1) X(r, j) = 1.0;
    }
    return X;
}

/// Ordinary least squares by orthogonal factorization; rank-deficient X throws.
[[nodiscard]] inline std::vector<double> ols_fit(const Matrix& X, std::span<const double> y) {
    return least_squares(X, y);
}

[[nodiscard]] inline RegressionFit fit_regression(std::span<const double> train, int s) {
    Matrix X = design_matrix(train.size(), s);
    auto coef = ols_fit(X, train);
    RegressionFit fit;
    fit.season = s;
    fit.c0 = coef[0];
    fit.t0 = coef[1];
    fit.betas.assign(coef.begin() + 2, coef.end());
    fit.fitted.resize(train.size());
    for (std::size_t t = 1; t <= train.size(); ++t) fit.fitted[t - 1] = fit.at(t);
    return fit;
}

[[nodiscard]] inline std::vector<double> forecast_regression(const RegressionFit& fit, int horizon) {
    if (horizon < 1) throw std::invalid_argument("forecast horizon must be at least 1");
    std::vector<double> out;
    out.reserve(std::size_t(horizon));
    const std::size_t n = fit.fitted.size();
    for (int h = 1; h <= horizon; ++h) out.push_back(fit.at(n + std::size_t(h)));
    return out;
}

}  // namespace loadcast
