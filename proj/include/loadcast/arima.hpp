#pragma once

// Seasonal ARIMA (p,d,q)(P,D,Q)_s estimated by conditional sum of squares.
//
// On the differenced, mean-removed series x_t = w_t - mu:
//   (1 - phi_1 B - phi_2 B^2)(1 - Phi_1 B^s) x_t = (1 - omega_1 B - omega_2 B^2)(1 - Omega_1 B^s) e_t
// MA terms carry a minus sign. Pre-sample x and e are zero.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdio>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace loadcast {

struct SarimaOrder {
    int p = 0, d = 0, q = 0;
    int P = 0, D = 0, Q = 0;
    int s = 12;

    auto operator<=>(const SarimaOrder&) const = default;

    [[nodiscard]] int coefficient_count() const { return p + q + P + Q; }
    [[nodiscard]] bool is_pure_mean() const { return coefficient_count() + d + D == 0; }
    [[nodiscard]] std::size_t burn_in() const { return std::size_t(d + D * s); }
    /// Shortest training series accepted by fit_sarima.
    [[nodiscard]] std::size_t min_length() const {
        return std::size_t(d + D * s + s * std::max(P, Q) + std::max(p, q) + 5);
    }

    [[nodiscard]] std::string to_string() const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "(%d,%d,%d)(%d,%d,%d)%d", p, d, q, P, D, Q, s);
        return buf;
    }
};

inline constexpr double kCoefficientBound = 0.99;
/// Order selection discards fits whose non-seasonal AR or MA factor has a
/// root closer to the unit circle than this.
inline constexpr double kMinRootModulus = 1.01;

struct SarimaFit {
    SarimaOrder order;
    std::vector<double> phi;             // non-seasonal AR
    std::vector<double> theta;           // non-seasonal MA (omega)
    std::vector<double> seasonal_phi;    // Phi
    std::vector<double> seasonal_theta;  // seasonal MA
    double mu = 0.0;                     // mean of the differenced series
    double sigma2 = 0.0;
    double objective = 0.0;
    std::vector<double> residuals;  // one per differenced value
    std::vector<double> fitted;     // original scale; first burn_in() entries equal the data
    std::vector<double> history;    // training series, needed to undo differencing
    bool converged = true;
    bool degenerate = false;  // differenced series has (almost) no variance

    /// Parameter vector in css_objective order.
    [[nodiscard]] std::vector<double> parameters() const {
        std::vector<double> v(phi);
        v.insert(v.end(), theta.begin(), theta.end());
        v.insert(v.end(), seasonal_phi.begin(), seasonal_phi.end());
        v.insert(v.end(), seasonal_theta.begin(), seasonal_theta.end());
        return v;
    }
};

/// Applies (1-B)^d (1-B^s)^D.
[[nodiscard]] inline std::vector<double> difference(std::span<const double> values, int d, int D, int s) {
    if (d < 0 || D < 0 || s < 1) throw std::invalid_argument("difference: invalid orders");
    if (values.size() <= std::size_t(d + D * s)) {
        throw std::invalid_argument("difference: series of length " + std::to_string(values.size()) +
                                    " is too short for d=" + std::to_string(d) +
                                    ", D=" + std::to_string(D) + ", s=" + std::to_string(s));
    }
    std::vector<double> out(values.begin(), values.end());
    auto lag_diff = [&out](std::size_t lag) {
        std::vector<double> next(out.size() - lag);
        for (std::size_t t = lag; t < out.size(); ++t) next[t - lag] = out[t] - out[t - lag];
        out = std::move(next);
    };
    for (int i = 0; i < d; ++i) lag_diff(1);
    for (int i = 0; i < D; ++i) lag_diff(std::size_t(s));
    return out;
}

/// Inverse of difference(): continues `history` by the values whose differences
/// are `future`.
[[nodiscard]] inline std::vector<double> integrate(std::span<const double> future,
                                                   std::span<const double> history, int d, int D, int s) {
    // levels[k] is the history after k differencing steps (regular first, then seasonal).
    std::vector<std::vector<double>> levels{{history.begin(), history.end()}};
    std::vector<std::size_t> lags;
    for (int i = 0; i < d; ++i) lags.push_back(1);
    for (int i = 0; i < D; ++i) lags.push_back(std::size_t(s));
    for (std::size_t lag : lags) {
        const auto& prev = levels.back();
        if (prev.size() <= lag) throw std::invalid_argument("integrate: history too short");
        std::vector<double> next(prev.size() - lag);
        for (std::size_t t = lag; t < prev.size(); ++t) next[t - lag] = prev[t] - prev[t - lag];
        levels.push_back(std::move(next));
    }
    std::vector<double> current(future.begin(), future.end());
    for (std::size_t k = lags.size(); k-- > 0;) {
        auto ext = levels[k];
        for (double v : current) ext.push_back(v + ext[ext.size() - lags[k]]);
        current.assign(ext.end() - long(future.size()), ext.end());
    }
    return current;
}

namespace detail {

/// Sparse lag polynomial: value[t] = sum coef[i] * series[t - lag[i]].
struct LagTerms {
    std::vector<std::size_t> lag;
    std::vector<double> coef;
};

/// Expands (1 - sum a_i B^i)(1 - sum A_k B^{s k}) into "x_t = sum c_L x_{t-L}" form.
inline LagTerms expand(std::span<const double> regular, std::span<const double> seasonal, int s) {
    std::vector<double> left(regular.size() + 1, 0.0), right(seasonal.size() * std::size_t(s) + 1, 0.0);
    left[0] = right[0] = 1.0;
    for (std::size_t i = 0; i < regular.size(); ++i) left[i + 1] = -regular[i];
    for (std::size_t k = 0; k < seasonal.size(); ++k) right[(k + 1) * std::size_t(s)] = -seasonal[k];
    std::vector<double> prod(left.size() + right.size() - 1, 0.0);
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j) prod[i + j] += left[i] * right[j];
    LagTerms terms;
    for (std::size_t L = 1; L < prod.size(); ++L) {
        if (prod[L] != 0.0) {
            terms.lag.push_back(L);
            terms.coef.push_back(-prod[L]);
        }
    }
    return terms;
}

/// Box (|c| <= 0.99) plus the AR(2)/MA(2) stationarity and invertibility triangle.
inline bool admissible(std::span<const double> params, const SarimaOrder& o) {
    for (double c : params)
        if (!(std::abs(c) <= kCoefficientBound)) return false;
    auto triangle = [](double a1, double a2) { return a1 + a2 < 1.0 && a2 - a1 < 1.0; };
    if (o.p == 2 && !triangle(params[0], params[1])) return false;
    if (o.q == 2 && !triangle(params[std::size_t(o.p)], params[std::size_t(o.p) + 1])) return false;
    return true;
}

struct Polynomials {
    LagTerms ar;
    LagTerms ma;
};

inline Polynomials split(std::span<const double> params, const SarimaOrder& o) {
    auto take = [&](std::size_t from, int count) { return params.subspan(from, std::size_t(count)); };
    std::size_t at = 0;
    auto phi = take(at, o.p);
    at += std::size_t(o.p);
    auto theta = take(at, o.q);
    at += std::size_t(o.q);
    auto sphi = take(at, o.P);
    at += std::size_t(o.P);
    auto stheta = take(at, o.Q);
    return {expand(phi, sphi, o.s), expand(theta, stheta, o.s)};
}

/// Residuals of the ARMA recursion; returns the sum of squares.
inline double css_residuals(std::span<const double> x, const Polynomials& poly, std::vector<double>& e) {
    e.assign(x.size(), 0.0);
    double sse = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        double v = x[t];
        for (std::size_t i = 0; i < poly.ar.lag.size(); ++i) {
            std::size_t L = poly.ar.lag[i];
            if (L <= t) v -= poly.ar.coef[i] * x[t - L];
        }
        for (std::size_t i = 0; i < poly.ma.lag.size(); ++i) {
            std::size_t L = poly.ma.lag[i];
            if (L <= t) v += poly.ma.coef[i] * e[t - L];
        }
        e[t] = v;
        sse += v * v;
    }
    return sse;
}

inline std::vector<double> centered(std::span<const double> w, double& mu) {
    mu = w.empty() ? 0.0 : std::accumulate(w.begin(), w.end(), 0.0) / double(w.size());
    std::vector<double> x(w.size());
    for (std::size_t t = 0; t < w.size(); ++t) x[t] = w[t] - mu;
    return x;
}

}  // namespace detail

/// Conditional sum of squares of the one-step residuals of `w` (already
/// differenced) under `params`; +inf outside the admissible region.
[[nodiscard]] inline double css_objective(std::span<const double> params, std::span<const double> w,
                                          const SarimaOrder& order) {
    if (params.size() != std::size_t(order.coefficient_count())) {
        throw std::invalid_argument("css_objective: expected " + std::to_string(order.coefficient_count()) +
                                    " parameters");
    }
    if (!detail::admissible(params, order)) return std::numeric_limits<double>::infinity();
    double mu = 0.0;
    auto x = detail::centered(w, mu);
    std::vector<double> e;
    double sse = detail::css_residuals(x, detail::split(params, order), e);
    return std::isfinite(sse) ? sse : std::numeric_limits<double>::infinity();
}

namespace detail {

inline constexpr double kStartValues[] = {-0.5, 0.0, 0.5};
inline constexpr std::size_t kDescents = 3;
inline constexpr double kStepStart = 0.25;
inline constexpr double kStepStop = 1e-7;
inline constexpr int kEvalBudget = 20000;

struct Descent {
    std::vector<double> x;
    double f;
    bool converged;
};

/// Coordinate descent with step halving inside the coefficient box.
template <class Objective>
Descent coordinate_descent(std::vector<double> x, double f, Objective&& objective) {
    int evals = 0;
    double step = kStepStart;
    while (step >= kStepStop) {
        if (evals >= kEvalBudget) return {std::move(x), f, false};
        bool improved = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (double dir : {-1.0, 1.0}) {
                auto cand = x;
                cand[i] = std::clamp(x[i] + dir * step, -kCoefficientBound, kCoefficientBound);
                if (cand[i] == x[i]) continue;
                double fc = objective(cand);
                ++evals;
                if (fc < f) {
                    f = fc;
                    x = std::move(cand);
                    improved = true;
                }
            }
        }
        if (!improved) step /= 2.0;
    }
    return {std::move(x), f, true};
}

}  // namespace detail

[[nodiscard]] inline SarimaFit fit_sarima(std::span<const double> train, const SarimaOrder& order) {
    if (order.p < 0 || order.p > 2 || order.q < 0 || order.q > 2 || order.d < 0 || order.d > 1 ||
        order.P < 0 || order.P > 1 || order.D < 0 || order.D > 1 || order.Q < 0 || order.Q > 1 ||
        order.s < 2) {
        throw std::invalid_argument("unsupported SARIMA order " + order.to_string());
    }
    if (train.size() < order.min_length()) {
        throw std::invalid_argument("insufficient data for SARIMA" + order.to_string() + ": need " +
                                    std::to_string(order.min_length()) + " values, got " +
                                    std::to_string(train.size()));
    }
    SarimaFit fit;
    fit.order = order;
    fit.history.assign(train.begin(), train.end());
    auto w = difference(train, order.d, order.D, order.s);
    auto x = detail::centered(w, fit.mu);

    double spread = 0.0;
    for (double v : x) spread += v * v;
    fit.degenerate = spread <= 1e-18 * double(x.size()) * std::max(1.0, fit.mu * fit.mu);

    const std::size_t k = std::size_t(order.coefficient_count());
    std::vector<double> e;
    auto objective = [&](const std::vector<double>& params) {
        if (!detail::admissible(params, order)) return std::numeric_limits<double>::infinity();
        double sse = detail::css_residuals(x, detail::split(params, order), e);
        return std::isfinite(sse) ? sse : std::numeric_limits<double>::infinity();
    };

    std::vector<double> best(k, 0.0);
    if (k > 0) {
        struct Start {
            std::vector<double> x;
            double f;
        };
        std::vector<Start> starts;
        std::size_t total = 1;
        for (std::size_t i = 0; i < k; ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<double> p(k);
            std::size_t rest = code;
            for (std::size_t i = k; i-- > 0;) {
                p[i] = detail::kStartValues[rest % 3];
                rest /= 3;
            }
            double f = objective(p);
            if (std::isfinite(f)) starts.push_back({std::move(p), f});
        }
        // Stable: equal objectives keep grid order.
        std::stable_sort(starts.begin(), starts.end(),
                         [](const Start& a, const Start& b) { return a.f < b.f; });
        if (starts.size() > detail::kDescents) starts.resize(detail::kDescents);

        double best_f = std::numeric_limits<double>::infinity();
        for (auto& s : starts) {
            auto r = detail::coordinate_descent(s.x, s.f, objective);
            if (r.f < best_f) {
                best_f = r.f;
                best = std::move(r.x);
                fit.converged = r.converged;
            }
        }
    }
    if (fit.degenerate) fit.converged = false;

    auto poly = detail::split(best, order);
    fit.objective = detail::css_residuals(x, poly, fit.residuals);
    fit.sigma2 = fit.objective / double(x.size());

    std::size_t at = 0;
    auto take = [&](int count) {
        std::vector<double> v(best.begin() + long(at), best.begin() + long(at) + count);
        at += std::size_t(count);
        return v;
    };
    fit.phi = take(order.p);
    fit.theta = take(order.q);
    fit.seasonal_phi = take(order.P);
    fit.seasonal_theta = take(order.Q);

    const std::size_t burn = order.burn_in();
    fit.fitted.assign(train.begin(), train.end());
    for (std::size_t t = burn; t < train.size(); ++t) fit.fitted[t] = train[t] - fit.residuals[t - burn];
    return fit;
}

[[nodiscard]] inline std::vector<double> forecast_sarima(const SarimaFit& fit, int horizon) {
    if (horizon < 1) throw std::invalid_argument("forecast horizon must be at least 1");
    const auto& o = fit.order;
    auto w = difference(fit.history, o.d, o.D, o.s);
    std::vector<double> x(w.size());
    for (std::size_t t = 0; t < w.size(); ++t) x[t] = w[t] - fit.mu;
    std::vector<double> e = fit.residuals;
    auto params = fit.parameters();
    auto poly = detail::split(params, o);

    std::vector<double> future;
    for (int h = 0; h < horizon; ++h) {
        const std::size_t t = x.size();
        double v = 0.0;
        for (std::size_t i = 0; i < poly.ar.lag.size(); ++i) {
            std::size_t L = poly.ar.lag[i];
            if (L <= t) v += poly.ar.coef[i] * x[t - L];
        }
        for (std::size_t i = 0; i < poly.ma.lag.size(); ++i) {
            std::size_t L = poly.ma.lag[i];
            if (L <= t) v -= poly.ma.coef[i] * e[t - L];
        }
        x.push_back(v);
        e.push_back(0.0);
        future.push_back(v + fit.mu);
    }
    return integrate(future, fit.history, o.d, o.D, o.s);
}

namespace detail {
/// Smallest root modulus of 1 - c_1 z - c_2 z^2 (degree <= 2); +inf if constant.
inline double min_root_modulus(std::span<const double> c) {
    const double c1 = c.size() > 0 ? c[0] : 0.0;
    const double c2 = c.size() > 1 ? c[1] : 0.0;
    if (c2 == 0.0) return c1 == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(c1);
    // c2 z^2 + c1 z - 1 = 0
    std::complex<double> disc = std::sqrt(std::complex<double>(c1 * c1 + 4.0 * c2, 0.0));
    auto r1 = (-c1 + disc) / (2.0 * c2), r2 = (-c1 - disc) / (2.0 * c2);
    return std::min(std::abs(r1), std::abs(r2));
}
}  // namespace detail

/// True when both non-seasonal factors keep their roots at least
/// kMinRootModulus from the origin.
[[nodiscard]] inline bool well_conditioned(const SarimaFit& fit) {
    for (double c : fit.parameters())
        if (std::abs(c) >= kCoefficientBound) return false;
    return detail::min_root_modulus(fit.phi) >= kMinRootModulus &&
           detail::min_root_modulus(fit.theta) >= kMinRootModulus;
}

struct OrderScore {
    SarimaOrder order;
    double aicc;
    int parameters;  // coefficients + mean + variance
};

/// AICc of every admissible candidate, in candidate order. The Gaussian CSS
/// variance is taken over a common window of original time points (after the
/// largest differencing burn-in among the candidates) so scores compare.
/// Fits that are not well_conditioned are left out.
[[nodiscard]] inline std::vector<OrderScore> score_orders(std::span<const double> train, int s) {
    std::vector<SarimaOrder> candidates;
    for (int p = 0; p <= 2; ++p)
        for (int d = 0; d <= 1; ++d)
            for (int q = 0; q <= 2; ++q)
                for (int P = 0; P <= 1; ++P)
                    for (int D = 0; D <= 1; ++D)
                        for (int Q = 0; Q <= 1; ++Q) {
                            SarimaOrder o{p, d, q, P, D, Q, s};
                            if (train.size() < o.min_length()) continue;
                            std::size_t effective = train.size() - o.burn_in();
                            if (3 * std::size_t(o.coefficient_count() + 1) >= effective) continue;
                            candidates.push_back(o);
                        }
    std::size_t window = 0;
    for (const auto& o : candidates) window = std::max(window, o.burn_in());

    std::vector<OrderScore> scores;
    for (const auto& o : candidates) {
        const std::size_t n_common = train.size() - window;
        const int k = o.coefficient_count() + 2;
        if (double(n_common) - k - 1 <= 0) continue;
        auto fit = fit_sarima(train, o);
        if (!well_conditioned(fit)) continue;
        double sse = 0.0;
        for (std::size_t t = window; t < train.size(); ++t) {
            double r = fit.residuals[t - o.burn_in()];
            sse += r * r;
        }
        double sigma2 = std::max(sse / double(n_common), std::numeric_limits<double>::min());
        double aicc = double(n_common) * std::log(sigma2) + 2.0 * k +
                      2.0 * k * (k + 1) / (double(n_common) - k - 1);
        scores.push_back({o, aicc, k});
    }
    return scores;
}

/// Minimum-AICc order over p,q <= 2; P,Q,d,D <= 1. Ties go to fewer
/// parameters, then to the lexicographically smaller order.
[[nodiscard]] inline SarimaOrder select_order(std::span<const double> train, int s) {
    auto scores = score_orders(train, s);
    if (scores.empty()) {
        throw std::invalid_argument("no SARIMA order can be fitted to a series of length " +
                                    std::to_string(train.size()));
    }
    auto best = std::min_element(scores.begin(), scores.end(), [](const OrderScore& a, const OrderScore& b) {
        if (a.aicc != b.aicc) return a.aicc < b.aicc;
        if (a.parameters != b.parameters) return a.parameters < b.parameters;
        return a.order < b.order;
    });
    return best->order;
}

}  // namespace loadcast
