#pragma once

// Exponential smoothing: simple, Holt (additive or multiplicative trend) and
// multiplicative-seasonal Holt-Winters, plus the smoothing-constant search.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace loadcast {

enum class TrendForm { Additive, Multiplicative };

enum class SmoothingKind { Simple, HoltAdditive, HoltMultiplicative, HoltWinters };

struct SmoothingParams {
    double alpha = 0.0;
    std::optional<double> beta;
    std::optional<double> gamma;

    bool operator==(const SmoothingParams&) const = default;
};

/// Smoothed state after the last training observation.
struct SmoothingState {
    double level = 0.0;
    std::optional<double> trend;   // additive increment or multiplicative ratio
    std::vector<double> seasonals;  // indexed by phase t mod L
    /// fitted[t] is the forecast of y[t] made at t-1. The first `warmup`
    /// entries are initialization placeholders equal to the data.
    std::vector<double> fitted;
    std::size_t warmup = 0;
};

struct SmoothingModel {
    SmoothingKind kind = SmoothingKind::Simple;
    SmoothingParams params;
    SmoothingState state;

    /// Forecasts for steps 1..horizon past the training data.
    [[nodiscard]] std::vector<double> forecast(int horizon) const {
        if (horizon < 1) throw std::invalid_argument("forecast horizon must be at least 1");
        std::vector<double> out;
        out.reserve(std::size_t(horizon));
        const std::size_t n = state.fitted.size();
        for (int m = 1; m <= horizon; ++m) {
            switch (kind) {
                case SmoothingKind::Simple: out.push_back(state.level); break;
                case SmoothingKind::HoltAdditive: out.push_back(state.level + m * *state.trend); break;
                case SmoothingKind::HoltMultiplicative:
                    out.push_back(state.level * std::pow(*state.trend, m));
                    break;
                case SmoothingKind::HoltWinters: {
                    const std::size_t L = state.seasonals.size();
                    double idx = state.seasonals[(n - 1 + std::size_t(m)) % L];
                    out.push_back((state.level + m * *state.trend) * idx);
                    break;
                }
            }
        }
        return out;
    }
};

namespace detail {

inline void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string("smoothing constant ") + name + " must lie in [0, 1]");
    }
}

inline bool all_positive(std::span<const double> y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; });
}

/// Runs the recursions. Returns false if a multiplicative state leaves the
/// positive domain (the state is then meaningless).
inline bool run_ses(std::span<const double> y, double alpha, SmoothingState& st) {
    st.fitted.assign(y.size(), 0.0);
    st.warmup = 1;
    double f = y[0];
    st.fitted[0] = y[0];
    for (std::size_t t = 1; t < y.size(); ++t) {
        f = alpha * y[t - 1] + (1.0 - alpha) * f;
        st.fitted[t] = f;
    }
    st.level = alpha * y.back() + (1.0 - alpha) * f;
    st.trend.reset();
    st.seasonals.clear();
    return true;
}

inline bool run_holt(std::span<const double> y, double alpha, double beta, TrendForm form,
                     SmoothingState& st) {
    st.fitted.assign(y.size(), 0.0);
    st.warmup = std::min<std::size_t>(2, y.size());
    st.seasonals.clear();
    double level = y[0];
    double trend = form == TrendForm::Additive ? y[1] - y[0] : y[1] / y[0];
    st.fitted[0] = y[0];
    for (std::size_t t = 1; t < y.size(); ++t) {
        double prior = form == TrendForm::Additive ? level + trend : level * trend;
        st.fitted[t] = prior;
        double next = alpha * y[t] + (1.0 - alpha) * prior;
        if (form == TrendForm::Additive) {
            trend = beta * (next - level) + (1.0 - beta) * trend;
        } else {
            if (!(next > 0.0)) return false;
            trend = beta * (next / level) + (1.0 - beta) * trend;
        }
        level = next;
    }
    st.level = level;
    st.trend = trend;
    return true;
}

inline bool run_holt_winters(std::span<const double> y, double alpha, double beta, double gamma,
                             double level, double trend, std::vector<double> seasonals,
                             std::size_t first, SmoothingState& st) {
    const std::size_t L = seasonals.size();
    st.fitted.assign(y.begin(), y.end());
    st.warmup = first;
    for (std::size_t t = first; t < y.size(); ++t) {
        double& idx = seasonals[t % L];
        st.fitted[t] = (level + trend) * idx;
        double next = alpha * y[t] / idx + (1.0 - alpha) * (level + trend);
        if (!(next > 0.0)) return false;
        trend = beta * (next - level) + (1.0 - beta) * trend;
        idx = gamma * y[t] / next + (1.0 - gamma) * idx;
        level = next;
    }
    st.level = level;
    st.trend = trend;
    st.seasonals = std::move(seasonals);
    return true;
}

struct HoltWintersStart {
    double level;
    double trend;
    std::vector<double> seasonals;
};

/// Level = mean of season 1, trend = (mean of season 2 - mean of season 1) / L,
/// seasonals = season-1 values over the season-1 mean.
inline HoltWintersStart holt_winters_start(std::span<const double> y, std::size_t L) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t t = 0; t < L; ++t) {
        m1 += y[t];
        m2 += y[t + L];
    }
    m1 /= double(L);
    m2 /= double(L);
    HoltWintersStart s{m1, (m2 - m1) / double(L), std::vector<double>(L)};
    double total = 0.0;
    for (std::size_t j = 0; j < L; ++j) total += s.seasonals[j] = y[j] / m1;
    for (double& v : s.seasonals) v *= double(L) / total;
    return s;
}

inline void check_holt_winters_input(std::span<const double> y, int L) {
    if (L < 2) throw std::invalid_argument("holt_winters: season length must be at least 2");
    if (y.size() < 2 * std::size_t(L)) {
        throw std::invalid_argument("need two full seasons for holt_winters (" +
                                    std::to_string(2 * L) + " values), got " +
                                    std::to_string(y.size()));
    }
    if (!all_positive(y)) {
        throw std::domain_error("multiplicative seasonality requires positive data");
    }
}

}  // namespace detail

/// Simple exponential smoothing with F_1 = Y_1.
[[nodiscard]] inline SmoothingModel ses(std::span<const double> train, double alpha) {
    detail::check_unit(alpha, "alpha");
    if (train.empty()) throw std::invalid_argument("ses needs at least one value");
    SmoothingModel m{SmoothingKind::Simple, {alpha, {}, {}}, {}};
    detail::run_ses(train, alpha, m.state);
    return m;
}

/// Holt's two-parameter smoothing; C_1 = Y_1 and T_1 = Y_2 - Y_1 (or Y_2 / Y_1).
[[nodiscard]] inline SmoothingModel holt(std::span<const double> train, double alpha, double beta,
                                         TrendForm form) {
    detail::check_unit(alpha, "alpha");
    detail::check_unit(beta, "beta");
    if (train.size() < 2) throw std::invalid_argument("holt needs at least two values");
    if (form == TrendForm::Multiplicative && !detail::all_positive(train)) {
        throw std::domain_error("multiplicative trend requires positive data");
    }
    SmoothingModel m{form == TrendForm::Additive ? SmoothingKind::HoltAdditive
                                                 : SmoothingKind::HoltMultiplicative,
                     {alpha, beta, {}},
                     {}};
    if (!detail::run_holt(train, alpha, beta, form, m.state)) {
        throw std::domain_error("holt: level left the positive domain");
    }
    return m;
}

/// Multiplicative-seasonal Holt-Winters started from an explicit state that
/// describes time `first - 1`; recursions run over train[first..].
[[nodiscard]] inline SmoothingModel holt_winters_from(std::span<const double> train,
                                                      const SmoothingParams& params, double level,
                                                      double trend, std::vector<double> seasonals,
                                                      std::size_t first) {
    detail::check_unit(params.alpha, "alpha");
    if (!params.beta || !params.gamma) throw std::invalid_argument("holt_winters needs beta and gamma");
    detail::check_unit(*params.beta, "beta");
    detail::check_unit(*params.gamma, "gamma");
    if (seasonals.empty() || first < 1 || first > train.size()) {
        throw std::invalid_argument("holt_winters: invalid starting state");
    }
    SmoothingModel m{SmoothingKind::HoltWinters, params, {}};
    if (!detail::run_holt_winters(train, params.alpha, *params.beta, *params.gamma, level, trend,
                                  std::move(seasonals), first, m.state)) {
        throw std::domain_error("holt_winters: level left the positive domain");
    }
    return m;
}

[[nodiscard]] inline SmoothingModel holt_winters(std::span<const double> train,
                                                 const SmoothingParams& params, int L) {
    detail::check_holt_winters_input(train, L);
    auto start = detail::holt_winters_start(train, std::size_t(L));
    return holt_winters_from(train, params, start.level, start.trend, std::move(start.seasonals),
                             std::size_t(L));
}

/// In-sample one-step-ahead mean squared deviation, skipping warm-up entries.
[[nodiscard]] inline double one_step_msd(std::span<const double> y, const SmoothingState& st) {
    if (st.warmup >= y.size()) return 0.0;
    double sse = 0.0;
    for (std::size_t t = st.warmup; t < y.size(); ++t) {
        double e = y[t] - st.fitted[t];
        sse += e * e;
    }
    return sse / double(y.size() - st.warmup);
}

/// One-step MSD for a parameter vector, +inf where the recursion is invalid.
[[nodiscard]] inline double smoothing_objective(std::span<const double> y, SmoothingKind kind,
                                                std::span<const double> x, int L = 0) {
    SmoothingState st;
    bool ok = true;
    switch (kind) {
        case SmoothingKind::Simple: ok = detail::run_ses(y, x[0], st); break;
        case SmoothingKind::HoltAdditive:
            ok = detail::run_holt(y, x[0], x[1], TrendForm::Additive, st);
            break;
        case SmoothingKind::HoltMultiplicative:
            ok = detail::run_holt(y, x[0], x[1], TrendForm::Multiplicative, st);
            break;
        case SmoothingKind::HoltWinters: {
            auto s = detail::holt_winters_start(y, std::size_t(L));
            ok = detail::run_holt_winters(y, x[0], x[1], x[2], s.level, s.trend, std::move(s.seasonals),
                                          std::size_t(L), st);
            break;
        }
    }
    if (!ok) return std::numeric_limits<double>::infinity();
    double msd = one_step_msd(y, st);
    return std::isfinite(msd) ? msd : std::numeric_limits<double>::infinity();
}

[[nodiscard]] constexpr std::size_t parameter_count(SmoothingKind kind) {
    switch (kind) {
        case SmoothingKind::Simple: return 1;
        case SmoothingKind::HoltAdditive:
        case SmoothingKind::HoltMultiplicative: return 2;
        case SmoothingKind::HoltWinters: return 3;
    }
    return 0;
}

inline constexpr double kGridStep = 0.05;
inline constexpr double kRefineStart = 0.025;
inline constexpr double kRefineStop = 1e-3;

/// Smoothing constants minimizing in-sample one-step MSD: exhaustive 0.05 grid
/// over [0,1]^d, then coordinate refinement with step halving down to 1e-3.
/// Only strict improvements are accepted, so ties keep the smaller alpha, then
/// beta, then gamma.
[[nodiscard]] inline SmoothingParams optimize_params(std::span<const double> train, SmoothingKind kind,
                                                     std::optional<int> L = std::nullopt) {
    switch (kind) {
        case SmoothingKind::Simple:
            if (train.empty()) throw std::invalid_argument("ses needs at least one value");
            break;
        case SmoothingKind::HoltAdditive:
            if (train.size() < 2) throw std::invalid_argument("holt needs at least two values");
            break;
        case SmoothingKind::HoltMultiplicative:
            if (train.size() < 2) throw std::invalid_argument("holt needs at least two values");
            if (!detail::all_positive(train)) {
                throw std::domain_error("multiplicative trend requires positive data");
            }
            break;
        case SmoothingKind::HoltWinters:
            if (!L) throw std::invalid_argument("holt_winters optimization needs a season length");
            detail::check_holt_winters_input(train, *L);
            break;
    }
    const int season = L.value_or(0);
    const std::size_t d = parameter_count(kind);
    const int points = int(std::lround(1.0 / kGridStep)) + 1;

    std::array<double, 3> best{};
    double best_f = std::numeric_limits<double>::infinity();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= std::size_t(points);
    std::array<double, 3> x{};
    // Last coordinate varies fastest: lexicographic order in (alpha, beta, gamma).
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t rest = code;
        for (std::size_t i = d; i-- > 0;) {
            x[i] = double(rest % std::size_t(points)) * kGridStep;
            rest /= std::size_t(points);
        }
        double f = smoothing_objective(train, kind, std::span<const double>(x.data(), d), season);
        if (f < best_f) {
            best_f = f;
            best = x;
        }
    }
    if (!std::isfinite(best_f)) {
        throw std::domain_error("no admissible smoothing constants for this series");
    }

    for (double step = kRefineStart; step >= kRefineStop;) {
        bool improved = false;
        for (std::size_t i = 0; i < d; ++i) {
            for (double dir : {-1.0, 1.0}) {
                auto cand = best;
                cand[i] = std::clamp(best[i] + dir * step, 0.0, 1.0);
                if (cand[i] == best[i]) continue;
                double f = smoothing_objective(train, kind, std::span<const double>(cand.data(), d), season);
                if (f < best_f) {
                    best_f = f;
                    best = cand;
                    improved = true;
                }
            }
        }
        if (!improved) step /= 2.0;
    }

    SmoothingParams p{best[0], {}, {}};
    if (d >= 2) p.beta = best[1];
    if (d >= 3) p.gamma = best[2];
    return p;
}

/// Fits `kind` with optimized constants.
[[nodiscard]] inline SmoothingModel fit_smoothing(std::span<const double> train, SmoothingKind kind,
                                                  std::optional<int> L = std::nullopt) {
    auto p = optimize_params(train, kind, L);
    switch (kind) {
        case SmoothingKind::Simple: return ses(train, p.alpha);
        case SmoothingKind::HoltAdditive: return holt(train, p.alpha, *p.beta, TrendForm::Additive);
        case SmoothingKind::HoltMultiplicative:
            return holt(train, p.alpha, *p.beta, TrendForm::Multiplicative);
        case SmoothingKind::HoltWinters: return holt_winters(train, p, *L);
    }
    throw std::logic_error("unknown smoothing kind");
}

}  // namespace loadcast
