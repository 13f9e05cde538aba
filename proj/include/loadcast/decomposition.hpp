#pragma once

// Classical decomposition forecasters (additive and multiplicative, with
// a linear-trend or a centered-moving-average detrending step).

#include "loadcast/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace loadcast {

enum class SeasonalForm { Additive, Multiplicative };

[[nodiscard]] inline const char* to_string(SeasonalForm f) {
    return f == SeasonalForm::Additive ? "additive" : "multiplicative";
}

struct DecompositionModel {
    SeasonalForm form = SeasonalForm::Multiplicative;
    bool centered = false;
    int season = 12;
};

struct DecompositionComponent {
    double trend;
    double seasonal;
    double irregular;
};

struct DecompositionFit {
    DecompositionModel model;
    std::vector<double> indices;  // one per position in season, phase 0 = first training point
    double trend_intercept = 0.0;
    double trend_slope = 0.0;
    std::vector<double> fitted;
    std::vector<DecompositionComponent> components;
};

/// Trailing k-term means: out[i] = mean(values[i..i+k)).
[[nodiscard]] inline std::vector<double> moving_average(std::span<const double> values, std::size_t k) {
    if (k < 1) throw std::invalid_argument("moving_average: k must be at least 1");
    if (values.size() < k) {
        throw std::invalid_argument("moving_average: window of " + std::to_string(k) +
                                    " exceeds series length " + std::to_string(values.size()));
    }
    std::vector<double> out;
    out.reserve(values.size() - k + 1);
    for (std::size_t i = 0; i + k <= values.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = i; j < i + k; ++j) sum += values[j];
        out.push_back(sum / double(k));
    }
    return out;
}

/// 2 x s centered moving average. The first and last s/2 positions are undefined.
[[nodiscard]] inline std::vector<std::optional<double>> centered_trend(std::span<const double> values,
                                                                       int s) {
    if (s < 2 || s % 2 != 0) throw std::invalid_argument("centered_trend: season must be even");
    const std::size_t n = values.size();
    const std::size_t half = std::size_t(s) / 2;
    if (n < std::size_t(s) + 1) {
        throw std::invalid_argument("centered_trend: need at least " + std::to_string(s + 1) +
                                    " values, got " + std::to_string(n));
    }
    std::vector<std::optional<double>> out(n);
    for (std::size_t t = half; t + half < n; ++t) {
        double sum = 0.5 * values[t - half] + 0.5 * values[t + half];
        for (std::size_t j = t - half + 1; j < t + half; ++j) sum += values[j];
        out[t] = sum / double(s);
    }
    return out;
}

namespace detail {

inline void check_model(std::span<const double> y, const DecompositionModel& model) {
    if (model.season < 2) throw std::invalid_argument("decomposition: season must be at least 2");
    if (model.centered && model.season % 2 != 0) {
        throw std::invalid_argument("decomposition: centered trend needs an even season");
    }
    if (y.size() < 2 * std::size_t(model.season)) {
        throw std::invalid_argument("decomposition needs at least two full seasons (" +
                                    std::to_string(2 * model.season) + " values), got " +
                                    std::to_string(y.size()));
    }
    if (model.form == SeasonalForm::Multiplicative) {
        for (double v : y) {
            if (!(v > 0.0)) {
                throw std::domain_error("multiplicative decomposition requires positive data");
            }
        }
    }
}

inline double remove_trend(double y, double trend, SeasonalForm form) {
    return form == SeasonalForm::Additive ? y - trend : y / trend;
}

inline double remove_season(double y, double index, SeasonalForm form) {
    return form == SeasonalForm::Additive ? y - index : y / index;
}

inline double compose(double trend, double index, SeasonalForm form) {
    return form == SeasonalForm::Additive ? trend + index : trend * index;
}

/// Per-phase means of y against the trend, normalized (sum s or sum 0).
/// Positions with no trend value are skipped.
inline std::vector<double> phase_means(std::span<const double> y,
                                       std::span<const std::optional<double>> trend, int s,
                                       SeasonalForm form) {
    std::vector<double> sum(std::size_t(s), 0.0);
    std::vector<int> count(std::size_t(s), 0);
    for (std::size_t t = 0; t < y.size(); ++t) {
        if (!trend[t]) continue;
        if (form == SeasonalForm::Multiplicative && !(*trend[t] > 0.0)) {
            throw std::domain_error("multiplicative decomposition requires positive data");
        }
        sum[t % std::size_t(s)] += remove_trend(y[t], *trend[t], form);
        ++count[t % std::size_t(s)];
    }
    std::vector<double> idx(static_cast<std::size_t>(s));
    double total = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (count[j] == 0) throw std::invalid_argument("decomposition: a season position has no data");
        idx[j] = sum[j] / count[j];
        total += idx[j];
    }
    for (double& v : idx) {
        if (form == SeasonalForm::Additive) {
            v -= total / s;
        } else {
            if (!(total > 0.0)) throw std::domain_error("multiplicative decomposition requires positive data");
            v *= s / total;
        }
    }
    return idx;
}

inline std::vector<double> deseasonalize(std::span<const double> y, std::span<const double> idx,
                                         SeasonalForm form) {
    std::vector<double> out(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) out[t] = remove_season(y[t], idx[t % idx.size()], form);
    return out;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline constexpr int kMaxRefinements = 1000;

/// Line trend for the non-centered variant. The slope comes from the first and
/// last complete seasons, which cancels any normalized seasonal pattern; the
/// level is re-estimated from the deseasonalized series until the indices settle.
inline std::vector<double> line_detrended_indices(std::span<const double> y, const DecompositionModel& m) {
    const std::size_t n = y.size();
    const std::size_t s = std::size_t(m.season);
    const std::size_t seasons = n / s;
    auto block_mean = [&](std::size_t b) {
        double sum = 0.0;
        for (std::size_t t = b * s; t < (b + 1) * s; ++t) sum += y[t];
        return sum / double(s);
    };
    const double slope = (block_mean(seasons - 1) - block_mean(0)) / double(s * (seasons - 1));
    double level = block_mean(0) - slope * (double(s) - 1.0) / 2.0;

    std::vector<std::optional<double>> trend(n);
    std::vector<double> idx;
    for (int iter = 0; iter < kMaxRefinements; ++iter) {
        for (std::size_t t = 0; t < n; ++t) trend[t] = level + slope * double(t);
        idx = phase_means(y, trend, m.season, m.form);
        auto adj = deseasonalize(y, idx, m.form);
        double next = 0.0;
        for (std::size_t t = 0; t < n; ++t) next += adj[t] - slope * double(t);
        next /= double(n);
        bool done = std::abs(next - level) <= 1e-14 * std::max(1.0, std::abs(level));
        level = next;
        if (done || m.form == SeasonalForm::Additive) break;
    }
    return idx;
}

/// Centered-moving-average trend, recomputed on the deseasonalized series until
/// the indices settle. Undefined margins never enter the phase means.
inline std::vector<double> cma_detrended_indices(std::span<const double> y, const DecompositionModel& m) {
    auto trend = centered_trend(y, m.season);
    auto idx = phase_means(y, trend, m.season, m.form);
    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    const double tol = m.form == SeasonalForm::Additive ? 1e-13 * std::max(1.0, scale) : 1e-13;
    for (int iter = 0; iter < kMaxRefinements; ++iter) {
        trend = centered_trend(deseasonalize(y, idx, m.form), m.season);
        auto next = phase_means(y, trend, m.season, m.form);
        bool done = max_abs_diff(next, idx) <= tol;
        idx = std::move(next);
        if (done) break;
    }
    return idx;
}

}  // namespace detail

/// Normalized seasonal indices: multiplicative indices sum to s, additive to 0.
[[nodiscard]] inline std::vector<double> seasonal_indices(std::span<const double> train,
                                                          const DecompositionModel& model) {
    detail::check_model(train, model);
    return model.centered ? detail::cma_detrended_indices(train, model)
                          : detail::line_detrended_indices(train, model);
}

[[nodiscard]] inline DecompositionFit fit_decomposition(std::span<const double> train,
                                                        const DecompositionModel& model) {
    DecompositionFit fit;
    fit.model = model;
    fit.indices = seasonal_indices(train, model);
    auto adjusted = detail::deseasonalize(train, fit.indices, model.form);
    Line line = fit_line(adjusted);
    fit.trend_intercept = line.intercept;
    fit.trend_slope = line.slope;

    fit.fitted.resize(train.size());
    fit.components.resize(train.size());
    for (std::size_t t = 0; t < train.size(); ++t) {
        double trend = line.at(double(t));
        double idx = fit.indices[t % fit.indices.size()];
        if (model.form == SeasonalForm::Multiplicative && !(trend > 0.0)) {
            throw std::domain_error("multiplicative decomposition requires positive data");
        }
        fit.fitted[t] = detail::compose(trend, idx, model.form);
        double irregular = model.form == SeasonalForm::Additive ? train[t] - trend - idx
                                                                : train[t] / (trend * idx);
        fit.components[t] = {trend, idx, irregular};
    }
    return fit;
}

[[nodiscard]] inline std::vector<double> forecast_decomposition(const DecompositionFit& fit, int horizon) {
    if (horizon < 1) throw std::invalid_argument("forecast horizon must be at least 1");
    const std::size_t n = fit.fitted.size();
    std::vector<double> out;
    out.reserve(std::size_t(horizon));
    for (int h = 1; h <= horizon; ++h) {
        std::size_t t = n - 1 + std::size_t(h);
        double trend = fit.trend_intercept + fit.trend_slope * double(t);
        out.push_back(detail::compose(trend, fit.indices[t % fit.indices.size()], fit.model.form));
    }
    return out;
}

}  // namespace loadcast
