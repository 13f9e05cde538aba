#pragma once

// The closed registry of nineteen forecasting approaches and the uniform
// fit -> evaluate -> forecast path that runs any of them on a monthly series.

#include "loadcast/arima.hpp"
#include "loadcast/decomposition.hpp"
#include "loadcast/metrics.hpp"
#include "loadcast/regression.hpp"
#include "loadcast/series.hpp"
#include "loadcast/smoothing.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace loadcast {

enum class Family { Decomposition, Regression, SimpleSmoothing, Holt, HoltWinters, Sarima };
enum class ModelForm { Additive, Multiplicative };
enum class Granularity { Monthly, Quarterly };

inline constexpr int kApproachCount = 19;

struct ApproachSpec {
    int id = 0;
    Family family = Family::Decomposition;
    std::optional<ModelForm> form;
    std::optional<bool> centered;
    int season = 12;
    Granularity granularity = Granularity::Monthly;

    bool operator==(const ApproachSpec&) const = default;

    [[nodiscard]] std::string description() const {
        std::string form_name;
        if (form) form_name = *form == ModelForm::Additive ? "additive" : "multiplicative";
        std::string text;
        switch (family) {
            case Family::Decomposition:
                text = centered.value_or(false) ? "Centered-moving-average decomposition, " + form_name
                                                : "Classical decomposition, " + form_name;
                break;
            case Family::Regression: text = "Trend + seasonal dummy regression"; break;
            case Family::SimpleSmoothing: text = "Single exponential smoothing"; break;
            case Family::Holt: text = "Double exponential smoothing, " + form_name + " trend"; break;
            case Family::HoltWinters: text = "Holt-Winters, optimized constants"; break;
            case Family::Sarima: text = "Seasonal ARIMA, AICc-selected order"; break;
        }
        return text + ", s=" + std::to_string(season);
    }
};

struct CatalogOptions {
    /// Seasonality for approach 19: 12 runs on monthly data, 4 on quarterly means.
    int sarima_season = 12;
};

/// The nineteen approaches in id order.
[[nodiscard]] inline std::vector<ApproachSpec> catalog_list(const CatalogOptions& opt = {}) {
    using enum Family;
    constexpr auto M = ModelForm::Multiplicative;
    constexpr auto A = ModelForm::Additive;
    auto g = [](int s) { return s == 4 ? Granularity::Quarterly : Granularity::Monthly; };
    std::vector<ApproachSpec> list;
    auto add = [&](Family f, std::optional<ModelForm> form, std::optional<bool> centered, int s) {
        list.push_back({int(list.size()) + 1, f, form, centered, s, g(s)});
    };
    add(Decomposition, M, false, 12);
    add(Decomposition, M, false, 4);
    add(Decomposition, A, false, 12);
    add(Decomposition, A, false, 4);
    add(Decomposition, M, true, 12);
    add(Decomposition, M, true, 4);
    add(Decomposition, A, true, 12);
    add(Decomposition, A, true, 4);
    add(Regression, {}, {}, 12);
    add(Regression, {}, {}, 4);
    add(SimpleSmoothing, {}, {}, 12);
    add(SimpleSmoothing, {}, {}, 4);
    add(Holt, M, {}, 12);
    add(Holt, A, {}, 12);
    add(Holt, M, {}, 4);
    add(Holt, A, {}, 4);
    add(HoltWinters, M, {}, 12);
    add(HoltWinters, M, {}, 4);
    if (opt.sarima_season != 12 && opt.sarima_season != 4) {
        throw std::invalid_argument("ARIMA seasonality must be 12 or 4");
    }
    add(Sarima, {}, {}, opt.sarima_season);
    return list;
}

/// Shortest training series (in the approach's own granularity) it accepts.
[[nodiscard]] inline std::size_t minimum_length(const ApproachSpec& spec) {
    const auto s = std::size_t(spec.season);
    switch (spec.family) {
        case Family::Decomposition: return 2 * s;
        case Family::Regression: return s + 1;
        case Family::SimpleSmoothing: return 2;
        case Family::Holt: return 3;
        case Family::HoltWinters: return 2 * s;
        case Family::Sarima: return SarimaOrder{}.min_length();
    }
    return 0;
}

struct ApproachResult {
    ApproachSpec spec;
    std::vector<std::pair<std::string, double>> parameters;
    /// Training data at the approach's granularity and the in-sample fit.
    std::vector<double> in_sample_actual;
    std::vector<double> fitted;
    /// Leading fitted entries that are initialization, not forecasts.
    std::size_t warmup = 0;
    ErrorTriple errors;
    /// Monthly-scale forecasts; quarterly approaches report each month as its
    /// quarter's three-month mean.
    std::vector<double> holdout_forecasts;
    std::vector<double> horizon_forecasts;
    std::size_t train_months = 0;
};

struct SkippedApproach {
    ApproachSpec spec;
    std::string reason;
};

using ApproachOutcome = std::variant<ApproachResult, SkippedApproach>;

[[nodiscard]] inline const ApproachSpec& spec_of(const ApproachOutcome& o) {
    return std::visit([](const auto& v) -> const ApproachSpec& { return v.spec; }, o);
}

/// Failure of one approach on one series, tagged with its id.
class ApproachError : public std::runtime_error {
public:
    ApproachError(int id, const std::string& what)
        : std::runtime_error("approach " + std::to_string(id) + ": " + what), id_(id), reason_(what) {}
    [[nodiscard]] int id() const { return id_; }
    [[nodiscard]] const std::string& reason() const { return reason_; }

private:
    int id_;
    std::string reason_;
};

namespace detail {

struct FamilyFit {
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<double> fitted;
    std::size_t warmup = 0;
    std::function<std::vector<double>(int)> forecast;
};

inline std::string numbered(const std::string& name, std::size_t i) { return name + "_" + std::to_string(i); }

inline FamilyFit fit_family(const ApproachSpec& spec, std::span<const double> y) {
    FamilyFit out;
    switch (spec.family) {
        case Family::Decomposition: {
            DecompositionModel model{spec.form == ModelForm::Additive ? SeasonalForm::Additive
                                                                      : SeasonalForm::Multiplicative,
                                     spec.centered.value_or(false), spec.season};
            auto fit = fit_decomposition(y, model);
            out.parameters = {{"intercept", fit.trend_intercept}, {"slope", fit.trend_slope}};
            for (std::size_t j = 0; j < fit.indices.size(); ++j)
                out.parameters.emplace_back(numbered("index", j + 1), fit.indices[j]);
            out.fitted = fit.fitted;
            out.forecast = [fit](int h) { return forecast_decomposition(fit, h); };
            break;
        }
        case Family::Regression: {
            auto fit = fit_regression(y, spec.season);
            out.parameters = {{"c0", fit.c0}, {"t0", fit.t0}};
            for (std::size_t j = 0; j < fit.betas.size(); ++j)
                out.parameters.emplace_back(numbered("beta", j + 2), fit.betas[j]);
            out.fitted = fit.fitted;
            out.forecast = [fit](int h) { return forecast_regression(fit, h); };
            break;
        }
        case Family::SimpleSmoothing:
        case Family::Holt:
        case Family::HoltWinters: {
            SmoothingKind kind = SmoothingKind::Simple;
            std::optional<int> L;
            if (spec.family == Family::Holt) {
                kind = spec.form == ModelForm::Additive ? SmoothingKind::HoltAdditive
                                                        : SmoothingKind::HoltMultiplicative;
            } else if (spec.family == Family::HoltWinters) {
                kind = SmoothingKind::HoltWinters;
                L = spec.season;
            }
            auto model = fit_smoothing(y, kind, L);
            out.parameters = {{"alpha", model.params.alpha}};
            if (model.params.beta) out.parameters.emplace_back("beta", *model.params.beta);
            if (model.params.gamma) out.parameters.emplace_back("gamma", *model.params.gamma);
            out.fitted = model.state.fitted;
            out.warmup = model.state.warmup;
            out.forecast = [model](int h) { return model.forecast(h); };
            break;
        }
        case Family::Sarima: {
            auto order = select_order(y, spec.season);
            auto fit = fit_sarima(y, order);
            out.parameters = {{"p", order.p}, {"d", order.d}, {"q", order.q}, {"P", order.P},
                              {"D", order.D}, {"Q", order.Q}, {"s", order.s}};
            for (std::size_t i = 0; i < fit.phi.size(); ++i)
                out.parameters.emplace_back(numbered("phi", i + 1), fit.phi[i]);
            for (std::size_t i = 0; i < fit.theta.size(); ++i)
                out.parameters.emplace_back(numbered("omega", i + 1), fit.theta[i]);
            for (std::size_t i = 0; i < fit.seasonal_phi.size(); ++i)
                out.parameters.emplace_back(numbered("seasonal_phi", i + 1), fit.seasonal_phi[i]);
            for (std::size_t i = 0; i < fit.seasonal_theta.size(); ++i)
                out.parameters.emplace_back(numbered("seasonal_omega", i + 1), fit.seasonal_theta[i]);
            out.parameters.emplace_back("mu", fit.mu);
            out.parameters.emplace_back("sigma2", fit.sigma2);
            out.parameters.emplace_back("converged", fit.converged ? 1.0 : 0.0);
            out.fitted = fit.fitted;
            out.warmup = order.burn_in();
            out.forecast = [fit](int h) { return forecast_sarima(fit, h); };
            break;
        }
    }
    return out;
}

}  // namespace detail

/// Fits `spec` on all but the last `holdout` months and forecasts the holdout
/// months plus `horizon` further months. Family failures throw ApproachError.
[[nodiscard]] inline ApproachResult run_approach(const ApproachSpec& spec, const MonthlySeries& series,
                                                 std::size_t holdout, int horizon) {
    if (holdout >= series.size()) {
        throw std::invalid_argument("holdout of " + std::to_string(holdout) +
                                    " months leaves no training data in a series of " +
                                    std::to_string(series.size()));
    }
    if (horizon < 1) throw std::invalid_argument("forecast horizon must be at least 1");

    ApproachResult r;
    r.spec = spec;
    r.train_months = series.size() - holdout;
    auto months = series.values().first(r.train_months);
    const bool quarterly = spec.granularity == Granularity::Quarterly;
    const char* unit = quarterly ? "quarterly" : "monthly";

    try {
        if (quarterly) {
            if (months.size() < 3) throw std::invalid_argument("insufficient data for quarterly aggregation");
            r.in_sample_actual = aggregate_quarterly(MonthlySeries(series.start(), {months.begin(), months.end()})).values;
        } else {
            r.in_sample_actual.assign(months.begin(), months.end());
        }
        if (r.in_sample_actual.size() < minimum_length(spec)) {
            throw std::invalid_argument("needs at least " + std::to_string(minimum_length(spec)) + " " + unit +
                                        " values, got " + std::to_string(r.in_sample_actual.size()));
        }
        auto fit = detail::fit_family(spec, r.in_sample_actual);
        r.parameters = std::move(fit.parameters);
        r.fitted = std::move(fit.fitted);
        r.warmup = fit.warmup;
        if (r.warmup >= r.fitted.size()) throw std::invalid_argument("no fitted values to evaluate");
        auto from = long(r.warmup);
        r.errors = error_triple(std::span<const double>(r.in_sample_actual).subspan(std::size_t(from)),
                                std::span<const double>(r.fitted).subspan(std::size_t(from)));

        const std::size_t ahead = holdout + std::size_t(horizon);
        std::vector<double> monthly(ahead);
        if (!quarterly) {
            monthly = fit.forecast(int(ahead));
        } else {
            const std::size_t quarters = r.in_sample_actual.size();
            const std::size_t last_block = (r.train_months + ahead - 1) / 3;
            auto q = fit.forecast(int(last_block - quarters + 1));
            for (std::size_t i = 0; i < ahead; ++i) {
                std::size_t block = (r.train_months + i) / 3;
                monthly[i] = q[block - quarters];
            }
        }
        for (double v : monthly) {
            if (!std::isfinite(v)) throw std::domain_error("non-finite forecast");
        }
        r.holdout_forecasts.assign(monthly.begin(), monthly.begin() + long(holdout));
        r.horizon_forecasts.assign(monthly.begin() + long(holdout), monthly.end());
    } catch (const std::exception& e) {
        throw ApproachError(spec.id, e.what());
    }
    return r;
}

/// run_approach, with family failures reported as a skip record.
[[nodiscard]] inline ApproachOutcome try_run_approach(const ApproachSpec& spec, const MonthlySeries& series,
                                                      std::size_t holdout, int horizon) {
    try {
        return run_approach(spec, series, holdout, horizon);
    } catch (const ApproachError& e) {
        return SkippedApproach{spec, e.reason()};
    }
}

}  // namespace loadcast
