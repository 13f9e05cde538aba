#pragma once

// Runs every approach over every (household, tariff period) cell, then:
//  1. validation: ranks the s=12 approaches and checks the winner's forecast
//     against the held-out months;
//  2. forecast: ranks all approaches and keeps the winner's horizon forecast.

#include "loadcast/catalog.hpp"
#include "loadcast/dataset.hpp"
#include "loadcast/metrics.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace loadcast {

enum class SeasonalityFilter { Twelve, Four, Both };

[[nodiscard]] inline bool admits(SeasonalityFilter f, int season) {
    return f == SeasonalityFilter::Both || (f == SeasonalityFilter::Twelve ? season == 12 : season == 4);
}

struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    std::vector<TariffPeriod> columns{std::begin(kAllPeriods), std::end(kAllPeriods)};
    std::size_t holdout = 1;
    int horizon = 3;
    SeasonalityFilter seasonality = SeasonalityFilter::Both;
    int sarima_season = 12;
    std::filesystem::path out_dir = "report";
    bool json = true;
    bool csv = true;

    void validate() const {
        if (horizon < 1) throw std::invalid_argument("horizon must be at least 1 month");
        if (sarima_season != 12 && sarima_season != 4) {
            throw std::invalid_argument("ARIMA seasonality must be 12 or 4");
        }
        if (columns.empty()) throw std::invalid_argument("no columns selected");
    }
};

struct ValidationStage {
    Ranking ranking;
    int best = 0;
    bool quarterly_basis = false;  // winner is a quarterly model compared on monthly means
    MonthKey first_month;
    std::vector<double> actual;
    std::vector<double> forecast;
    double actual_mean = 0.0;
    double forecast_mean = 0.0;
    std::optional<double> pct_error;  // absent when the actual mean is zero
};

struct ForecastStage {
    Ranking ranking;
    int best = 0;
    MonthKey first_month;
    std::vector<double> forecast;
    double mean = 0.0;
};

struct CellReport {
    std::string household;
    TariffPeriod period = TariffPeriod::Total;
    MonthlySeries series;
    std::vector<ApproachOutcome> outcomes;  // one per admitted approach, id order
    std::optional<ValidationStage> validation;
    std::optional<ForecastStage> forecast;

    [[nodiscard]] const ApproachResult* result(int id) const {
        for (const auto& o : outcomes) {
            if (const auto* r = std::get_if<ApproachResult>(&o); r && r->spec.id == id) return r;
        }
        return nullptr;
    }
};

struct ComparisonReport {
    std::size_t holdout = 1;
    int horizon = 3;
    SeasonalityFilter seasonality = SeasonalityFilter::Both;
    std::vector<CellReport> cells;
};

namespace detail {

inline double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

inline Ranking rank_results(const std::vector<const ApproachResult*>& rs) {
    std::vector<std::pair<int, ErrorTriple>> triples;
    for (const auto* r : rs) triples.emplace_back(r->spec.id, r->errors);
    return rank_models(std::move(triples));
}

inline CellReport evaluate_cell(const std::string& household, TariffPeriod period, const MonthlySeries& series,
                                const RunConfig& cfg) {
    CellReport cell{household, period, series, {}, {}, {}};
    for (const auto& spec : catalog_list({cfg.sarima_season})) {
        if (!admits(cfg.seasonality, spec.season)) continue;
        cell.outcomes.push_back(try_run_approach(spec, series, cfg.holdout, cfg.horizon));
    }

    std::vector<const ApproachResult*> ran, monthly;
    for (const auto& o : cell.outcomes) {
        if (const auto* r = std::get_if<ApproachResult>(&o)) {
            ran.push_back(r);
            if (r->spec.season == 12) monthly.push_back(r);
        }
    }
    if (ran.empty()) return cell;

    if (cfg.holdout > 0) {
        const auto& pool = monthly.empty() ? ran : monthly;
        ValidationStage v;
        v.ranking = rank_results(pool);
        v.best = v.ranking.best;
        const auto* winner = cell.result(v.best);
        v.quarterly_basis = winner->spec.granularity == Granularity::Quarterly;
        const std::size_t cut = series.size() - cfg.holdout;
        v.first_month = series.month_at(cut);
        v.actual.assign(series.values().begin() + long(cut), series.values().end());
        v.forecast = winner->holdout_forecasts;
        v.actual_mean = mean_of(v.actual);
        v.forecast_mean = mean_of(v.forecast);
        if (v.actual_mean != 0.0) v.pct_error = approximation_pct_error(v.actual_mean, v.forecast_mean);
        cell.validation = std::move(v);
    }

    ForecastStage f;
    f.ranking = rank_results(ran);
    f.best = f.ranking.best;
    f.first_month = series.end().next();
    f.forecast = cell.result(f.best)->horizon_forecasts;
    f.mean = mean_of(f.forecast);
    cell.forecast = std::move(f);
    return cell;
}

}  // namespace detail

/// Runs the full comparison. Cells are evaluated concurrently and assembled in
/// (household, period) order, so the report does not depend on scheduling.
[[nodiscard]] inline ComparisonReport run_comparison(const RunConfig& cfg, const Dataset& data) {
    cfg.validate();
    struct Job {
        const Household* household;
        TariffPeriod period;
    };
    std::vector<Job> jobs;
    for (const auto& h : data.households) {
        for (auto p : kAllPeriods) {
            if (std::find(cfg.columns.begin(), cfg.columns.end(), p) == cfg.columns.end()) continue;
            if (h.series.contains(p)) jobs.push_back({&h, p});
        }
    }
    if (jobs.empty()) throw std::invalid_argument("empty dataset: no series to compare");
    for (const auto& j : jobs) {
        if (cfg.holdout >= j.household->series.at(j.period).size()) {
            throw std::invalid_argument("holdout of " + std::to_string(cfg.holdout) + " months leaves no training data for " +
                                        j.household->name);
        }
    }

    ComparisonReport report{cfg.holdout, cfg.horizon, cfg.seasonality, {}};
    report.cells.resize(jobs.size(), CellReport{{}, TariffPeriod::Total, MonthlySeries({2000, 1}, {0.0}), {}, {}, {}});
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs.size(), std::thread::hardware_concurrency()));
    std::vector<std::future<void>> running;
    for (std::size_t w = 0; w < workers; ++w) {
        running.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < jobs.size(); i += workers) {
                const auto& j = jobs[i];
                report.cells[i] = detail::evaluate_cell(j.household->name, j.period, j.household->series.at(j.period), cfg);
            }
        }));
    }
    for (auto& f : running) f.get();
    return report;
}

}  // namespace loadcast
