#pragma once

// Forecast accuracy measures and multi-metric model ranking.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace loadcast {

struct ErrorTriple {
    double mape = 0.0;  // percent
    double mad = 0.0;   // kWh
    double msd = 0.0;   // kWh^2

    bool operator==(const ErrorTriple&) const = default;
};

namespace detail {
inline void check_pair(std::span<const double> actual, std::span<const double> fitted) {
    if (actual.empty()) throw std::invalid_argument("error measure of an empty sequence");
    if (actual.size() != fitted.size()) {
        throw std::invalid_argument("error measure: " + std::to_string(actual.size()) + " actual vs " +
                                    std::to_string(fitted.size()) + " fitted values");
    }
}
}  // namespace detail

/// Mean absolute deviation.
[[nodiscard]] inline double mad(std::span<const double> actual, std::span<const double> fitted) {
    detail::check_pair(actual, fitted);
    double sum = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) sum += std::abs(actual[t] - fitted[t]);
    return sum / double(actual.size());
}

/// Mean squared deviation.
[[nodiscard]] inline double msd(std::span<const double> actual, std::span<const double> fitted) {
    detail::check_pair(actual, fitted);
    double sum = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        double e = actual[t] - fitted[t];
        sum += e * e;
    }
    return sum / double(actual.size());
}

/// Mean absolute percentage error, in percent.
[[nodiscard]] inline double mape(std::span<const double> actual, std::span<const double> fitted) {
    detail::check_pair(actual, fitted);
    double sum = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        if (actual[t] == 0.0) throw std::domain_error("MAPE undefined at zero actual");
        sum += std::abs(actual[t] - fitted[t]) / std::abs(actual[t]);
    }
    return 100.0 * sum / double(actual.size());
}

[[nodiscard]] inline ErrorTriple error_triple(std::span<const double> actual, std::span<const double> fitted) {
    return {mape(actual, fitted), mad(actual, fitted), msd(actual, fitted)};
}

/// Signed percentage gap; positive when the forecast falls short of the actual.
[[nodiscard]] inline double approximation_pct_error(double actual, double forecast) {
    if (actual == 0.0) throw std::domain_error("approximation error undefined at zero actual");
    return 100.0 * (actual - forecast) / actual;
}

struct RankedApproach {
    int id = 0;
    ErrorTriple errors;
    double mape_rank = 0.0;
    double mad_rank = 0.0;
    double msd_rank = 0.0;
    [[nodiscard]] double rank_sum() const { return mape_rank + mad_rank + msd_rank; }
};

struct Ranking {
    std::vector<RankedApproach> entries;  // sorted by approach id
    int best = 0;

    [[nodiscard]] const RankedApproach& entry(int id) const {
        auto it = std::find_if(entries.begin(), entries.end(), [id](const auto& e) { return e.id == id; });
        if (it == entries.end()) throw std::out_of_range("approach " + std::to_string(id) + " not ranked");
        return *it;
    }
};

namespace detail {
/// 1-based ranks; tied values share the mean of the ranks they span.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        double shared = (double(i) + double(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = shared;
        i = j + 1;
    }
    return rank;
}
}  // namespace detail

/// Ranks approaches on MAPE, MAD and MSD separately and picks the smallest
/// rank sum. Ties fall to MAPE, then MAD, then MSD, then the lower id.
[[nodiscard]] inline Ranking rank_models(std::vector<std::pair<int, ErrorTriple>> triples) {
    if (triples.empty()) throw std::invalid_argument("rank_models needs at least one approach");
    for (const auto& [id, e] : triples) {
        if (std::isnan(e.mape) || std::isnan(e.mad) || std::isnan(e.msd)) {
            throw std::invalid_argument("rank_models: approach " + std::to_string(id) + " has NaN errors");
        }
    }
    std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < triples.size(); ++i) {
        if (triples[i].first == triples[i - 1].first) {
            throw std::invalid_argument("rank_models: duplicate approach " + std::to_string(triples[i].first));
        }
    }
    std::vector<double> a, b, c;
    for (const auto& [id, e] : triples) {
        a.push_back(e.mape);
        b.push_back(e.mad);
        c.push_back(e.msd);
    }
    auto ra = detail::average_ranks(a), rb = detail::average_ranks(b), rc = detail::average_ranks(c);

    Ranking r;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        r.entries.push_back({triples[i].first, triples[i].second, ra[i], rb[i], rc[i]});
    }
    auto better = [](const RankedApproach& x, const RankedApproach& y) {
        if (x.rank_sum() != y.rank_sum()) return x.rank_sum() < y.rank_sum();
        if (x.errors.mape != y.errors.mape) return x.errors.mape < y.errors.mape;
        if (x.errors.mad != y.errors.mad) return x.errors.mad < y.errors.mad;
        if (x.errors.msd != y.errors.msd) return x.errors.msd < y.errors.msd;
        return x.id < y.id;
    };
    r.best = std::min_element(r.entries.begin(), r.entries.end(), better)->id;
    return r;
}

}  // namespace loadcast
