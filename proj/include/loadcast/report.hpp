#pragma once

// Report and plot-data emission. Numbers are rounded to 4 decimals once and
// the same rounded value feeds both the CSV text and the JSON number.

#include "loadcast/comparison.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loadcast {

struct ReportSelection {
    bool validation = true;
    bool forecast = true;
};

[[nodiscard]] inline double round4(double v) {
    double r = std::round(v * 1e4) / 1e4;
    return r == 0.0 ? 0.0 : r;  // no "-0.0000"
}

[[nodiscard]] inline std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", round4(v));
    return buf;
}

namespace detail {

using Json = nlohmann::ordered_json;

/// A table rendered both as CSV rows and as a JSON array of objects.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    class Row {
    public:
        Row& text(const std::string& v) {
            cells_.push_back(quote(v));
            json_.push_back(v);
            return *this;
        }
        Row& integer(long v) {
            cells_.push_back(std::to_string(v));
            json_.push_back(v);
            return *this;
        }
        Row& number(double v) {
            cells_.push_back(fmt4(v));
            json_.push_back(round4(v));
            return *this;
        }
        Row& number(const std::optional<double>& v) {
            if (v) return number(*v);
            cells_.emplace_back();
            json_.push_back(nullptr);
            return *this;
        }

    private:
        friend class Table;
        static std::string quote(const std::string& v) {
            if (v.find_first_of(",\"\n") == std::string::npos) return v;
            std::string out = "\"";
            for (char c : v) {
                if (c == '"') out += '"';
                out += c;
            }
            return out + "\"";
        }
        std::vector<std::string> cells_;
        std::vector<Json> json_;
    };

    Row& row() { return rows_.emplace_back(); }

    [[nodiscard]] std::string csv() const {
        std::string out;
        for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
        out += '\n';
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.cells_.size(); ++i) out += (i ? "," : "") + r.cells_[i];
            out += '\n';
        }
        return out;
    }

    [[nodiscard]] std::string json() const {
        Json arr = Json::array();
        for (const auto& r : rows_) {
            Json obj = Json::object();
            for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = r.json_[i];
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }

private:
    std::vector<std::string> columns_;
    std::vector<Row> rows_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

inline void prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw std::runtime_error("cannot create output directory " + dir.string() +
                                 (ec ? ": " + ec.message() : std::string()));
    }
}

inline void emit(const Table& t, const std::filesystem::path& dir, const std::string& stem, bool json, bool csv) {
    if (csv) write_file(dir / (stem + ".csv"), t.csv());
    if (json) write_file(dir / (stem + ".json"), t.json());
}

inline std::string month_span(MonthKey first, std::size_t count) {
    if (count <= 1) return first.to_string();
    return first.to_string() + ".." + first.plus(long(count) - 1).to_string();
}

}  // namespace detail

/// Per-approach error table (one row per cell and admitted approach).
[[nodiscard]] inline detail::Table errors_table(const ComparisonReport& report) {
    detail::Table t({"household", "period", "approach", "description", "season", "status", "mape", "mad", "msd",
                     "rank_sum", "reason"});
    for (const auto& cell : report.cells) {
        for (const auto& o : cell.outcomes) {
            const auto& spec = spec_of(o);
            auto& row = t.row();
            row.text(cell.household).text(std::string(to_string(cell.period))).integer(spec.id).text(spec.description())
                .integer(spec.season);
            if (const auto* r = std::get_if<ApproachResult>(&o)) {
                std::optional<double> rank_sum;
                if (cell.forecast) rank_sum = cell.forecast->ranking.entry(spec.id).rank_sum();
                row.text("ok").number(r->errors.mape).number(r->errors.mad).number(r->errors.msd).number(rank_sum).text("");
            } else {
                const auto& s = std::get<SkippedApproach>(o);
                row.text("skipped").number(std::nullopt).number(std::nullopt).number(std::nullopt).number(std::nullopt)
                    .text(s.reason);
            }
        }
    }
    return t;
}

[[nodiscard]] inline detail::Table best_models_table(const ComparisonReport& report, ReportSelection sel = {}) {
    detail::Table t({"household", "period", "stage", "approach", "description", "mape", "mad", "msd"});
    for (const auto& cell : report.cells) {
        auto add = [&](const char* stage, int id) {
            const auto* r = cell.result(id);
            t.row().text(cell.household).text(std::string(to_string(cell.period))).text(stage).integer(id)
                .text(r->spec.description()).number(r->errors.mape).number(r->errors.mad).number(r->errors.msd);
        };
        if (sel.validation && cell.validation) add("validation", cell.validation->best);
        if (sel.forecast && cell.forecast) add("forecast", cell.forecast->best);
    }
    return t;
}

[[nodiscard]] inline detail::Table validation_table(const ComparisonReport& report) {
    detail::Table t({"household", "period", "approach", "basis", "months", "actual", "forecast", "approx_pct_error"});
    for (const auto& cell : report.cells) {
        if (!cell.validation) continue;
        const auto& v = *cell.validation;
        t.row().text(cell.household).text(std::string(to_string(cell.period))).integer(v.best)
            .text(v.quarterly_basis ? "quarterly-mean" : "monthly")
            .text(detail::month_span(v.first_month, v.actual.size())).number(v.actual_mean).number(v.forecast_mean)
            .number(v.pct_error);
    }
    return t;
}

[[nodiscard]] inline detail::Table forecasts_table(const ComparisonReport& report) {
    std::vector<std::string> cols{"household", "period", "approach", "start", "end", "mean_kwh"};
    for (int h = 1; h <= report.horizon; ++h) cols.push_back("h" + std::to_string(h));
    detail::Table t(cols);
    for (const auto& cell : report.cells) {
        if (!cell.forecast) continue;
        const auto& f = *cell.forecast;
        auto& row = t.row();
        row.text(cell.household).text(std::string(to_string(cell.period))).integer(f.best).text(f.first_month.to_string())
            .text(f.first_month.plus(long(f.forecast.size()) - 1).to_string()).number(f.mean);
        for (double v : f.forecast) row.number(v);
    }
    return t;
}

/// Writes errors_all, best_models, validation and forecasts in the requested
/// formats. `sel` drops the stage a filtered view does not cover.
inline void emit_report(const ComparisonReport& report, const std::filesystem::path& dir, bool json, bool csv,
                        ReportSelection sel = {}) {
    detail::prepare_dir(dir);
    detail::emit(errors_table(report), dir, "errors_all", json, csv);
    detail::emit(best_models_table(report, sel), dir, "best_models", json, csv);
    if (sel.validation) detail::emit(validation_table(report), dir, "validation", json, csv);
    if (sel.forecast) detail::emit(forecasts_table(report), dir, "forecasts", json, csv);
}

[[nodiscard]] inline std::string file_safe(const std::string& name) {
    std::string out;
    for (char c : name) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
        out += ok ? c : '_';
    }
    return out;
}

/// Monthly rows for one cell under the forecast-stage winner: actual values,
/// in-sample fit, and holdout + horizon forecasts. Quarterly winners repeat
/// each quarter's fitted mean over its three months.
[[nodiscard]] inline std::string plot_csv(const CellReport& cell, std::size_t holdout) {
    detail::Table t({"month", "t", "segment", "actual", "fitted", "forecast"});
    const ApproachResult* r = cell.forecast ? cell.result(cell.forecast->best) : nullptr;
    const std::size_t n = cell.series.size();
    const std::size_t train = n - holdout;
    const std::size_t horizon = r ? r->horizon_forecasts.size() : 0;
    for (std::size_t m = 0; m < n + horizon; ++m) {
        auto& row = t.row();
        row.text(cell.series.month_at(m).to_string()).integer(long(m))
            .text(m < train ? "train" : (m < n ? "holdout" : "horizon"));
        row.number(m < n ? std::optional<double>(cell.series[m]) : std::nullopt);
        std::optional<double> fitted, forecast;
        if (r && m < train) {
            bool quarterly = r->spec.granularity == Granularity::Quarterly;
            std::size_t i = quarterly ? m / 3 : m;
            if (i < r->fitted.size()) fitted = r->fitted[i];
        }
        if (r && m >= train) {
            forecast = m < n ? r->holdout_forecasts[m - train] : r->horizon_forecasts[m - n];
        }
        row.number(fitted).number(forecast);
    }
    return t.csv();
}

/// Actual vs forecast at each held-out month for the validation winner.
[[nodiscard]] inline std::string validation_pairs_csv(const ComparisonReport& report) {
    detail::Table t({"household", "period", "approach", "month", "actual", "forecast"});
    for (const auto& cell : report.cells) {
        if (!cell.validation) continue;
        const auto& v = *cell.validation;
        for (std::size_t i = 0; i < v.actual.size(); ++i) {
            t.row().text(cell.household).text(std::string(to_string(cell.period))).integer(v.best)
                .text(v.first_month.plus(long(i)).to_string()).number(v.actual[i]).number(v.forecast[i]);
        }
    }
    return t.csv();
}

/// Writes plots/<household>_<period>.csv per cell and plots/validation.csv.
inline void emit_plot_data(const ComparisonReport& report, const std::filesystem::path& dir, ReportSelection sel = {}) {
    auto plots = dir / "plots";
    detail::prepare_dir(plots);
    if (sel.forecast) {
        for (const auto& cell : report.cells) {
            detail::write_file(plots / (file_safe(cell.household) + "_" + std::string(to_string(cell.period)) + ".csv"),
                               plot_csv(cell, report.holdout));
        }
    }
    if (sel.validation) detail::write_file(plots / "validation.csv", validation_pairs_csv(report));
}

}  // namespace loadcast
