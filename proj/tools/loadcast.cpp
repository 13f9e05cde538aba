// loadcast: compare the 19 forecasting approaches over household CSV files.

#include "loadcast/loadcast.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Options {
    std::vector<std::string> inputs;
    std::string columns = "total,day,peak,night";
    std::size_t holdout = 1;
    int horizon = 3;
    std::string seasonality = "both";
    int arima_season = 12;
    std::string out = "report";
    std::string format = "json,csv";
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

loadcast::RunConfig to_config(const Options& o) {
    loadcast::RunConfig cfg;
    for (const auto& p : o.inputs) cfg.inputs.emplace_back(p);
    cfg.columns.clear();
    for (const auto& c : split_list(o.columns)) cfg.columns.push_back(loadcast::parse_period(c));
    cfg.holdout = o.holdout;
    cfg.horizon = o.horizon;
    if (o.seasonality == "12") {
        cfg.seasonality = loadcast::SeasonalityFilter::Twelve;
    } else if (o.seasonality == "4") {
        cfg.seasonality = loadcast::SeasonalityFilter::Four;
    } else if (o.seasonality == "both") {
        cfg.seasonality = loadcast::SeasonalityFilter::Both;
    } else {
        throw std::invalid_argument("--seasonality must be 12, 4 or both");
    }
    cfg.sarima_season = o.arima_season;
    cfg.out_dir = o.out;
    cfg.json = cfg.csv = false;
    for (const auto& f : split_list(o.format)) {
        if (f == "json") {
            cfg.json = true;
        } else if (f == "csv") {
            cfg.csv = true;
        } else {
            throw std::invalid_argument("unknown format '" + f + "' (expected json, csv)");
        }
    }
    if (!cfg.json && !cfg.csv) throw std::invalid_argument("--format selects no output");
    cfg.validate();
    return cfg;
}

int run(const Options& o, loadcast::ReportSelection sel) {
    auto cfg = to_config(o);
    loadcast::Dataset data;
    for (const auto& path : cfg.inputs) data.add(loadcast::load_csv(path, cfg.columns));
    auto report = loadcast::run_comparison(cfg, data);
    loadcast::emit_report(report, cfg.out_dir, cfg.json, cfg.csv, sel);
    loadcast::emit_plot_data(report, cfg.out_dir, sel);

    std::size_t skipped = 0;
    for (const auto& cell : report.cells) {
        for (const auto& o : cell.outcomes) skipped += std::holds_alternative<loadcast::SkippedApproach>(o);
        std::printf("%s/%s:", cell.household.c_str(), std::string(loadcast::to_string(cell.period)).c_str());
        if (sel.validation && cell.validation) {
            std::printf(" validation #%d", cell.validation->best);
            if (cell.validation->pct_error) std::printf(" (%s%%)", loadcast::fmt4(*cell.validation->pct_error).c_str());
        }
        if (sel.forecast && cell.forecast) {
            std::printf(" forecast #%d mean %s kWh", cell.forecast->best, loadcast::fmt4(cell.forecast->mean).c_str());
        }
        if (!cell.forecast) std::printf(" no approach ran");
        std::printf("\n");
    }
    std::printf("%zu cells, %zu skipped approach runs, reports in %s\n", report.cells.size(), skipped,
                cfg.out_dir.string().c_str());
    return 0;
}

void add_run_options(CLI::App* cmd, Options& o) {
    cmd->add_option("-i,--input", o.inputs, "household CSV file (date,total[,day,peak,night]); repeatable")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--columns", o.columns, "tariff periods to analyze")->capture_default_str();
    cmd->add_option("--holdout", o.holdout, "trailing months withheld for validation")->capture_default_str();
    cmd->add_option("--horizon", o.horizon, "months forecast past the data")->capture_default_str();
    cmd->add_option("--seasonality", o.seasonality, "approaches to compare: 12, 4 or both")->capture_default_str();
    cmd->add_option("--arima-seasonality", o.arima_season, "seasonal period of approach 19 (12 or 4)")
        ->capture_default_str();
    cmd->add_option("-o,--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("--format", o.format, "report formats: json, csv or both")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compare monthly electricity-consumption forecasting approaches"};
    app.set_version_flag("--version", std::string("loadcast ") + loadcast::kVersion);
    app.require_subcommand(1);

    Options opts;
    auto* compare = app.add_subcommand("compare", "validate and forecast (full pipeline)");
    auto* validate = app.add_subcommand("validate", "holdout validation stage only");
    auto* forecast = app.add_subcommand("forecast", "horizon forecast stage only");
    for (auto* cmd : {compare, validate, forecast}) add_run_options(cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (validate->parsed()) return run(opts, {true, false});
        if (forecast->parsed()) return run(opts, {false, true});
        return run(opts, {true, true});
    } catch (const std::exception& e) {
        std::fprintf(stderr, "loadcast: error: %s\n", e.what());
        return 1;
    }
}
