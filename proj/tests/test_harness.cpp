#include "oracles.hpp"

#include "loadcast/loadcast.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace loadcast;
namespace fs = std::filesystem;

namespace {
const fs::path kFixtures = LOADCAST_FIXTURES;

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("loadcast_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string load_error(const std::string& file) {
    try {
        (void)load_csv(kFixtures / file);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return {};
}

Dataset fixtures(std::initializer_list<const char*> files, const std::vector<TariffPeriod>& keep) {
    Dataset d;
    for (const char* f : files) d.add(load_csv(kFixtures / f, keep));
    return d;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + LOADCAST_CLI + "\" " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
}  // namespace

TEST(Csv, LoadsHouseholdFixture) {
    auto h = load_csv(kFixtures / "house_a.csv");
    EXPECT_EQ(h.name, "house_a");
    EXPECT_EQ(h.series.size(), 4u);
    EXPECT_EQ(h.total().size(), 24u);
    EXPECT_EQ(h.total().start(), (MonthKey{2014, 5}));
    EXPECT_DOUBLE_EQ(h.total()[0], 269.3);
    EXPECT_DOUBLE_EQ(h.series.at(TariffPeriod::Night)[1], 40.1);
}

TEST(Csv, KeepsOnlyRequestedPeriodsPlusTotal) {
    auto h = load_csv(kFixtures / "house_a.csv", {TariffPeriod::Peak});
    EXPECT_EQ(h.series.size(), 2u);
    EXPECT_TRUE(h.series.contains(TariffPeriod::Total));
    EXPECT_TRUE(h.series.contains(TariffPeriod::Peak));
}

TEST(Csv, Errors) {
    EXPECT_NE(load_error("gap.csv").find("gap at 2014-06"), std::string::npos);
    auto neg = load_error("negative.csv");
    EXPECT_NE(neg.find("row 3"), std::string::npos) << neg;
    EXPECT_NE(neg.find("negative value -3"), std::string::npos) << neg;
    EXPECT_NE(load_error("no_total.csv").find("missing required column 'total'"), std::string::npos);
    EXPECT_THROW((void)load_csv(kFixtures / "absent.csv"), std::runtime_error);
    EXPECT_THROW((void)parse_csv("date,total\n2014-05,abc\n", "x"), std::invalid_argument);
    EXPECT_THROW((void)parse_csv("date,total\n2014-05,1\n2014-05,2\n", "x"), std::invalid_argument);
    EXPECT_THROW((void)parse_csv("date,total,heat\n2014-05,1,2\n", "x"), std::invalid_argument);
    EXPECT_THROW((void)parse_csv("", "x"), std::invalid_argument);
}

TEST(Csv, BomAndCrlf) {
    auto h = parse_csv("\xEF\xBB\xBF" "date,total\r\n2014-11,5.5\r\n2014-12,6\r\n2015-01,7\r\n", "x");
    EXPECT_EQ(h.total().size(), 3u);
    EXPECT_EQ(h.total().end(), (MonthKey{2015, 1}));
    EXPECT_DOUBLE_EQ(h.total()[2], 7.0);
}

TEST(Dataset, RejectsDuplicates) {
    Dataset d;
    d.add(load_csv(kFixtures / "house_c.csv"));
    EXPECT_THROW(d.add(load_csv(kFixtures / "house_c.csv")), std::invalid_argument);
}

TEST(Comparison, OneCellHasEveryApproach) {
    RunConfig cfg;
    cfg.columns = {TariffPeriod::Total};
    auto report = run_comparison(cfg, fixtures({"house_c.csv"}, cfg.columns));
    ASSERT_EQ(report.cells.size(), 1u);
    const auto& cell = report.cells[0];
    EXPECT_EQ(cell.outcomes.size(), 19u);
    ASSERT_TRUE(cell.validation && cell.forecast);
    EXPECT_EQ(cell.result(cell.validation->best)->spec.season, 12);
    EXPECT_EQ(cell.forecast->forecast.size(), 3u);
    EXPECT_EQ(cell.forecast->first_month, (MonthKey{2016, 5}));
    const auto& v = *cell.validation;
    ASSERT_TRUE(v.pct_error);
    EXPECT_NEAR(*v.pct_error, 100.0 * (v.actual_mean - v.forecast_mean) / v.actual_mean, 1e-9);
}

TEST(Comparison, SeasonalityFilter) {
    RunConfig cfg;
    cfg.columns = {TariffPeriod::Total};
    cfg.seasonality = SeasonalityFilter::Twelve;
    auto report = run_comparison(cfg, fixtures({"house_c.csv"}, cfg.columns));
    EXPECT_EQ(report.cells[0].outcomes.size(), 10u);
    for (const auto& o : report.cells[0].outcomes) EXPECT_EQ(spec_of(o).season, 12);
}

TEST(Comparison, ShortSeriesSkipsEverything) {
    RunConfig cfg;
    auto report = run_comparison(cfg, fixtures({"two_rows.csv"}, cfg.columns));
    ASSERT_EQ(report.cells.size(), 1u);
    for (const auto& o : report.cells[0].outcomes) EXPECT_TRUE(std::holds_alternative<SkippedApproach>(o));
    EXPECT_FALSE(report.cells[0].forecast);
}

TEST(Comparison, InputErrors) {
    RunConfig cfg;
    EXPECT_THROW((void)run_comparison(cfg, Dataset{}), std::invalid_argument);
    cfg.holdout = 24;
    EXPECT_THROW((void)run_comparison(cfg, fixtures({"house_c.csv"}, cfg.columns)), std::invalid_argument);
    cfg.holdout = 1;
    cfg.horizon = 0;
    EXPECT_THROW((void)run_comparison(cfg, fixtures({"house_c.csv"}, cfg.columns)), std::invalid_argument);
}

TEST(Report, DeterministicAndCsvMatchesJson) {
    RunConfig cfg;
    auto data = fixtures({"house_a.csv", "house_c.csv"}, cfg.columns);
    auto report = run_comparison(cfg, data);
    EXPECT_EQ(report.cells.size(), 5u);
    auto a = scratch("report_a"), b = scratch("report_b");
    emit_report(report, a, true, true);
    emit_report(run_comparison(cfg, data), b, true, true);
    for (const char* f : {"errors_all", "best_models", "validation", "forecasts"}) {
        for (const char* ext : {".csv", ".json"}) {
            EXPECT_EQ(read(a / (std::string(f) + ext)), read(b / (std::string(f) + ext))) << f << ext;
        }
    }

    auto json = nlohmann::json::parse(read(a / "errors_all.json"));
    std::istringstream csv(read(a / "errors_all.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "household,period,approach,description,season,status,mape,mad,msd,rank_sum,reason");
    ASSERT_EQ(json.size(), 5u * 19u);
    for (const auto& row : json) {
        std::getline(csv, line);
        if (row["status"] == "skipped") continue;
        auto mape = fmt4(row["mape"].get<double>());
        EXPECT_NE(line.find("," + mape + ","), std::string::npos) << line;
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Report, UnwritableDirectory) {
    RunConfig cfg;
    cfg.columns = {TariffPeriod::Total};
    auto report = run_comparison(cfg, fixtures({"house_c.csv"}, cfg.columns));
    auto dir = scratch("blocked");
    fs::create_directories(dir);
    std::ofstream(dir / "file") << "x";
    try {
        emit_report(report, dir / "file" / "out", true, true);
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("cannot create output directory"), std::string::npos);
    }
    fs::remove_all(dir);
}

TEST(Report, Rounding) {
    EXPECT_EQ(fmt4(1.23456), "1.2346");
    EXPECT_EQ(fmt4(-0.00001), "0.0000");
    EXPECT_EQ(round4(2.5), 2.5);
}

TEST(PlotData, RowsCoverDataAndHorizon) {
    RunConfig cfg;
    cfg.columns = {TariffPeriod::Total};
    cfg.horizon = 4;
    auto report = run_comparison(cfg, fixtures({"house_c.csv"}, cfg.columns));
    auto dir = scratch("plots");
    emit_plot_data(report, dir);
    std::istringstream in(read(dir / "plots" / "house_c_total.csv"));
    std::string line;
    int rows = 0, train = 0, holdout = 0, horizon = 0;
    std::getline(in, line);
    EXPECT_EQ(line, "month,t,segment,actual,fitted,forecast");
    while (std::getline(in, line)) {
        ++rows;
        train += line.find(",train,") != std::string::npos;
        holdout += line.find(",holdout,") != std::string::npos;
        horizon += line.find(",horizon,") != std::string::npos;
    }
    EXPECT_EQ(rows, 28);
    EXPECT_EQ(train, 23);
    EXPECT_EQ(holdout, 1);
    EXPECT_EQ(horizon, 4);
    EXPECT_TRUE(fs::exists(dir / "plots" / "validation.csv"));
    fs::remove_all(dir);
}

TEST(Cli, VersionHelpAndRuns) {
    EXPECT_EQ(run_cli("--version"), 0);
    EXPECT_EQ(run_cli("--help"), 0);
    EXPECT_NE(run_cli(""), 0);
    auto dir = scratch("cli");
    auto input = (kFixtures / "house_c.csv").string();
    EXPECT_EQ(run_cli("compare -i \"" + input + "\" -o \"" + dir.string() + "\""), 0);
    EXPECT_TRUE(fs::exists(dir / "errors_all.json"));
    EXPECT_TRUE(fs::exists(dir / "forecasts.csv"));
    EXPECT_EQ(run_cli("forecast -i \"" + input + "\" --format csv -o \"" + (dir / "f").string() + "\""), 0);
    EXPECT_TRUE(fs::exists(dir / "f" / "forecasts.csv"));
    EXPECT_FALSE(fs::exists(dir / "f" / "forecasts.json"));
    EXPECT_FALSE(fs::exists(dir / "f" / "validation.csv"));
    EXPECT_NE(run_cli("compare -i \"" + (kFixtures / "gap.csv").string() + "\" -o \"" + dir.string() + "\""), 0);
    EXPECT_NE(run_cli("compare -i \"" + input + "\" --seasonality 6"), 0);
    fs::remove_all(dir);
}
