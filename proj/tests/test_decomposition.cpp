#include "oracles.hpp"

#include "loadcast/decomposition.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace loadcast;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

const DecompositionModel kModels[] = {
    {SeasonalForm::Multiplicative, false, 4}, {SeasonalForm::Additive, false, 4},
    {SeasonalForm::Multiplicative, true, 4},  {SeasonalForm::Additive, true, 4},
    {SeasonalForm::Multiplicative, false, 12}, {SeasonalForm::Additive, false, 12},
    {SeasonalForm::Multiplicative, true, 12},  {SeasonalForm::Additive, true, 12},
};

std::vector<double> noisy(std::size_t n, int s, std::uint64_t seed) {
    auto e = oracle::gaussian(n, seed, 6.0);
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) y[t] = 150 + 1.5 * double(t) + 30 * std::sin(6.283185307 * double(t) / s) + e[t];
    return y;
}

}  // namespace

TEST(MovingAverage, TrailingMeans) {
    EXPECT_EQ(moving_average(std::vector<double>{2, 2, 2}, 2), (std::vector<double>{2, 2}));
    EXPECT_EQ(moving_average(std::vector<double>{1, 2, 3, 4}, 3), (std::vector<double>{2, 3}));
    EXPECT_THROW((void)moving_average(std::vector<double>{1}, 2), std::invalid_argument);
    EXPECT_THROW((void)moving_average(std::vector<double>{1}, 0), std::invalid_argument);
}

TEST(CenteredTrend, ConstantSeriesStaysConstant) {
    auto c = centered_trend(std::vector<double>(9, 7.25), 4);
    for (std::size_t t = 0; t < c.size(); ++t) {
        if (t < 2 || t >= 7) {
            EXPECT_FALSE(c[t]);
        } else {
            EXPECT_DOUBLE_EQ(*c[t], 7.25);
        }
    }
}

TEST(CenteredTrend, HalfWeightsTheEdges) {
    auto c = centered_trend(std::vector<double>{1, 2, 3, 4, 5, 6}, 4);
    ASSERT_EQ(c.size(), 6u);
    EXPECT_FALSE(c[0]);
    EXPECT_FALSE(c[1]);
    EXPECT_DOUBLE_EQ(*c[2], 3.0);
    EXPECT_DOUBLE_EQ(*c[3], 4.0);
    EXPECT_FALSE(c[4]);
    EXPECT_FALSE(c[5]);
    EXPECT_THROW((void)centered_trend(std::vector<double>{1, 2, 3, 4}, 4), std::invalid_argument);
}

TEST(SeasonalIndices, RecoversNoiselessProductPattern) {
    std::vector<double> y;
    const double m[4] = {0.5, 1.5, 0.5, 1.5};
    for (int t = 0; t < 16; ++t) y.push_back(10 * m[t % 4]);
    for (bool centered : {false, true}) {
        auto idx = seasonal_indices(y, {SeasonalForm::Multiplicative, centered, 4});
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(idx[std::size_t(j)], m[j], 1e-12);
    }
}

TEST(SeasonalIndices, ConstantSeriesGivesNeutralIndices) {
    std::vector<double> y(24, 42.0);
    for (const auto& model : kModels) {
        auto idx = seasonal_indices(y, model);
        for (double v : idx) EXPECT_NEAR(v, model.form == SeasonalForm::Additive ? 0.0 : 1.0, 1e-12);
    }
}

TEST(SeasonalIndices, RejectsNonPositiveMultiplicativeData) {
    std::vector<double> y(16, 5.0);
    y[3] = 0.0;
    try {
        (void)seasonal_indices(y, {SeasonalForm::Multiplicative, false, 4});
        FAIL();
    } catch (const std::domain_error& e) {
        EXPECT_STREQ(e.what(), "multiplicative decomposition requires positive data");
    }
    EXPECT_THROW((void)fit_decomposition(std::vector<double>(7, 1.0), {SeasonalForm::Additive, false, 4}),
                 std::invalid_argument);
}

TEST(FitDecomposition, SeasonFreeLine) {
    std::vector<double> y;
    for (int t = 0; t < 12; ++t) y.push_back(5 + 2 * t);
    for (bool centered : {false, true}) {
        auto fit = fit_decomposition(y, {SeasonalForm::Additive, centered, 4});
        EXPECT_NEAR(fit.trend_slope, 2.0, 1e-9);
        EXPECT_NEAR(fit.trend_intercept, 5.0, 1e-9);
        for (double v : fit.indices) EXPECT_NEAR(v, 0.0, 1e-9);
        for (std::size_t t = 0; t < y.size(); ++t) EXPECT_NEAR(fit.fitted[t], y[t], 1e-9);
    }
}

TEST(FitDecomposition, RecoversTrendTimesPattern) {
    auto m = oracle::pattern({0.7, 1.4, 1.1, 0.8}, true);
    auto y = oracle::trend_times(10, 1, m, 20);
    for (bool centered : {false, true}) {
        auto fit = fit_decomposition(y, {SeasonalForm::Multiplicative, centered, 4});
        EXPECT_NEAR(fit.trend_slope, 1.0, 1e-6);
        EXPECT_NEAR(fit.trend_intercept, 10.0, 1e-6);
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(fit.indices[std::size_t(j)], m[std::size_t(j)], 1e-6);
    }
}

TEST(FitDecomposition, ExactRecoveryAndContinuation) {
    auto m12 = oracle::pattern({3, 4, 5, 5, 6, 8, 9, 9, 7, 5, 4, 3}, true);
    auto a12 = oracle::pattern({-9, -6, -2, 0, 3, 8, 12, 10, 4, -3, -7, -10}, false);
    struct Case {
        SeasonalForm form;
        int s;
        std::vector<double> series;
    };
    const std::size_t n = 40;
    std::vector<Case> cases{{SeasonalForm::Multiplicative, 12, oracle::trend_times(80, -0.6, m12, n + 6)},
                            {SeasonalForm::Additive, 12, oracle::trend_plus(80, 2.5, a12, n + 6)},
                            {SeasonalForm::Multiplicative, 4, oracle::trend_times(50, 0.4, {0.9, 1.2, 1.1, 0.8}, n + 6)},
                            {SeasonalForm::Additive, 4, oracle::trend_plus(50, -0.4, {-3, 5, 1, -3}, n + 6)}};
    for (const auto& c : cases) {
        std::vector<double> train(c.series.begin(), c.series.begin() + long(n));
        for (bool centered : {false, true}) {
            auto fit = fit_decomposition(train, {c.form, centered, c.s});
            for (std::size_t t = 0; t < n; ++t) EXPECT_NEAR(fit.fitted[t], train[t], 1e-6 * train[t]);
            auto f = forecast_decomposition(fit, 6);
            for (std::size_t h = 0; h < 6; ++h) EXPECT_NEAR(f[h], c.series[n + h], 1e-6 * c.series[n + h]);
        }
    }
}

TEST(FitDecomposition, IndicesAreNormalizedAndComponentsCompose) {
    for (const auto& model : kModels) {
        auto y = noisy(36, model.season, 11);
        auto fit = fit_decomposition(y, model);
        if (model.form == SeasonalForm::Multiplicative) {
            EXPECT_NEAR(sum(fit.indices), model.season, 1e-9);
            for (double v : fit.indices) EXPECT_GT(v, 0.0);
        } else {
            EXPECT_NEAR(sum(fit.indices), 0.0, 1e-9);
        }
        ASSERT_EQ(fit.components.size(), y.size());
        for (std::size_t t = 0; t < y.size(); ++t) {
            const auto& c = fit.components[t];
            double back = model.form == SeasonalForm::Additive ? c.trend + c.seasonal + c.irregular
                                                               : c.trend * c.seasonal * c.irregular;
            EXPECT_NEAR(back, y[t], 1e-12 * y[t]);
        }
    }
}

TEST(FitDecomposition, AdditiveShiftEquivariance) {
    for (const auto& model : kModels) {
        if (model.form != SeasonalForm::Additive) continue;
        auto y = noisy(36, model.season, 5);
        auto shifted = y;
        for (auto& v : shifted) v += 37.5;
        auto a = fit_decomposition(y, model), b = fit_decomposition(shifted, model);
        EXPECT_NEAR(b.trend_intercept - a.trend_intercept, 37.5, 1e-9);
        EXPECT_NEAR(b.trend_slope, a.trend_slope, 1e-9);
        for (std::size_t j = 0; j < a.indices.size(); ++j) EXPECT_NEAR(b.indices[j], a.indices[j], 1e-9);
    }
}

TEST(FitDecomposition, MultiplicativeScaleInvariance) {
    for (const auto& model : kModels) {
        if (model.form != SeasonalForm::Multiplicative) continue;
        auto y = noisy(36, model.season, 9);
        auto scaled = y;
        for (auto& v : scaled) v *= 3.25;
        auto a = fit_decomposition(y, model), b = fit_decomposition(scaled, model);
        for (std::size_t j = 0; j < a.indices.size(); ++j) EXPECT_NEAR(b.indices[j], a.indices[j], 1e-9);
        EXPECT_NEAR(b.trend_slope, 3.25 * a.trend_slope, 1e-9 * std::abs(b.trend_slope) + 1e-12);
        EXPECT_NEAR(b.trend_intercept, 3.25 * a.trend_intercept, 1e-9 * b.trend_intercept);
    }
}

TEST(ForecastDecomposition, ExtendsTheTrendLine) {
    DecompositionFit fit;
    fit.model = {SeasonalForm::Additive, false, 4};
    fit.indices = {0, 0, 0, 0};
    fit.trend_intercept = 5;
    fit.trend_slope = 2;
    fit.fitted.resize(8);
    EXPECT_EQ(forecast_decomposition(fit, 2), (std::vector<double>{21, 23}));
    EXPECT_THROW((void)forecast_decomposition(fit, 0), std::invalid_argument);

    fit.model.form = SeasonalForm::Multiplicative;
    fit.indices = {1, 1, 1, 1};
    EXPECT_EQ(forecast_decomposition(fit, 3), (std::vector<double>{21, 23, 25}));
}
