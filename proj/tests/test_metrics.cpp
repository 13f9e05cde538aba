#include "oracles.hpp"

#include "loadcast/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace loadcast;

TEST(Measures, Examples) {
    std::vector<double> a{100, 200}, f{90, 220};
    EXPECT_DOUBLE_EQ(mape(a, f), 10.0);
    EXPECT_DOUBLE_EQ(mad(a, f), 15.0);
    EXPECT_DOUBLE_EQ(msd(a, f), 250.0);
    std::vector<double> b{10, 20, 30}, g{12, 17, 30};
    EXPECT_NEAR(mape(b, g), 100.0 * (0.2 + 0.15) / 3, 1e-12);
    EXPECT_NEAR(mad(b, g), 5.0 / 3, 1e-12);
    EXPECT_NEAR(msd(b, g), 13.0 / 3, 1e-12);
}

TEST(Measures, PerfectFitIsZero) {
    std::vector<double> a{3, 5, 7};
    auto e = error_triple(a, a);
    EXPECT_EQ(e, (ErrorTriple{0, 0, 0}));
}

TEST(Measures, MatchReferenceDefinitions) {
    auto a = oracle::gaussian(200, 4, 10.0), f = oracle::gaussian(200, 5, 10.0);
    for (auto& v : a) v += 100;
    for (auto& v : f) v += 100;
    EXPECT_TRUE(oracle::close_rel(mape(a, f), oracle::mape(a, f), 1e-12));
    EXPECT_TRUE(oracle::close_rel(mad(a, f), oracle::mad(a, f), 1e-12));
    EXPECT_TRUE(oracle::close_rel(msd(a, f), oracle::msd(a, f), 1e-12));
}

TEST(Measures, Preconditions) {
    std::vector<double> e;
    EXPECT_THROW((void)mad(e, e), std::invalid_argument);
    EXPECT_THROW((void)msd(std::vector<double>{1}, std::vector<double>{1, 2}), std::invalid_argument);
    try {
        (void)mape(std::vector<double>{0, 1}, std::vector<double>{1, 1});
        FAIL();
    } catch (const std::domain_error& ex) {
        EXPECT_NE(std::string(ex.what()).find("zero actual"), std::string::npos);
    }
}

TEST(ApproximationError, Sign) {
    EXPECT_DOUBLE_EQ(approximation_pct_error(100, 120), -20.0);
    EXPECT_DOUBLE_EQ(approximation_pct_error(100, 90), 10.0);
    EXPECT_THROW((void)approximation_pct_error(0, 1), std::domain_error);
}

TEST(RankModels, SingleApproach) {
    auto r = rank_models({{7, {1, 2, 3}}});
    EXPECT_EQ(r.best, 7);
    EXPECT_DOUBLE_EQ(r.entry(7).rank_sum(), 3.0);
}

TEST(RankModels, DominatingApproachWins) {
    auto r = rank_models({{1, {5, 5, 5}}, {2, {1, 1, 1}}, {3, {3, 3, 3}}});
    EXPECT_EQ(r.best, 2);
    EXPECT_DOUBLE_EQ(r.entry(2).rank_sum(), 3.0);
    EXPECT_DOUBLE_EQ(r.entry(1).rank_sum(), 9.0);
    EXPECT_THROW((void)r.entry(4), std::out_of_range);
}

TEST(RankModels, TiesShareAverageRanks) {
    auto r = rank_models({{1, {2, 1, 1}}, {2, {2, 2, 2}}, {3, {1, 3, 3}}});
    EXPECT_DOUBLE_EQ(r.entry(1).mape_rank, 2.5);
    EXPECT_DOUBLE_EQ(r.entry(2).mape_rank, 2.5);
    EXPECT_DOUBLE_EQ(r.entry(3).mape_rank, 1.0);
    EXPECT_EQ(r.best, 1);
}

TEST(RankModels, EqualRankSumsFallToMapeThenId) {
    // 1: ranks 1,3,2 = 6; 2: ranks 2,1,3 = 6; 3: ranks 3,2,1 = 6
    auto r = rank_models({{1, {1, 3, 2}}, {2, {2, 1, 3}}, {3, {3, 2, 1}}});
    EXPECT_EQ(r.best, 1);
    auto same = rank_models({{4, {1, 1, 1}}, {2, {1, 1, 1}}});
    EXPECT_EQ(same.best, 2);
}

namespace {
// Brute-force ranks: count strictly smaller values plus half the other ties.
double brute_rank(const std::vector<double>& v, std::size_t i) {
    double r = 1;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j == i) continue;
        if (v[j] < v[i]) r += 1;
        else if (v[j] == v[i]) r += 0.5;
    }
    return r;
}
}  // namespace

TEST(RankModels, MatchesBruteForceAndIgnoresInputOrder) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> small(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + trial % 7;
        std::vector<std::pair<int, ErrorTriple>> items;
        for (std::size_t i = 0; i < n; ++i) {
            items.push_back({int(i) + 1, {double(small(rng)), double(small(rng)), double(small(rng))}});
        }
        std::vector<double> a, b, c;
        for (const auto& [id, e] : items) {
            a.push_back(e.mape);
            b.push_back(e.mad);
            c.push_back(e.msd);
        }
        auto r = rank_models(items);
        double best_sum = 1e9;
        int best = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double sum = brute_rank(a, i) + brute_rank(b, i) + brute_rank(c, i);
            EXPECT_DOUBLE_EQ(r.entry(int(i) + 1).rank_sum(), sum);
            auto key = std::make_tuple(sum, a[i], b[i], c[i], int(i) + 1);
            if (best == 0 || key < std::make_tuple(best_sum, a[best - 1], b[best - 1], c[best - 1], best)) {
                best_sum = sum;
                best = int(i) + 1;
            }
        }
        EXPECT_EQ(r.best, best);
        std::shuffle(items.begin(), items.end(), rng);
        EXPECT_EQ(rank_models(items).best, best);
    }
}

TEST(RankModels, Preconditions) {
    EXPECT_THROW((void)rank_models({}), std::invalid_argument);
    EXPECT_THROW((void)rank_models({{1, {std::nan(""), 1, 1}}}), std::invalid_argument);
    EXPECT_THROW((void)rank_models({{1, {1, 1, 1}}, {1, {2, 2, 2}}}), std::invalid_argument);
}
