#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "copmix/error.hpp"
#include "copmix/families.hpp"
#include "copmix/simulate.hpp"

using namespace copmix;

namespace {

double lag1_corr(const std::vector<double>& s) {
    const auto n = static_cast<double>(s.size() - 1);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        mx += s[i];
        my += s[i + 1];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        sxy += (s[i] - mx) * (s[i + 1] - my);
        sxx += (s[i] - mx) * (s[i] - mx);
        syy += (s[i + 1] - my) * (s[i + 1] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST(Chain, DeterministicForSeed) {
    const auto m = make_fgm(0.5);
    const auto a = sample_chain(m, 500, 11), b = sample_chain(m, 500, 11), c = sample_chain(m, 500, 12);
    EXPECT_EQ(a.states, b.states);
    EXPECT_NE(a.states, c.states);
    EXPECT_EQ(a.to_csv(), b.to_csv());
    EXPECT_EQ(a.to_csv().rfind("# {", 0), 0u);
}

TEST(Chain, StationaryMarginalIsUniform) {
    for (const auto& m : {make_fgm(0.9), make_frechet({0.3, 0.2}), make_mh_copula(0.7)}) {
        const auto t = sample_chain(m, 20000, 3);
        EXPECT_LT(ks_uniform(t.states), ks_critical_1pct(t.states.size()) * 3) << m.label;
    }
}

TEST(Chain, Lag1CorrelationMatchesModel) {
    EXPECT_NEAR(lag1_corr(sample_chain(make_fgm(0.9), 200000, 5).states), 0.3, 0.01);
    EXPECT_NEAR(lag1_corr(sample_chain(make_frechet({0.3, 0.2}), 200000, 5).states), 0.1, 0.01);
    EXPECT_NEAR(lag1_corr(sample_chain(make_frechet({0.1, 0.5}), 200000, 5).states), -0.4, 0.01);
}

TEST(Chain, FrechetStayFraction) {
    const auto t = sample_chain(make_frechet({0.4, 0.0}), 100000, 9);
    std::size_t stays = 0;
    for (std::size_t i = 1; i < t.states.size(); ++i) stays += t.states[i] == t.states[i - 1];
    EXPECT_NEAR(static_cast<double>(stays) / static_cast<double>(t.states.size() - 1), 0.4, 0.01);
}

TEST(Chain, Errors) {
    EXPECT_THROW(sample_chain(make_fgm(0.5), 0, 1), InputError);
    EXPECT_THROW(sample_mh_kernel(1.5, 10, 1), ParameterError);
}

TEST(MhKernel, StayProbabilityMatchesSlope) {
    const double a = 0.8;
    const auto t = sample_mh_kernel(a, 200000, 21);
    double expected = 0.0;
    std::size_t stays = 0;
    for (std::size_t i = 1; i < t.states.size(); ++i) {
        expected += a * std::abs(t.states[i - 1]);
        stays += t.states[i] == t.states[i - 1];
        ASSERT_LE(std::abs(t.states[i]), 1.0);
    }
    const double n = static_cast<double>(t.states.size() - 1);
    EXPECT_NEAR(stays / n, expected / n, 0.01);
    // symmetric target: mean zero
    EXPECT_NEAR(std::accumulate(t.states.begin(), t.states.end(), 0.0) / n, 0.0, 0.02);
}

TEST(Decay, FgmGeometric) {
    const auto t = sample_chain(make_fgm(0.9), 200000, 17);
    const auto d = empirical_corr_decay(t, [](double x) { return x; }, {0, 1, 2});
    ASSERT_EQ(d.values.size(), 3u);
    EXPECT_NEAR(d.values[0], 1.0, 1e-12);
    EXPECT_NEAR(d.values[1], 0.3, 0.015);
    EXPECT_NEAR(d.values[2], 0.09, 0.015);
    for (double se : d.standard_errors) EXPECT_GE(se, 0.0);
}

TEST(Decay, EnsembleSeesStuckComonotoneChain) {
    std::vector<Trajectory> paths;
    for (std::uint64_t s = 0; s < 200; ++s) paths.push_back(sample_chain(make_frechet({1.0, 0.0}), 5, s));
    const auto d = ensemble_corr_decay(paths, [](double x) { return x; }, {1, 4});
    for (double v : d.values) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Decay, ConstantFunctionRejected) {
    const auto t = sample_chain(make_fgm(0.5), 100, 1);
    EXPECT_THROW(empirical_corr_decay(t, [](double) { return 1.0; }, {1}), InputError);
}

TEST(Ks, StatisticsAndCriticalValues) {
    EXPECT_DOUBLE_EQ(ks_two_sample({0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}), 0.0);
    EXPECT_DOUBLE_EQ(ks_two_sample({0.1, 0.2}, {0.7, 0.8}), 1.0);
    // ties across samples are resolved together
    EXPECT_DOUBLE_EQ(ks_two_sample({0.5, 0.5}, {0.5, 0.6}), 0.5);
    EXPECT_NEAR(ks_critical_1pct(100, 100), 1.628 * std::sqrt(200.0 / 10000.0), 1e-12);
    EXPECT_NEAR(ks_uniform({0.5}), 0.5, 1e-15);
}
