#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "copmix/error.hpp"
#include "copmix/grid.hpp"

using namespace copmix;

TEST(Grid, MidpointNodesAndWeights) {
    const auto g = Grid::midpoint(8);
    ASSERT_EQ(g.size(), 8u);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_DOUBLE_EQ(g.node(i), (i + 0.5) / 8.0);
        EXPECT_DOUBLE_EQ(g.weight(i), 0.125);
    }
    EXPECT_DOUBLE_EQ(g.edges().front(), 0.0);
    EXPECT_DOUBLE_EQ(g.edges().back(), 1.0);
}

TEST(Grid, WeightsSumToOneAndNodesMirror) {
    for (auto scheme : {QuadratureScheme::Midpoint, QuadratureScheme::GaussLegendre}) {
        for (std::size_t n : {1u, 2u, 7u, 64u, 512u}) {
            const auto g = Grid::make(scheme, n);
            const auto w = g.weights();
            EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-13);
            for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(g.node(g.mirror(i)), 1.0 - g.node(i), 1e-13);
            for (std::size_t i = 0; i < n; ++i) {
                EXPECT_NEAR(g.edges()[i + 1] - g.edges()[i], g.weight(i), 1e-13);
                EXPECT_LT(g.edges()[i], g.node(i));
                EXPECT_GT(g.edges()[i + 1], g.node(i));
            }
        }
    }
}

TEST(Grid, GaussLegendreIsExactForPolynomials) {
    const auto g = Grid::gauss_legendre(6);
    // degree <= 11 integrates exactly: int x^k = 1/(k+1)
    for (int k = 0; k <= 11; ++k)
        EXPECT_NEAR(g.integrate([k](double x) { return std::pow(x, k); }), 1.0 / (k + 1), 1e-14) << k;
}

TEST(Grid, MidpointConvergesQuadratically) {
    auto err = [](std::size_t n) {
        return std::abs(Grid::midpoint(n).integrate([](double x) { return std::exp(x); }) - (std::exp(1.0) - 1));
    };
    EXPECT_NEAR(err(64) / err(128), 4.0, 0.01);
}

TEST(Grid, CellOfClampsAndLocates) {
    const auto g = Grid::midpoint(10);
    EXPECT_EQ(g.cell_of(-1.0), 0u);
    EXPECT_EQ(g.cell_of(0.0), 0u);
    EXPECT_EQ(g.cell_of(0.05), 0u);
    EXPECT_EQ(g.cell_of(0.15), 1u);
    EXPECT_EQ(g.cell_of(0.999), 9u);
    EXPECT_EQ(g.cell_of(1.0), 9u);
    EXPECT_EQ(g.cell_of(2.0), 9u);
}

TEST(Grid, ToleranceAndSchemeNames) {
    EXPECT_DOUBLE_EQ(Grid::midpoint(512).tolerance(), 5.0 / 512);
    EXPECT_EQ(parse_scheme("gl"), QuadratureScheme::GaussLegendre);
    EXPECT_EQ(parse_scheme("midpoint"), QuadratureScheme::Midpoint);
    EXPECT_EQ(to_string(QuadratureScheme::GaussLegendre), "gauss-legendre");
    EXPECT_THROW(parse_scheme("simpson"), InputError);
    EXPECT_THROW(Grid::midpoint(0), InputError);
}
