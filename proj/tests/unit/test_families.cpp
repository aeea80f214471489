#include <cmath>

#include <gtest/gtest.h>

#include "copmix/error.hpp"
#include "copmix/families.hpp"
#include "copmix/registry.hpp"

using namespace copmix;

TEST(Fgm, ClosedFormsAndRange) {
    const auto m = make_fgm(0.7);
    EXPECT_NEAR(m.cdf(0.3, 0.6), 0.18 + 0.7 * 0.18 * 0.7 * 0.4, 1e-15);
    EXPECT_NEAR(m.density(0.0, 0.0), 1.7, 1e-15);
    for (double x : {0.1, 0.9})
        for (double v : {0.2, 0.8}) EXPECT_NEAR(m.ac_quantile(x, m.ac_partial(x, v)), v, 1e-12);
    EXPECT_THROW(make_fgm(1.01), ParameterError);
    EXPECT_NO_THROW(make_fgm(-1.0));
}

TEST(Frechet, AtomsAndCdf) {
    const auto m = make_frechet({0.3, 0.2});
    EXPECT_EQ(m.atoms.size(), 2u);
    EXPECT_NEAR(m.cdf(0.4, 0.7), 0.3 * 0.4 + 0.5 * 0.28 + 0.2 * 0.1, 1e-15);
    EXPECT_EQ(make_frechet({0.0, 0.0}).atoms.size(), 0u);
    EXPECT_THROW(make_frechet({0.6, 0.5}), ParameterError);
    EXPECT_THROW(make_frechet({-0.1, 0.5}), ParameterError);
}

TEST(Frechet, NStepWeights) {
    auto [a, b] = frechet_n_step_params(0.3, 0.2, 3);
    EXPECT_NEAR(a + b, std::pow(0.5, 3), 1e-15);
    EXPECT_NEAR(a - b, std::pow(0.1, 3), 1e-15);
    EXPECT_THROW(frechet_n_step_params(0.3, 0.2, 0), InputError);
}

TEST(Mardia, MapsToFrechet) {
    const auto f = MardiaParams{0.5}.as_frechet();
    EXPECT_NEAR(f.a, 0.5 * 0.5 * 1.5 / 2, 1e-15);
    EXPECT_NEAR(f.b, 0.5 * 0.5 * 0.5 / 2, 1e-15);
    EXPECT_THROW(make_mardia({1.5}), ParameterError);
}

TEST(MhCopula, CdfMatchesQuadrature) {
    const Grid g = Grid::midpoint(512);
    const auto m = make_mh_copula(0.6);
    for (double u : {0.2, 0.5, 0.8})
        for (double v : {0.3, 0.7}) EXPECT_NEAR(reconstructed_cdf(m, g, u, v), m.cdf(u, v), 3e-3);
    EXPECT_TRUE(validate_copula(m, g, g.tolerance()).ok());
    EXPECT_NEAR(MHKernelParams{0.5}.k(), 1 / 1.5, 1e-15);
    EXPECT_THROW(make_mh_copula(0.0), ParameterError);
}

TEST(Quadratic, SolvesStablyAtBothEnds) {
    // l t + q t^2 = m
    const double t = solve_increasing_quadratic(0.5, 0.5, 0.5 * 0.3 + 0.5 * 0.09);
    EXPECT_NEAR(t, 0.3, 1e-15);
    EXPECT_NEAR(solve_increasing_quadratic(1.0, 0.0, 0.25), 0.25, 1e-15);
    EXPECT_DOUBLE_EQ(solve_increasing_quadratic(1.0, 0.3, 0.0), 0.0);
}

TEST(TableRows, NamesRoundTrip) {
    for (auto r : {TableRow::M1, TableRow::M2, TableRow::M3, TableRow::M4, TableRow::T3_1, TableRow::T3_2,
                   TableRow::T3_3, TableRow::T3_4})
        EXPECT_EQ(parse_table_row(to_string(r)), r);
    EXPECT_THROW(parse_table_row("m9"), InputError);
}

TEST(TableRows, EnvelopeRowsAreCopulas) {
    const Grid g = Grid::midpoint(128);
    for (const char* row : {"m1", "m2", "m3", "m4"}) {
        const auto tm = make_table_density(table_spec(row, {2, 3}), g);
        EXPECT_TRUE(tm.report.ok()) << row << ' ' << tm.report.worst_violation;
        EXPECT_FALSE(tm.constants.approximate);
    }
}

TEST(TableRows, ConstantsFromSamplingWhenMissing) {
    TableDensitySpec s;
    s.row = TableRow::M2;
    s.g = [](double x) { return x * x; };
    s.h = [](double y) { return y; };
    const auto k = resolve_table_constants(s);
    EXPECT_TRUE(k.approximate);
    EXPECT_NEAR(k.b1, 1.0, 1e-3);
    EXPECT_NEAR(k.g_l1, 1.0 / 3, 1e-3);
    EXPECT_NEAR(k.h_l1, 0.5, 1e-3);
}

TEST(TableRows, DegenerateRowsRejected) {
    const Grid g = Grid::midpoint(32);
    // p = q = 0 makes g and h constant and the closed-form bound 0/0
    EXPECT_THROW(make_model("m4", {0, 0}, g), ParameterError);
}
