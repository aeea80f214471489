#include <cmath>

#include <gtest/gtest.h>
#include <json.hpp>

#include "copmix/bounds.hpp"
#include "copmix/error.hpp"
#include "copmix/families.hpp"
#include "copmix/registry.hpp"
#include "copmix/spectral.hpp"

using namespace copmix;

TEST(DerivativeBound, FgmConstants) {
    const Grid g = Grid::gauss_legendre(64);
    const auto r = theorem3_bound(make_fgm(0.5), g);
    // k1 = 4 theta^2 / 3, k2 = 4 k1
    EXPECT_NEAR(r.extras.at("k1"), 1.0 / 3, 1e-10);
    EXPECT_NEAR(r.extras.at("k2"), 4.0 / 3, 1e-10);
    EXPECT_TRUE(r.satisfied);
    EXPECT_NEAR(r.extras.at("rho1_bound"), std::sqrt(r.value / 12), 1e-15);
    EXPECT_GE(r.extras.at("rho1_bound"), 0.5 / 3);
}

TEST(DerivativeBound, NeedsDerivative) {
    auto m = make_fgm(0.5);
    m.density_dy.reset();
    EXPECT_THROW(theorem3_bound(m, Grid::midpoint(32)), InputError);
}

TEST(Envelope, FgmExtraction) {
    const Grid g = Grid::midpoint(512);
    const auto env = envelope_extract(make_fgm(0.5), g);
    const auto r = envelope_bound(env, g);
    // eps(x) = (1 - |theta||1 - 2x|) / 2, each integral (1 - |theta|/2) / 2
    EXPECT_NEAR(r.extras.at("int_eps1"), 0.375, 2e-3);
    EXPECT_NEAR(r.extras.at("int_eps2"), 0.375, 2e-3);
    EXPECT_NEAR(r.value, 0.625, 2e-3);
    EXPECT_TRUE(r.satisfied);
    EXPECT_GE(r.value, rho1_estimate(assemble_operator(make_fgm(0.5), g)));
}

TEST(Envelope, Errors) {
    const Grid g = Grid::midpoint(32);
    EXPECT_THROW(envelope_bound([](double) { return -0.1; }, [](double) { return 0.1; }, g), InputError);
    EXPECT_THROW(envelope_bound([](double) { return 1.0; }, [](double) { return 1.0; }, g), InfeasibleEnvelopeError);
    const auto zero = envelope_bound([](double) { return 0.0; }, [](double) { return 0.0; }, g);
    EXPECT_FALSE(zero.satisfied);
    EXPECT_DOUBLE_EQ(zero.value, 1.0);
    EXPECT_THROW(envelope_bound(Envelope{{0.1}, {0.1}}, g), InputError);
}

TEST(Envelope, FrechetWithoutAbsolutelyContinuousPart) {
    const Grid g = Grid::midpoint(64);
    const auto r = envelope_bound(envelope_extract(make_frechet({0.6, 0.4}), g), g);
    EXPECT_FALSE(r.satisfied);
}

TEST(Table2, DefaultRowsGiveFourFifths) {
    for (const char* row : {"m1", "m2", "m3", "m4"}) {
        const auto r = table2_bound(table_spec(row, {}));
        EXPECT_NEAR(r.value, 0.8, 1e-12) << row;
        EXPECT_TRUE(r.satisfied);
    }
}

TEST(Table2, DominatesNumericRho) {
    const Grid g = Grid::midpoint(256);
    for (const char* row : {"m1", "m2", "m3", "m4"}) {
        const auto m = make_model(row, {2, 1}, g);
        const double rho = rho1_estimate(assemble_operator(m, g));
        EXPECT_LE(rho, table2_bound(table_spec(row, {2, 1})).value + 1e-3) << row;
    }
}

TEST(Table2, NotApplicableForOtherRows) {
    EXPECT_THROW(table2_bound(table_spec("t3_1", {0.5})), NotApplicableError);
}

TEST(Dmr, Sandwich) {
    const auto s = dmr_sandwich(0.9, 4);
    EXPECT_NEAR(s.printed_lower, std::pow(0.9, 5) / 5, 1e-15);
    EXPECT_NEAR(s.expectation_lower, std::pow(0.9, 4) / 5, 1e-15);
    EXPECT_NEAR(s.upper, 3 * std::pow(0.9, 3) / 3, 1e-15);
    EXPECT_DOUBLE_EQ(s.lower(), s.printed_lower);
    EXPECT_THROW(dmr_sandwich(0.0, 1), ParameterError);
    EXPECT_THROW(dmr_sandwich(0.5, 0), InputError);
}

TEST(BoundReport, JsonCarriesExtras) {
    const auto j = nlohmann::json::parse(theorem3_bound(make_fgm(0.2), Grid::midpoint(32)).to_json());
    EXPECT_EQ(j["name"], "theorem3");
    EXPECT_TRUE(j.contains("extras"));
}
