#include <cmath>

#include <gtest/gtest.h>

#include "copmix/copula.hpp"
#include "copmix/error.hpp"
#include "copmix/families.hpp"

using namespace copmix;

namespace {

const Grid& grid64() {
    static const Grid g = Grid::midpoint(64);
    return g;
}

}  // namespace

TEST(AtomWeight, ConstantsStayConstant) {
    const auto a = AtomWeight::constant(0.3), b = AtomWeight::constant(0.5);
    ASSERT_TRUE((a * b).constant_value());
    EXPECT_DOUBLE_EQ(*(a * b).constant_value(), 0.15);
    EXPECT_DOUBLE_EQ(*(a + b).constant_value(), 0.8);
    EXPECT_TRUE(a.after([](double x) { return 1 - x; }).constant_value());
    const auto f = AtomWeight::function([](double x) { return x; });
    EXPECT_FALSE((f * a).constant_value());
    EXPECT_DOUBLE_EQ((f * a)(0.5), 0.15);
    EXPECT_DOUBLE_EQ(f.after([](double x) { return 1 - x; })(0.25), 0.75);
}

TEST(MapKind, Composition) {
    EXPECT_EQ(compose(MapKind::Identity, MapKind::Flip), MapKind::Flip);
    EXPECT_EQ(compose(MapKind::Flip, MapKind::Flip), MapKind::Identity);
    EXPECT_EQ(compose(MapKind::Identity, MapKind::Identity), MapKind::Identity);
    EXPECT_THROW(compose(MapKind::Curve, MapKind::Identity), UnsupportedError);
}

TEST(Validate, IndependencePasses) {
    const auto r = validate_copula(make_independence(), grid64(), grid64().tolerance());
    EXPECT_TRUE(r.ok());
    EXPECT_LE(r.worst_violation, 1e-12);
}

TEST(Validate, NonCopulaDensityFailsMargins) {
    CopulaModel m;
    m.label = "twice";
    m.density = [](double, double) { return 2.0; };
    const auto r = validate_copula(m, grid64(), grid64().tolerance());
    EXPECT_FALSE(r.ok());
    EXPECT_FALSE(r.margins_ok);
    EXPECT_FALSE(r.details.empty());
}

TEST(Validate, NegativeDensityFailsRectangleInequality) {
    CopulaModel m;
    m.label = "signed";
    m.density = [](double x, double y) { return 1.0 + 3.0 * (1 - 2 * x) * (1 - 2 * y); };
    const auto r = validate_copula(m, grid64(), grid64().tolerance());
    EXPECT_FALSE(r.two_increasing_ok);
}

TEST(Validate, NonFiniteDensityIsNumericError) {
    CopulaModel m;
    m.label = "nan";
    m.density = [](double, double) { return std::nan(""); };
    EXPECT_THROW(validate_copula(m, grid64(), 0.1), NumericError);
    EXPECT_THROW(density_table(m, grid64()), NumericError);
}

TEST(Conditional, FgmMatchesClosedForm) {
    const double t = 0.7;
    const auto m = make_fgm(t);
    for (double x : {0.1, 0.5, 0.8})
        for (double v : {0.0, 0.3, 1.0}) {
            const double expected = v + t * (1 - 2 * x) * (v - v * v);
            EXPECT_NEAR(conditional_cdf(m, x, v), expected, 1e-14);
        }
    EXPECT_THROW(conditional_cdf(m, 1.5, 0.2), InputError);
}

TEST(Conditional, RightContinuousAtAtoms) {
    const auto m = make_frechet({0.3, 0.2});
    const double x = 0.25;
    // identity atom at 0.25 and flip atom at 0.75
    EXPECT_NEAR(conditional_cdf(m, x, 0.25), 0.5 * 0.25 + 0.3, 1e-14);
    EXPECT_NEAR(conditional_cdf(m, x, 0.2499999), 0.5 * 0.2499999, 1e-12);
    EXPECT_NEAR(conditional_cdf(m, x, 1.0), 1.0, 1e-14);
}

TEST(Conditional, QuadratureFallbackWithoutPartial) {
    auto m = make_fgm(0.4);
    m.ac_partial = nullptr;
    EXPECT_NEAR(ac_conditional(m, 0.2, 0.6), 0.6 + 0.4 * 0.6 * (0.6 - 0.36), 1e-12);
}

TEST(ReconstructedCdf, MatchesClosedForms) {
    const Grid g = Grid::midpoint(256);
    for (const auto& m : {make_fgm(0.9), make_frechet({0.3, 0.2}), make_mh_copula(0.5)})
        for (double u : {0.1, 0.37, 0.5, 0.9})
            for (double v : {0.2, 0.5, 0.75})
                EXPECT_NEAR(reconstructed_cdf(m, g, u, v), m.cdf(u, v), 5e-3) << m.label << ' ' << u << ' ' << v;
}

TEST(Fold, IndependenceAbsorbs) {
    const auto p = make_independence();
    for (const auto& m : {make_fgm(0.8), make_frechet({0.3, 0.2}), make_mh_copula(0.7)}) {
        for (const auto& f : {fold(p, m, grid64()), fold(m, p, grid64())}) {
            EXPECT_FALSE(f.has_atoms());
            for (double c : density_table(f, grid64())) EXPECT_NEAR(c, 1.0, 1e-12);
        }
    }
}

TEST(Fold, ComonotoneIsIdentity) {
    const auto m = make_fgm(0.6);
    const auto f = fold(comonotone_model(), m, grid64());
    const auto a = density_table(f, grid64()), b = density_table(m, grid64());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-14);
}

TEST(Fold, FgmProductScalesKernel) {
    // (1 + s(1-2x)(1-2y)) * (1 + t(1-2x)(1-2y)) = 1 + (s t / 3)(1-2x)(1-2y)
    const Grid g = Grid::gauss_legendre(32);
    const auto f = fold(make_fgm(0.9), make_fgm(-0.6), g);
    for (std::size_t i = 0; i < g.size(); i += 5)
        for (std::size_t j = 0; j < g.size(); j += 7) {
            const double x = g.node(i), y = g.node(j);
            EXPECT_NEAR(f.density(x, y), 1 + (0.9 * -0.6 / 3) * (1 - 2 * x) * (1 - 2 * y), 1e-13);
        }
}

TEST(Fold, FrechetAtomAlgebra) {
    const auto f = fold(make_frechet({0.3, 0.2}), make_frechet({0.1, 0.4}), grid64());
    double id = 0, fl = 0;
    for (const auto& a : f.atoms) {
        ASSERT_TRUE(a.weight.constant_value());
        (a.kind == MapKind::Identity ? id : fl) += *a.weight.constant_value();
    }
    EXPECT_NEAR(id, 0.3 * 0.1 + 0.2 * 0.4, 1e-15);
    EXPECT_NEAR(fl, 0.3 * 0.4 + 0.2 * 0.1, 1e-15);
    for (double c : density_table(f, grid64())) EXPECT_NEAR(c, 1 - 0.11 - 0.14, 1e-12);
}

TEST(Fold, StateDependentAtomsCompose) {
    // MH atom weight p(u) composed with itself stays on the diagonal with weight p(u)^2
    const auto m = make_mh_copula(0.6);
    const auto f = fold(m, m, grid64());
    ASSERT_EQ(f.atoms.size(), 1u);
    EXPECT_EQ(f.atoms[0].kind, MapKind::Identity);
    for (double x : {0.1, 0.5, 0.9}) {
        const double p = 0.6 * std::abs(2 * x - 1);
        EXPECT_NEAR(f.atoms[0].weight(x), p * p, 1e-14);
    }
    const auto r = validate_copula(f, grid64(), grid64().tolerance());
    EXPECT_TRUE(r.ok()) << r.worst_violation;
}

TEST(NStep, RejectsBadCountAndKeepsOne) {
    const auto m = make_fgm(0.5);
    EXPECT_THROW(n_step(m, 0, grid64()), InputError);
    EXPECT_EQ(n_step(m, 1, grid64()).label, m.label);
    const auto four = n_step(m, 4, grid64());
    ASSERT_TRUE(four.family);
    EXPECT_EQ(four.family->name, "n_step");
}

TEST(Tabulated, InterpolatesAndInverts) {
    const Grid g = Grid::midpoint(32);
    const auto m = tabulated_model(g, density_table(make_fgm(0.5), g), {}, "tab");
    EXPECT_NEAR(m.density(g.node(3), g.node(7)), make_fgm(0.5).density(g.node(3), g.node(7)), 1e-14);
    const double x = g.node(10);
    for (double mass : {0.1, 0.5, 0.9}) EXPECT_NEAR(m.ac_partial(x, m.ac_quantile(x, mass)), mass, 1e-10);
}
