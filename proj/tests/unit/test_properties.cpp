// Randomized and structural invariants that cut across modules.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "copmix/bounds.hpp"
#include "copmix/ergodicity.hpp"
#include "copmix/families.hpp"
#include "copmix/registry.hpp"
#include "copmix/spectral.hpp"

using namespace copmix;

namespace {

const Grid& grid128() {
    static const Grid g = Grid::midpoint(128);
    return g;
}

}  // namespace

TEST(Properties, NStepRhoIsPowerOfLeadingEigenvalue) {
    for (double t : {0.9, -0.6, 0.3})
        for (int k = 1; k <= 4; ++k) {
            const auto m = n_step(make_fgm(t), k, grid128());
            EXPECT_NEAR(rho1_estimate(assemble_operator(m, grid128())), std::pow(std::abs(t) / 3, k), 1e-3)
                << t << ' ' << k;
        }
}

TEST(Properties, BetaBoundedBySpectralSum) {
    for (const auto& m : {make_fgm(0.8), make_model("m1", {}, grid128())}) {
        const auto d = spectral_decomposition(assemble_operator(m, grid128()));
        for (int k = 1; k <= 3; ++k) {
            double s = 0.0;
            for (double l : d.eigenvalues) s += std::pow(std::abs(l), k);
            EXPECT_LE(beta_n(m, k, grid128()), s + 1e-3) << m.label << ' ' << k;
        }
    }
}

TEST(Properties, RhoIsSubmultiplicative) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = make_fgm(u(rng)), b = make_fgm(u(rng));
        const double ra = rho1_estimate(assemble_operator(a, grid128()));
        const double rb = rho1_estimate(assemble_operator(b, grid128()));
        const double rab = rho1_estimate(assemble_operator(fold(a, b, grid128()), grid128()));
        EXPECT_LE(rab, ra * rb + 1e-9);
    }
}

TEST(Properties, CoefficientsInRange) {
    for (const auto& info : builtin_families()) {
        if (info.name == "example2" || info.name == "example3" || info.name.rfind("t3_", 0) == 0) continue;
        std::vector<double> p;
        if (info.name == "fgm" || info.name == "mardia") p = {-0.7};
        if (info.name == "frechet") p = {0.2, 0.5};
        if (info.name == "mh") p = {0.9};
        const auto m = make_model(info.name, p, grid128());
        const double rho = rho1_estimate(assemble_operator(m, grid128()));
        const double b = beta_n(m, 1, grid128()), f = phi_n(m, 1, grid128());
        EXPECT_GE(rho, -1e-12) << info.name;
        EXPECT_LE(rho, 1 + 1e-9) << info.name;
        EXPECT_GE(b, -1e-12) << info.name;
        EXPECT_LE(b, f + 1e-12) << info.name;
        EXPECT_LE(f, 1 + 1e-9) << info.name;
    }
}

TEST(Properties, IndependenceAbsorbsEverything) {
    const auto p = make_independence();
    for (const auto& m : {make_fgm(0.5), make_frechet({0.4, 0.4}), make_mh_copula(1.0)}) {
        EXPECT_NEAR(rho1_estimate(assemble_operator(fold(m, p, grid128()), grid128())), 0.0, 1e-10);
        EXPECT_NEAR(beta_n(fold(p, m, grid128()), 1, grid128()), 0.0, 1e-10);
    }
}

TEST(Properties, BoundsDominateNumericRho) {
    const Grid g = Grid::gauss_legendre(96);
    for (int i = -5; i <= 5; ++i) {
        const double t = 0.19 * i;
        const auto m = make_fgm(t);
        const double rho = rho1_estimate(assemble_operator(m, g));
        EXPECT_LE(rho, theorem3_bound(m, g).extras.at("rho1_bound") + 1e-9) << t;
        EXPECT_LE(rho, envelope_bound(envelope_extract(m, g), g).value + 1e-2) << t;
    }
    for (double a : {0.0, 0.2, 0.4})
        for (double b : {0.1, 0.3}) {
            const auto m = make_frechet({a, b});
            const double rho = rho1_estimate(assemble_operator(m, grid128()));
            EXPECT_LE(rho, envelope_bound(envelope_extract(m, grid128()), grid128()).value + 1e-9);
        }
}

TEST(Properties, EnvelopeInequalityOnRandomFunctions) {
    // |<Q f, h>| <= bound ||f|| ||h|| for centered f, h
    const auto& g = grid128();
    const auto m = make_fgm(0.5);
    const auto op = assemble_operator(m, g);
    const double bound = envelope_bound(envelope_extract(m, g), g).value;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> f(g.size()), h(g.size());
        double mf = 0, mh = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            f[i] = z(rng);
            h[i] = z(rng);
            mf += g.weight(i) * f[i];
            mh += g.weight(i) * h[i];
        }
        double nf = 0, nh = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            f[i] -= mf;
            h[i] -= mh;
            nf += g.weight(i) * f[i] * f[i];
            nh += g.weight(i) * h[i] * h[i];
        }
        const auto qf = op.apply_uncentered(f);
        double ip = 0;
        for (std::size_t i = 0; i < g.size(); ++i) ip += g.weight(i) * qf[i] * h[i];
        EXPECT_LE(std::abs(ip), bound * std::sqrt(nf * nh) + 1e-9);
    }
}

TEST(Properties, DriftHoldsOnLattice) {
    for (double a : {0.0, 0.2, 0.4, 0.6})
        for (double b : {0.01, 0.1, 0.2, 0.3, 0.35}) {
            if (a + b >= 1) continue;
            const auto spec = frechet_drift_spec(a, b, grid128());
            EXPECT_TRUE(drift_check(make_frechet({a, b}), spec, grid128()).ok()) << a << ' ' << b;
        }
}
