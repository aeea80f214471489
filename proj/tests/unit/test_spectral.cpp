#include <cmath>
#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>
#include <json.hpp>

#include "copmix/archimedean.hpp"
#include "copmix/error.hpp"
#include "copmix/families.hpp"
#include "copmix/registry.hpp"
#include "copmix/spectral.hpp"

using namespace copmix;

namespace {

const Grid& grid256() {
    static const Grid g = Grid::midpoint(256);
    return g;
}

}  // namespace

TEST(Operator, IndependenceIsZeroAfterCentering) {
    const auto op = assemble_operator(make_independence(), grid256());
    EXPECT_TRUE(op.symmetric);
    EXPECT_LE(op.stochastic_residual, 1e-12);
    EXPECT_NEAR(rho1_estimate(op), 0.0, 1e-12);
}

TEST(Operator, FgmRho1) {
    for (double t : {0.9, 0.5, -0.6}) {
        const auto op = assemble_operator(make_fgm(t), grid256());
        EXPECT_NEAR(rho1_estimate(op), std::abs(t) / 3, 1e-3) << t;
        EXPECT_LE(op.centering_residual, 1e-10);
    }
}

TEST(Operator, FrechetRho1IsAPlusB) {
    for (auto [a, b] : {std::pair{0.3, 0.2}, {0.0, 0.6}, {0.5, 0.0}, {0.1, 0.1}})
        EXPECT_NEAR(rho1_estimate(assemble_operator(make_frechet({a, b}), grid256())), a + b, 1e-10);
}

TEST(Operator, AppliesFlipAtom) {
    const auto op = assemble_operator(make_frechet({0.0, 1.0}), grid256());
    std::vector<double> f(grid256().size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = grid256().node(i);
    const auto g = op.apply_uncentered(f);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(g[i], 1 - grid256().node(i), 1e-12);
}

TEST(Operator, AsymmetricModelFlagged) {
    const auto m = make_model("t3_2", {0.5, 0.5}, grid256());
    const auto op = assemble_operator(m, grid256());
    EXPECT_FALSE(op.symmetric);
    EXPECT_THROW(spectral_decomposition(op), NotApplicableError);
    EXPECT_GE(rho1_estimate(op), 0.0);
}

TEST(Spectral, FgmLeadingEigenpair) {
    const Grid g = Grid::gauss_legendre(64);
    const auto d = spectral_decomposition(assemble_operator(make_fgm(0.9), g));
    ASSERT_FALSE(d.eigenvalues.empty());
    EXPECT_NEAR(d.eigenvalues[0], 0.3, 1e-10);
    if (d.eigenvalues.size() > 1) EXPECT_NEAR(d.eigenvalues[1], 0.0, 1e-10);
    // eigenfunction is sqrt(3)(1 - 2x) up to sign
    const auto& v = d.eigenfunctions[0];
    const double sign = v[0] > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(sign * v[i], std::sqrt(3.0) * (1 - 2 * g.node(i)), 1e-8);
}

TEST(Spectral, NegativeEigenvalueKeepsSign) {
    const auto d = spectral_decomposition(assemble_operator(make_fgm(-0.6), grid256()));
    EXPECT_NEAR(d.eigenvalues[0], -0.2, 1e-3);
}

TEST(Excess, FgmBetaAndPhi) {
    // beta_1 = integral of (c - 1)_+ = |theta| / 8, phi_1 = max row excess = |theta| / 4
    EXPECT_NEAR(beta_n(make_fgm(0.9), 1, grid256()), 0.1125, 1e-4);
    EXPECT_NEAR(phi_n(make_fgm(0.9), 1, grid256()), 0.225, 2e-3);
    EXPECT_THROW(beta_n(make_fgm(0.9), 0, grid256()), InputError);
}

TEST(Excess, FrechetExact) {
    for (int n = 1; n <= 4; ++n) {
        EXPECT_NEAR(beta_n(make_frechet({0.3, 0.2}), n, grid256()), std::pow(0.5, n), 1e-12);
        EXPECT_NEAR(phi_n(make_frechet({0.3, 0.2}), n, grid256()), std::pow(0.5, n), 1e-12);
    }
}

TEST(Excess, BetaNeverExceedsPhi) {
    for (const auto& m : {make_fgm(0.7), make_mh_copula(0.8), make_frechet({0.1, 0.4})})
        EXPECT_LE(beta_n(m, 2, grid256()), phi_n(m, 2, grid256()) + 1e-12) << m.label;
}

TEST(Witness, ComonotoneAndFlipAreFixed) {
    EXPECT_TRUE(no_mixing_witness(make_frechet({1.0, 0.0}), grid256()).is_fixed);
    EXPECT_TRUE(no_mixing_witness(make_frechet({0.0, 1.0}), grid256()).is_fixed);
    const auto w = no_mixing_witness(make_fgm(0.9), grid256());
    EXPECT_FALSE(w.is_fixed);
    EXPECT_GT(w.residual, 0.1);
}

TEST(Claim1, TailCorrectedSumDominatesRhoSquared) {
    for (const auto& m : {make_fgm(0.9), make_fgm(-0.6)}) {
        const double rho = rho1_estimate(assemble_operator(m, grid256()));
        const double s = claim1_basis_bound(m, grid256(), 16) + claim1_tail_bound(m, grid256(), 16);
        EXPECT_GE(s, rho * rho - 1e-6) << m.label;
    }
    EXPECT_THROW(claim1_basis_bound(make_frechet({0.3, 0.2}), grid256(), 4), NotApplicableError);
    EXPECT_THROW(claim1_basis_bound(make_fgm(0.5), grid256(), 0), InputError);
}

TEST(Report, FrechetSeriesAndOutputs) {
    const auto r = mixing_report(make_frechet({0.3, 0.2}), 3, grid256());
    ASSERT_EQ(r.beta.size(), 3u);
    for (int n = 0; n < 3; ++n) {
        EXPECT_NEAR(r.beta[n], std::pow(0.5, n + 1), 1e-12);
        EXPECT_NEAR(r.rho1_pow[n], std::pow(0.5, n + 1), 1e-10);
        EXPECT_NEAR(r.rho_k[n], r.rho1_pow[n], 1e-10);
    }
    const auto csv = r.to_csv();
    EXPECT_EQ(csv.rfind("n,beta_n,phi_n,rho1_pow_n\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
    const auto j = nlohmann::json::parse(r.to_json());
    EXPECT_EQ(j["beta_n"].size(), 3u);
    EXPECT_THROW(mixing_report(make_fgm(0.1), 0, grid256()), InputError);
}

TEST(Report, ArchimedeanOperatorIsStochastic) {
    const auto op = assemble_operator(make_archimedean(rational_generator(1.3)), grid256());
    EXPECT_LE(op.stochastic_residual, 5e-2);
    const double rho = rho1_estimate(op);
    EXPECT_GT(rho, 0.0);
    EXPECT_LT(rho, 1.0);
}
