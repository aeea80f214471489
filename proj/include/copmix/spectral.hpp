#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "copmix/copula.hpp"

namespace copmix {

/// Discretized transfer operator T f(x) = integral of f(y) c(x, y) dy plus atoms,
/// in the sqrt(w)-weighted basis, with the mean projection removed:
/// M_ij = sqrt(w_i) (c(x_i, x_j) - 1) sqrt(w_j) + atom terms.
///
/// The weighting makes the Euclidean norm of M equal the discretized L2
/// operator norm on mean-zero functions.
struct TransferOperator {
    Eigen::MatrixXd matrix;
    Grid grid;
    bool symmetric = false;
    std::vector<double> row_mass;     ///< uncentered row integrals, ideally 1
    double stochastic_residual = 0.0;  ///< max |row_mass - 1|
    double centering_residual = 0.0;   ///< L2 norm of the centered operator applied to 1

    /// Uncentered operator applied to samples of f on the nodes.
    [[nodiscard]] std::vector<double> apply_uncentered(const std::vector<double>& f) const;
    /// Centered operator applied to samples of f on the nodes.
    [[nodiscard]] std::vector<double> apply_centered(const std::vector<double>& f) const;
};

inline constexpr double kSymmetryThreshold = 1e-10;

TransferOperator assemble_operator(const CopulaModel& model, const Grid& grid);

/// Largest singular value of the centered operator. Uses a full eigen/singular
/// value decomposition up to N = 1024 and power iteration on M^T M above.
double rho1_estimate(const TransferOperator& op);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;                 ///< signed, descending by magnitude
    std::vector<std::vector<double>> eigenfunctions;  ///< node samples, orthonormal in the grid inner product
};

SpectralDecomposition spectral_decomposition(const TransferOperator& op);

/// Per-node value of sup_B |P^n(x, B) - mu(B)|: the positive part of
/// c(x, .) - 1 integrated in y plus the atom mass at x.
std::vector<double> excess_mass_profile(const CopulaModel& model, const Grid& grid);

double beta_n(const CopulaModel& model, int n, const Grid& grid);
double phi_n(const CopulaModel& model, int n, const Grid& grid);

struct WitnessResult {
    bool is_fixed = false;
    double residual = 0.0;  ///< ||Q f - f||_2 for f(x) = cos(2 pi x)
};

WitnessResult no_mixing_witness(const CopulaModel& model, const Grid& grid);

/// Sum over the first n_terms Fourier pairs sqrt(2) sin, sqrt(2) cos of
/// ||T e||^2. Needs a model without atoms.
double claim1_basis_bound(const CopulaModel& model, const Grid& grid, int n_terms);

/// Upper bound on the Fourier tail beyond n_terms, (k1 + k2) / (2 pi^2 n_terms),
/// from integrating by parts once in y. Needs density_dy.
double claim1_tail_bound(const CopulaModel& model, const Grid& grid, int n_terms);

struct NamedBound {
    std::string name;
    double value = 0.0;
    bool satisfied = false;
};

struct MixingReport {
    std::string label;
    double rho1 = 0.0;
    std::vector<double> rho_k;       ///< rho_1 of the k-step copula, k = 1..nmax
    std::vector<double> beta;        ///< beta_n, n = 1..nmax
    std::vector<double> phi;         ///< phi_n, n = 1..nmax
    std::vector<double> rho1_pow;    ///< rho1^n
    std::vector<NamedBound> certified_bounds;
    std::vector<std::string> notes;

    [[nodiscard]] std::string to_json() const;
    /// Columns n, beta_n, phi_n, rho1_pow_n.
    [[nodiscard]] std::string to_csv() const;
};

MixingReport mixing_report(const CopulaModel& model, int nmax, const Grid& grid);

}  // namespace copmix
