#pragma once

#include <string>
#include <vector>

#include "copmix/copula.hpp"

namespace copmix {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// Lyapunov function L, small-set candidate S and constants for the drift test
/// r E[L(X1) | X0 = x] <= L(x) - gamma off S, and int_{S^c} L dP(x, .) < K on S.
struct DriftSpec {
    Curve L;
    Interval S;
    double r = 1.0;
    double gamma = 0.0;
    double K = 0.0;
};

/// Throws InputError when r <= 1, gamma <= 0, K <= 0, L < 0 somewhere on the
/// grid, or L is not bounded away from 0 and infinity on S.
void validate_drift_spec(const DriftSpec& spec, const Grid& grid);

struct DriftReport {
    bool drift_ok = false;        ///< first condition at every grid node outside S
    double drift_worst_slack = 0.0;  ///< min of L(x) - gamma - r E[L | x]
    double drift_worst_x = 0.0;
    bool bound_ok = false;        ///< second condition at every grid node in S
    double bound_worst_slack = 0.0;  ///< min of K - int_{S^c} L dP(x, .)
    double bound_worst_x = 0.0;
    double tolerance = 0.0;

    [[nodiscard]] bool ok() const noexcept { return drift_ok && bound_ok; }
    [[nodiscard]] std::string to_json() const;
};

inline constexpr double kDriftTolerance = 1e-12;

/// E[L(X1) | X0 = x] on the grid: atoms at their exact images plus quadrature.
std::vector<double> conditional_expectation(const CopulaModel& model, const Curve& L, const Grid& grid);

DriftReport drift_check(const CopulaModel& model, const DriftSpec& spec, const Grid& grid,
                        double tol = kDriftTolerance);

/// L = 1 on [1/2, 1] and 2 below, S = [1/2, 1], r = 4/(a+3), gamma = b/(a+3),
/// K = sup over S of int_{S^c} L dP(x, .) plus 1 computed on the grid.
DriftSpec frechet_drift_spec(double a, double b, const Grid& grid);

struct MinorizationCertificate {
    Interval S;
    double q = 0.0;
    int n = 1;
    /// min over x in S and unions of grid cells A of P^n(x, A) - q mu(A).
    double worst_margin = 0.0;
    /// same minimum restricted to single grid intervals A.
    double interval_margin = 0.0;
    double worst_x = 0.0;
    double tolerance = 0.0;

    [[nodiscard]] bool valid() const noexcept { return worst_margin >= -tolerance; }
    [[nodiscard]] std::string to_json() const;
};

/// Doeblin check P^n(x, A) >= q mu(A) for x in S with mu Lebesgue measure.
MinorizationCertificate minorization_check(const CopulaModel& model, Interval S, double q,
                                           const Grid& grid, int n = 1,
                                           double tol = kDriftTolerance);

/// P^n(x_i, A) - q mu(A) for the union A of the listed cells (helper for spot checks).
double minorization_margin(const CopulaModel& model, std::size_t row, const std::vector<std::size_t>& cells,
                           double q, const Grid& grid);

}  // namespace copmix
