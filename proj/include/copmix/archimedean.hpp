#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "copmix/copula.hpp"

namespace copmix {

/// Archimedean generator bundle. Derivatives are closed forms supplied by the
/// caller; nothing here differentiates numerically.
struct Generator {
    std::string label;
    Curve phi;
    Curve dphi;
    Curve d2phi;
    Curve phi_inv;  ///< inverse of phi on [0, phi(0)]
    bool strict = false;

    [[nodiscard]] double phi0() const { return phi(0.0); }
    [[nodiscard]] bool standardized(double tol = 1e-10) const;
};

struct GeneratorCheck {
    bool ok = true;
    double worst = 0.0;
    std::vector<std::string> problems;
};

/// phi(1) = 0, phi' <= 0, phi'' >= 0 on the grid, and for standardized
/// non-strict generators phi(0) = 1 and phi_inv(phi(x)) = x.
GeneratorCheck check_generator(const Generator& gen, const Grid& grid);

/// Scales a non-strict generator so that phi(0) = 1.
Generator standardize(const Generator& gen);

/// Mass the non-strict copula puts on the curve phi(u) + phi(v) = phi(0);
/// equals -phi(0) / phi'(0).
double boundary_mass(const Generator& gen);

/// Archimedean copula model. Non-strict generators get a boundary-curve atom
/// carrying `boundary_mass(gen)`; a generator whose copula is entirely singular
/// (W) is rejected.
CopulaModel make_archimedean(const Generator& gen);

struct HMaxResult {
    double value = 0.0;       ///< max of |phi'' o phi_inv| over [x, 1]
    double signed_max = 0.0;  ///< max of phi'' o phi_inv over [x, 1]
    double signed_min = 0.0;  ///< min of phi'' o phi_inv over [x, 1]
    std::optional<double> shortcut;  ///< value from the monotone shortcut when phi'' is monotone
};

HMaxResult h_max(const Generator& gen, double x, const Grid& grid);

/// Integral over [0,1] of (1-x) (h(x) / (phi' o phi_inv(x))^2)^2.
double theorem4_integral(const Generator& gen, const Grid& grid);

struct IntegralCriterionReport {
    double integral = 0.0;
    bool certified = false;  ///< integral < 1: exponential rho-mixing
    double rho1_bound = 0.0;  ///< sqrt(integral)
    /// The cheaper sufficient test, integral of h^2 (1-x) < phi'(1)^4, when phi'(1) != 0.
    std::optional<double> sufficient_lhs;
    std::optional<double> sufficient_rhs;
};

IntegralCriterionReport theorem4_report(const Generator& gen, const Grid& grid);

using GeneratorFamily = std::function<Generator(double)>;

/// Bisection root of theorem4_integral(family(theta)) = 1 inside [lo, hi].
double theorem4_critical_parameter(const GeneratorFamily& family, double lo, double hi,
                                   double tol, const Grid& grid);

/// phi(u) = -ln(theta u + 1 - theta), theta in (0,1); not standardized.
Generator log_generator(double theta);
/// phi(x) = (1-x) / (1 + (theta-1) x), theta >= 1; self-inverse, standard.
Generator rational_generator(double theta);
/// phi(u) = 1 - u: the generator of W.
Generator lower_bound_generator();
/// phi(u) = -ln u: the generator of P.
Generator independence_generator();

/// "example2" (standardized log generator) or "example3" (rational generator).
GeneratorFamily builtin_generator_family(std::string_view name);

}  // namespace copmix
