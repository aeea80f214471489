#pragma once

#include <map>
#include <string>
#include <vector>

#include "copmix/copula.hpp"
#include "copmix/families.hpp"

namespace copmix {

struct BoundReport {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool satisfied = false;  ///< value < threshold
    std::map<std::string, double> inputs;
    std::map<std::string, double> extras;

    [[nodiscard]] std::string to_json() const;
};

/// k1 = ||int |c_y| dy||^2, k2 = || |c(x,1) - c(x,0)| + int |c_y| dy ||^2;
/// value k1 + k2 against 12, rho1 bound sqrt((k1 + k2) / 12) in extras.
BoundReport theorem3_bound(const CopulaModel& model, const Grid& grid);

/// Node samples of a lower envelope c(x, y) >= eps1(x) + eps2(y).
struct Envelope {
    std::vector<double> eps1;
    std::vector<double> eps2;
};

/// rho1 <= 1 - (int eps1 + int eps2) / 2.
BoundReport envelope_bound(const Curve& eps1, const Curve& eps2, const Grid& grid);
BoundReport envelope_bound(const Envelope& env, const Grid& grid);

/// Half the row minimum and half the column minimum of the density on the grid.
Envelope envelope_extract(const CopulaModel& model, const Grid& grid);

/// The envelope built into the m1..m4 constructions (eps1 from g, eps2 from h).
std::pair<Curve, Curve> table_envelope(const TableDensitySpec& spec);

/// Closed-form rho1 bound for rows m1..m4.
BoundReport table2_bound(const TableDensitySpec& spec);

struct DmrSandwich {
    double printed_lower = 0.0;      ///< a^(n+1) / (n+1)
    double expectation_lower = 0.0;  ///< E(p^n) = a^n / (n+1) under the uniform law
    double upper = 0.0;              ///< 3 a^(m+1) / (m+1), m = floor(n/2)

    [[nodiscard]] double lower() const noexcept { return std::min(printed_lower, expectation_lower); }
};

/// beta_n sandwich for the chain with stay probability a|x| on [-1, 1].
DmrSandwich dmr_sandwich(double a, int n);

}  // namespace copmix
