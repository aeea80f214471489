#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "copmix/grid.hpp"

namespace copmix {

using Density = std::function<double(double, double)>;
using Curve = std::function<double(double)>;

/// State-dependent weight of an atomic map. Constant weights stay constant
/// under products, sums and composition, which keeps the Frechet atom algebra
/// exact instead of routing it through quadrature.
class AtomWeight {
public:
    static AtomWeight constant(double value);
    static AtomWeight function(Curve f);

    [[nodiscard]] double operator()(double x) const { return constant_ ? *constant_ : fn_(x); }
    [[nodiscard]] const std::optional<double>& constant_value() const noexcept { return constant_; }

    /// x -> w(inner(x)).
    [[nodiscard]] AtomWeight after(const Curve& inner) const;

    friend AtomWeight operator*(const AtomWeight& a, const AtomWeight& b);
    friend AtomWeight operator+(const AtomWeight& a, const AtomWeight& b);

private:
    AtomWeight() = default;
    std::optional<double> constant_;
    Curve fn_;
};

enum class MapKind {
    Identity,  ///< y = x
    Flip,      ///< y = 1 - x
    Curve,     ///< y = m(x) for a decreasing involution m (Archimedean boundary)
};

/// Kind of `second o first`. Only identity and flip compose.
MapKind compose(MapKind first, MapKind second);

/// Singular part of a copula concentrated on the graph of a map: given X = x
/// the next state jumps to map(x) with probability weight(x).
struct AtomicMap {
    MapKind kind = MapKind::Identity;
    AtomWeight weight = AtomWeight::constant(0.0);
    Curve curve;          ///< the map, only for MapKind::Curve
    Curve column_weight;  ///< density in y of the mass arriving at y, only for MapKind::Curve

    static AtomicMap identity(AtomWeight w);
    static AtomicMap flip(AtomWeight w);
    static AtomicMap involution(Curve map, AtomWeight w, Curve column_weight);

    [[nodiscard]] double apply(double x) const;
    /// Density (w.r.t. Lebesgue in y) of the atom mass landing at y.
    [[nodiscard]] double arriving(double y) const;
};

/// Parameters that rebuild a model through the family registry.
struct FamilySpec {
    std::string name;
    std::vector<double> params;
    std::vector<FamilySpec> operands;
};

/// A bivariate copula with uniform marginals, stored as the density of its
/// absolutely continuous part plus identity/flip (or boundary-curve) atoms.
///
/// Optional closed forms (`cdf`, `ac_partial`, `ac_quantile`) are used when
/// present; otherwise they are reconstructed by quadrature.
struct CopulaModel {
    std::string label;
    Density density;
    std::vector<AtomicMap> atoms;
    std::optional<Density> density_dy;
    Density cdf;          ///< C(u, v)
    Density ac_partial;   ///< (x, v) -> integral of density(x, t) over t in [0, v]
    Density ac_quantile;  ///< (x, m) -> v with ac_partial(x, v) = m
    std::optional<FamilySpec> family;

    [[nodiscard]] double atom_mass(double x) const;
    [[nodiscard]] bool has_atoms() const noexcept { return !atoms.empty(); }
};

struct Violation {
    std::string check;
    double x = 0.0;
    double y = 0.0;
    double magnitude = 0.0;
};

struct ValidationReport {
    bool grounded_ok = true;
    bool margins_ok = true;
    bool two_increasing_ok = true;
    double worst_violation = 0.0;
    double tolerance = 0.0;
    std::vector<Violation> details;  ///< the largest violations, capped

    [[nodiscard]] bool ok() const noexcept { return grounded_ok && margins_ok && two_increasing_ok; }
};

inline constexpr std::uint64_t kDefaultValidationSeed = 0x5eed'c0b1'a5ULL;

/// Checks the copula axioms on `grid`: groundedness, uniform margins (both of
/// the CDF and of the density/atom masses) and the rectangle inequality on
/// `rectangles` seeded random rectangles plus a node scan of the density.
ValidationReport validate_copula(const CopulaModel& model, const Grid& grid, double tol,
                                 std::uint64_t seed = kDefaultValidationSeed,
                                 std::size_t rectangles = 1000);

/// Integral of the density over [0, v] at fixed x.
double ac_conditional(const CopulaModel& model, double x, double v);

/// P(X1 <= v | X0 = x). Atoms at map(x) == v count as <= v.
double conditional_cdf(const CopulaModel& model, double x, double v);

/// C(u, v) by quadrature of the conditional CDF in x.
double reconstructed_cdf(const CopulaModel& model, const Grid& grid, double u, double v);

/// Density sampled on the tensor grid, row-major (row = x index).
std::vector<double> density_table(const CopulaModel& model, const Grid& grid);

/// Model whose density is given by a table on `grid`, bilinearly interpolated
/// between nodes.
CopulaModel tabulated_model(const Grid& grid, std::vector<double> table,
                            std::vector<AtomicMap> atoms, std::string label);

/// Copula of (X0, X2) when (X0, X1) ~ a and (X1, X2) ~ b.
CopulaModel fold(const CopulaModel& a, const CopulaModel& b, const Grid& grid);

/// n-fold product of `model` with itself. n = 1 returns the model unchanged.
CopulaModel n_step(const CopulaModel& model, int n, const Grid& grid);

/// The 0-step copula M as a pure identity atom.
CopulaModel comonotone_model();

}  // namespace copmix
