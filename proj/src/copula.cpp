#include "copmix/copula.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

#include "copmix/error.hpp"
#include "copmix/rng.hpp"

namespace copmix {

// ---------------------------------------------------------------------------
// AtomWeight / AtomicMap
// ---------------------------------------------------------------------------

AtomWeight AtomWeight::constant(double value) {
    AtomWeight w;
    w.constant_ = value;
    return w;
}

AtomWeight AtomWeight::function(Curve f) {
    if (!f) throw InputError("atom weight function is empty");
    AtomWeight w;
    w.fn_ = std::move(f);
    return w;
}

AtomWeight AtomWeight::after(const Curve& inner) const {
    if (constant_) return *this;
    return function([f = fn_, inner](double x) { return f(inner(x)); });
}

AtomWeight operator*(const AtomWeight& a, const AtomWeight& b) {
    if (a.constant_ && b.constant_) return AtomWeight::constant(*a.constant_ * *b.constant_);
    return AtomWeight::function([a, b](double x) { return a(x) * b(x); });
}

AtomWeight operator+(const AtomWeight& a, const AtomWeight& b) {
    if (a.constant_ && b.constant_) return AtomWeight::constant(*a.constant_ + *b.constant_);
    return AtomWeight::function([a, b](double x) { return a(x) + b(x); });
}

MapKind compose(MapKind first, MapKind second) {
    if (first == MapKind::Curve || second == MapKind::Curve)
        throw UnsupportedError("composition of boundary-curve atoms is not supported");
    return first == second ? MapKind::Identity : MapKind::Flip;
}

AtomicMap AtomicMap::identity(AtomWeight w) {
    AtomicMap m;
    m.kind = MapKind::Identity;
    m.weight = std::move(w);
    return m;
}

AtomicMap AtomicMap::flip(AtomWeight w) {
    AtomicMap m;
    m.kind = MapKind::Flip;
    m.weight = std::move(w);
    return m;
}

AtomicMap AtomicMap::involution(Curve map, AtomWeight w, Curve column_weight) {
    if (!map || !column_weight) throw InputError("curve atom needs a map and a column weight");
    AtomicMap m;
    m.kind = MapKind::Curve;
    m.weight = std::move(w);
    m.curve = std::move(map);
    m.column_weight = std::move(column_weight);
    return m;
}

double AtomicMap::apply(double x) const {
    switch (kind) {
        case MapKind::Identity: return x;
        case MapKind::Flip: return 1.0 - x;
        case MapKind::Curve: return curve(x);
    }
    return x;
}

double AtomicMap::arriving(double y) const {
    switch (kind) {
        case MapKind::Identity: return weight(y);
        case MapKind::Flip: return weight(1.0 - y);
        case MapKind::Curve: return column_weight(y);
    }
    return 0.0;
}

double CopulaModel::atom_mass(double x) const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight(x);
    return s;
}

// ---------------------------------------------------------------------------
// Conditional distribution
// ---------------------------------------------------------------------------

namespace {

void check_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << what << " = " << v << " is outside [0,1]";
        throw InputError(os.str());
    }
}

void require_density(const CopulaModel& model) {
    if (!model.density) throw InputError("model '" + model.label + "' has no evaluable density");
}

// Composite Gauss-Legendre on [0, v]; fallback when no closed form is given.
double integrate_row(const Density& c, double x, double v) {
    if (v <= 0.0) return 0.0;
    static const auto rule = [] {
        std::pair<std::vector<double>, std::vector<double>> r;
        gauss_legendre_rule(6, 0.0, 1.0, r.first, r.second);
        return r;
    }();
    constexpr int panels = 96;
    const double h = v / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = p * h;
        for (std::size_t k = 0; k < rule.first.size(); ++k)
            s += rule.second[k] * h * c(x, lo + rule.first[k] * h);
    }
    return s;
}

}  // namespace

double ac_conditional(const CopulaModel& model, double x, double v) {
    check_unit(x, "x");
    check_unit(v, "v");
    if (model.ac_partial) return model.ac_partial(x, v);
    require_density(model);
    return integrate_row(model.density, x, v);
}

double conditional_cdf(const CopulaModel& model, double x, double v) {
    double s = ac_conditional(model, x, v);
    for (const auto& a : model.atoms)
        if (a.apply(x) <= v) s += a.weight(x);
    return s;
}

double reconstructed_cdf(const CopulaModel& model, const Grid& grid, double u, double v) {
    check_unit(u, "u");
    check_unit(v, "v");
    const auto edges = grid.edges();
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size() && edges[i] < u; ++i) {
        const double overlap = std::min(u, edges[i + 1]) - edges[i];
        // Partial last cell: evaluate at the midpoint of the covered piece.
        const double x = overlap < grid.weight(i) ? edges[i] + 0.5 * overlap : grid.node(i);
        s += overlap * conditional_cdf(model, x, v);
    }
    return s;
}

std::vector<double> density_table(const CopulaModel& model, const Grid& grid) {
    require_density(model);
    const std::size_t n = grid.size();
    std::vector<double> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.node(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double c = model.density(x, grid.node(j));
            if (!std::isfinite(c)) {
                std::ostringstream os;
                os << "density of '" << model.label << "' is not finite at (" << x << ", "
                   << grid.node(j) << ")";
                throw NumericError(os.str());
            }
            table[i * n + j] = c;
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

class ViolationLog {
public:
    explicit ViolationLog(double tol) : tol_(tol) {}

    // Returns true when the magnitude is within tolerance.
    bool record(const char* check, double x, double y, double magnitude) {
        worst_ = std::max(worst_, magnitude);
        if (magnitude <= tol_) return true;
        details_.push_back({check, x, y, magnitude});
        return false;
    }

    void finish(ValidationReport& r) {
        std::sort(details_.begin(), details_.end(),
                  [](const Violation& a, const Violation& b) { return a.magnitude > b.magnitude; });
        if (details_.size() > kMaxDetails) details_.resize(kMaxDetails);
        r.details = std::move(details_);
        r.worst_violation = worst_;
        r.tolerance = tol_;
    }

private:
    static constexpr std::size_t kMaxDetails = 32;
    double tol_;
    double worst_ = 0.0;
    std::vector<Violation> details_;
};

}  // namespace

ValidationReport validate_copula(const CopulaModel& model, const Grid& grid, double tol,
                                 std::uint64_t seed, std::size_t rectangles) {
    if (!(tol > 0.0)) throw InputError("validation tolerance must be positive");
    const std::size_t n = grid.size();
    const auto table = density_table(model, grid);

    ValidationReport report;
    ViolationLog log(tol);

    // Node scan of the density and the doubly stochastic masses.
    std::vector<double> row_mass(n, 0.0), col_mass(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double c = table[i * n + j];
            if (!log.record("density-nonnegative", grid.node(i), grid.node(j), std::max(0.0, -c)))
                report.two_increasing_ok = false;
            row_mass[i] += grid.weight(j) * c;
            col_mass[j] += grid.weight(i) * c;
        }
    }
    for (const auto& a : model.atoms) {
        for (std::size_t i = 0; i < n; ++i) {
            const double w = a.weight(grid.node(i));
            const double arriving = a.arriving(grid.node(i));
            if (!std::isfinite(w) || !std::isfinite(arriving)) {
                std::ostringstream os;
                os << "atom weight of '" << model.label << "' is not finite at x = " << grid.node(i);
                throw NumericError(os.str());
            }
            if (!log.record("atom-weight-range", grid.node(i), a.apply(grid.node(i)),
                            std::max({0.0, -w, w - 1.0})))
                report.two_increasing_ok = false;
            row_mass[i] += w;
            col_mass[i] += arriving;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!log.record("row-mass", grid.node(i), 1.0, std::abs(row_mass[i] - 1.0)))
            report.margins_ok = false;
        if (!log.record("column-mass", 1.0, grid.node(i), std::abs(col_mass[i] - 1.0)))
            report.margins_ok = false;
    }

    Rng rng(seed);
    if (model.cdf) {
        const auto& C = model.cdf;
        for (std::size_t i = 0; i <= n; ++i) {
            const double t = grid.edges()[i];
            const double ground = std::max(std::abs(C(0.0, t)), std::abs(C(t, 0.0)));
            if (!log.record("grounded", t, 0.0, ground)) report.grounded_ok = false;
            const double margin = std::max(std::abs(C(1.0, t) - t), std::abs(C(t, 1.0) - t));
            if (!log.record("cdf-margin", t, 1.0, margin)) report.margins_ok = false;
        }
        // Half of the rectangles are small (a few cells wide) so local
        // negativity is not averaged away.
        const double small = 4.0 / static_cast<double>(n);
        for (std::size_t r = 0; r < rectangles; ++r) {
            double x1 = uniform01(rng), x2 = uniform01(rng);
            double y1 = uniform01(rng), y2 = uniform01(rng);
            if (r % 2 == 1) {
                x2 = std::min(1.0, x1 + small * x2);
                y2 = std::min(1.0, y1 + small * y2);
            }
            if (x1 > x2) std::swap(x1, x2);
            if (y1 > y2) std::swap(y1, y2);
            const double vol = C(x2, y2) - C(x1, y2) - C(x2, y1) + C(x1, y1);
            if (!std::isfinite(vol)) throw NumericError("copula CDF is not finite");
            if (!log.record("rectangle", x1, y1, std::max(0.0, -vol)))
                report.two_increasing_ok = false;
        }
    } else {
        // CDF at cell corners from cumulative sums of cell masses.
        std::vector<double> mass(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                mass[i * n + j] = grid.weight(i) * grid.weight(j) * table[i * n + j];
        for (const auto& a : model.atoms)
            for (std::size_t i = 0; i < n; ++i) {
                const double x = grid.node(i);
                mass[i * n + grid.cell_of(a.apply(x))] += grid.weight(i) * a.weight(x);
            }
        const std::size_t m = n + 1;
        std::vector<double> cum(m * m, 0.0);
        for (std::size_t a = 1; a < m; ++a)
            for (std::size_t b = 1; b < m; ++b)
                cum[a * m + b] = mass[(a - 1) * n + (b - 1)] + cum[(a - 1) * m + b] +
                                 cum[a * m + b - 1] - cum[(a - 1) * m + b - 1];
        const auto edges = grid.edges();
        for (std::size_t a = 0; a < m; ++a) {
            const double ground = std::max(std::abs(cum[a]), std::abs(cum[a * m]));
            if (!log.record("grounded", edges[a], 0.0, ground)) report.grounded_ok = false;
            const double margin = std::max(std::abs(cum[n * m + a] - edges[a]),
                                           std::abs(cum[a * m + n] - edges[a]));
            if (!log.record("cdf-margin", edges[a], 1.0, margin)) report.margins_ok = false;
        }
        auto pick = [&](std::size_t& lo, std::size_t& hi) {
            lo = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m));
            hi = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m));
            if (lo > hi) std::swap(lo, hi);
            if (lo == hi) hi = std::min(n, lo + 1), lo = hi - 1;
        };
        for (std::size_t r = 0; r < rectangles; ++r) {
            std::size_t a1, a2, b1, b2;
            pick(a1, a2);
            pick(b1, b2);
            const double vol =
                cum[a2 * m + b2] - cum[a1 * m + b2] - cum[a2 * m + b1] + cum[a1 * m + b1];
            if (!log.record("rectangle", edges[a1], edges[b1], std::max(0.0, -vol)))
                report.two_increasing_ok = false;
        }
    }
    log.finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// Tabulated models
// ---------------------------------------------------------------------------

namespace {

/// Density table on a grid with bilinear interpolation between nodes and
/// per-row cumulative masses at cell edges.
class DensityTable {
public:
    DensityTable(Grid grid, std::vector<double> table)
        : grid_(std::move(grid)), table_(std::move(table)) {
        const std::size_t n = grid_.size();
        cum_.assign(n * (n + 1), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                cum_[i * (n + 1) + j + 1] =
                    cum_[i * (n + 1) + j] + grid_.weight(j) * table_[i * n + j];
    }

    double operator()(double x, double y) const {
        const auto [i0, i1, lx] = bracket(x);
        const auto [j0, j1, ly] = bracket(y);
        const std::size_t n = grid_.size();
        const double c00 = table_[i0 * n + j0], c01 = table_[i0 * n + j1];
        const double c10 = table_[i1 * n + j0], c11 = table_[i1 * n + j1];
        return (1 - lx) * ((1 - ly) * c00 + ly * c01) + lx * ((1 - ly) * c10 + ly * c11);
    }

    double partial(double x, double v) const {
        const auto [i0, i1, lx] = bracket(x);
        return (1 - lx) * row_partial(i0, v) + lx * row_partial(i1, v);
    }

    double quantile(double x, double target) const {
        const auto [i0, i1, lx] = bracket(x);
        const std::size_t n = grid_.size();
        auto cum_at = [&](std::size_t b) {
            return (1 - lx) * cum_[i0 * (n + 1) + b] + lx * cum_[i1 * (n + 1) + b];
        };
        // Last edge b with cum_at(b) <= target.
        std::size_t lo = 0, hi = n;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (cum_at(mid) <= target ? lo : hi) = mid;
        }
        const double rate = (1 - lx) * table_[i0 * n + lo] + lx * table_[i1 * n + lo];
        const double e = grid_.edges()[lo];
        if (rate <= 0.0) return e;
        return std::clamp(e + (target - cum_at(lo)) / rate, e, grid_.edges()[lo + 1]);
    }

private:
    struct Bracket {
        std::size_t lo, hi;
        double frac;
    };

    Bracket bracket(double t) const {
        const auto nodes = grid_.nodes();
        const std::size_t n = nodes.size();
        if (t <= nodes.front()) return {0, 0, 0.0};
        if (t >= nodes.back()) return {n - 1, n - 1, 0.0};
        const auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
        const std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
        const std::size_t lo = hi - 1;
        return {lo, hi, (t - nodes[lo]) / (nodes[hi] - nodes[lo])};
    }

    double row_partial(std::size_t i, double v) const {
        const std::size_t n = grid_.size();
        const std::size_t b = grid_.cell_of(v);
        return cum_[i * (n + 1) + b] + table_[i * n + b] * (v - grid_.edges()[b]);
    }

    Grid grid_;
    std::vector<double> table_;
    std::vector<double> cum_;
};

std::size_t mapped_index(const Grid& grid, const AtomicMap& atom, std::size_t i) {
    switch (atom.kind) {
        case MapKind::Identity: return i;
        case MapKind::Flip: return grid.mirror(i);
        case MapKind::Curve: break;
    }
    throw UnsupportedError("fold supports only identity and flip atoms");
}

void check_foldable(const CopulaModel& m) {
    for (const auto& a : m.atoms)
        if (a.kind == MapKind::Curve)
            throw UnsupportedError("fold of '" + m.label +
                                   "': boundary-curve atoms are not supported");
}

std::vector<AtomicMap> merge_atoms(std::vector<AtomicMap> atoms) {
    std::vector<AtomicMap> out;
    for (auto& a : atoms) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const AtomicMap& b) { return b.kind == a.kind; });
        if (it == out.end())
            out.push_back(std::move(a));
        else
            it->weight = it->weight + a.weight;
    }
    return out;
}

FamilySpec spec_or_label(const CopulaModel& m) {
    if (m.family) return *m.family;
    return FamilySpec{"custom:" + m.label, {}, {}};
}

}  // namespace

CopulaModel tabulated_model(const Grid& grid, std::vector<double> table,
                            std::vector<AtomicMap> atoms, std::string label) {
    if (table.size() != grid.size() * grid.size())
        throw InputError("density table does not match the grid");
    auto t = std::make_shared<const DensityTable>(grid, std::move(table));
    CopulaModel m;
    m.label = std::move(label);
    m.density = [t](double x, double y) { return (*t)(x, y); };
    m.ac_partial = [t](double x, double v) { return t->partial(x, v); };
    m.ac_quantile = [t](double x, double mass) { return t->quantile(x, mass); };
    m.atoms = std::move(atoms);
    return m;
}

CopulaModel fold(const CopulaModel& a, const CopulaModel& b, const Grid& grid) {
    check_foldable(a);
    check_foldable(b);
    const std::size_t n = grid.size();
    const auto ta = density_table(a, grid);
    const auto tb = density_table(b, grid);
    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMatrix> A(ta.data(), static_cast<Eigen::Index>(n),
                                        static_cast<Eigen::Index>(n));
    const Eigen::Map<const RowMatrix> B(tb.data(), static_cast<Eigen::Index>(n),
                                        static_cast<Eigen::Index>(n));
    const Eigen::Map<const Eigen::VectorXd> w(grid.weights().data(), static_cast<Eigen::Index>(n));

    RowMatrix C = A * w.asDiagonal() * B;
    // A-atom then B-density: x -> map(x) w.p. weight(x), then density b(map(x), y).
    for (const auto& atom : a.atoms)
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            C.row(ii) += atom.weight(grid.node(i)) *
                         B.row(static_cast<Eigen::Index>(mapped_index(grid, atom, i)));
        }
    // A-density then B-atom: density at y is a(x, m(y)) * weight(m(y)) (m is an involution).
    for (const auto& atom : b.atoms)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t src = mapped_index(grid, atom, j);
            C.col(static_cast<Eigen::Index>(j)) +=
                atom.weight(grid.node(src)) * A.col(static_cast<Eigen::Index>(src));
        }

    std::vector<AtomicMap> atoms;
    for (const auto& first : a.atoms)
        for (const auto& second : b.atoms) {
            AtomicMap m;
            m.kind = compose(first.kind, second.kind);
            const Curve inner = first.kind == MapKind::Identity ? Curve([](double x) { return x; })
                                                                : Curve([](double x) { return 1.0 - x; });
            m.weight = first.weight * second.weight.after(inner);
            atoms.push_back(std::move(m));
        }

    std::vector<double> table(C.data(), C.data() + n * n);
    auto out = tabulated_model(grid, std::move(table), merge_atoms(std::move(atoms)),
                               "(" + a.label + ") * (" + b.label + ")");
    out.family = FamilySpec{"fold", {}, {spec_or_label(a), spec_or_label(b)}};
    return out;
}

CopulaModel n_step(const CopulaModel& model, int n, const Grid& grid) {
    if (n < 1)
        throw InputError("n_step needs n >= 1; the 0-step copula is available as comonotone_model()");
    if (n == 1) return model;
    std::optional<CopulaModel> result;
    CopulaModel base = model;
    int k = n;
    while (k > 0) {
        if (k & 1) result = result ? fold(*result, base, grid) : base;
        k >>= 1;
        if (k > 0) base = fold(base, base, grid);
    }
    result->label = model.label + " ^" + std::to_string(n);
    result->family =
        FamilySpec{"n_step", {static_cast<double>(n)}, {spec_or_label(model)}};
    return *result;
}

CopulaModel comonotone_model() {
    CopulaModel m;
    m.label = "M";
    m.density = [](double, double) { return 0.0; };
    m.ac_partial = [](double, double) { return 0.0; };
    m.atoms.push_back(AtomicMap::identity(AtomWeight::constant(1.0)));
    m.cdf = [](double u, double v) { return std::min(u, v); };
    m.family = FamilySpec{"comonotone", {}, {}};
    return m;
}

}  // namespace copmix
