#include "copmix/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "copmix/error.hpp"

namespace copmix {

void validate_drift_spec(const DriftSpec& spec, const Grid& grid) {
    if (!spec.L) throw InputError("drift spec has no Lyapunov function");
    if (!(spec.S.lo <= spec.S.hi && spec.S.lo >= 0.0 && spec.S.hi <= 1.0))
        throw InputError("small-set candidate must be a sub-interval of [0,1]");
    if (!(spec.r > 1.0)) throw InputError("drift spec needs r > 1");
    if (!(spec.gamma > 0.0)) throw InputError("drift spec needs gamma > 0");
    if (!(spec.K > 0.0)) throw InputError("drift spec needs K > 0");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool any = false;
    for (double x : grid.nodes()) {
        const double l = spec.L(x);
        if (!(l >= 0.0) || !std::isfinite(l)) {
            std::ostringstream os;
            os << "Lyapunov function negative or not finite at x = " << x;
            throw InputError(os.str());
        }
        if (spec.S.contains(x)) {
            any = true;
            lo = std::min(lo, l);
            hi = std::max(hi, l);
        }
    }
    if (!any) throw InputError("small-set candidate contains no grid node");
    if (!(lo > 0.0)) throw InputError("Lyapunov function is not bounded away from 0 on S");
}

std::vector<double> conditional_expectation(const CopulaModel& model, const Curve& L, const Grid& grid) {
    const std::size_t n = grid.size();
    const auto ls = grid.sample(L);
    std::vector<double> out(n, 0.0);
    if (model.density) {
        const auto table = density_table(model, grid);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i] += grid.weight(j) * table[i * n + j] * ls[j];
    }
    for (const auto& atom : model.atoms)
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid.node(i);
            out[i] += atom.weight(x) * L(atom.apply(x));
        }
    return out;
}

DriftReport drift_check(const CopulaModel& model, const DriftSpec& spec, const Grid& grid, double tol) {
    validate_drift_spec(spec, grid);
    const std::size_t n = grid.size();
    const auto expect = conditional_expectation(model, spec.L, grid);
    // L restricted to S^c, for the second condition.
    const auto& S = spec.S;
    Curve outside = [L = spec.L, S](double y) { return S.contains(y) ? 0.0 : L(y); };
    const auto tail = conditional_expectation(model, outside, grid);

    DriftReport r;
    r.tolerance = tol;
    r.drift_worst_slack = std::numeric_limits<double>::infinity();
    r.bound_worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.node(i);
        if (S.contains(x)) {
            const double slack = spec.K - tail[i];
            if (slack < r.bound_worst_slack) {
                r.bound_worst_slack = slack;
                r.bound_worst_x = x;
            }
        } else {
            const double slack = spec.L(x) - spec.gamma - spec.r * expect[i];
            if (slack < r.drift_worst_slack) {
                r.drift_worst_slack = slack;
                r.drift_worst_x = x;
            }
        }
    }
    // Vacuous when no node falls on that side.
    if (std::isinf(r.drift_worst_slack)) r.drift_worst_slack = 0.0;
    if (std::isinf(r.bound_worst_slack)) r.bound_worst_slack = 0.0;
    r.drift_ok = r.drift_worst_slack >= -tol;
    r.bound_ok = r.bound_worst_slack > 0.0;
    return r;
}

DriftSpec frechet_drift_spec(double a, double b, const Grid& grid) {
    if (!(a >= 0.0 && b >= 0.0)) throw ParameterError("Frechet parameters must be nonnegative");
    if (!(a + b < 1.0))
        throw ParameterError("a + b = 1: the chain does not mix and no drift certificate exists");
    if (!(b > 0.0))
        throw ParameterError("b = 0 makes gamma = b/(a+3) vanish; supply a custom DriftSpec");
    DriftSpec s;
    s.L = [](double x) { return x >= 0.5 ? 1.0 : 2.0; };
    s.S = {0.5, 1.0};
    s.r = 4.0 / (a + 3.0);
    s.gamma = b / (a + 3.0);
    const double rest = 1.0 - a - b;
    // int_{S^c} L dP(x, .) for x in S: the flip atom lands in S^c, plus the AC part.
    double sup = 0.0;
    for (double x : grid.nodes()) {
        if (!s.S.contains(x)) continue;
        double v = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j)
            if (!s.S.contains(grid.node(j))) v += grid.weight(j) * rest * s.L(grid.node(j));
        if (!s.S.contains(1.0 - x)) v += b * s.L(1.0 - x);
        sup = std::max(sup, v);
    }
    s.K = sup + 1.0;
    return s;
}

namespace {

/// Row i of the AC density table of the n-step model and atom images.
struct Row {
    std::vector<double> density;
    std::vector<std::pair<double, double>> atoms;  // (image, weight)
};

std::vector<Row> rows_of(const CopulaModel& model, const Grid& grid) {
    const std::size_t n = grid.size();
    std::vector<Row> rows(n);
    std::vector<double> table;
    if (model.density) table = density_table(model, grid);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].density.assign(n, 0.0);
        if (!table.empty())
            std::copy_n(table.begin() + static_cast<std::ptrdiff_t>(i * n), n, rows[i].density.begin());
        const double x = grid.node(i);
        for (const auto& atom : model.atoms) rows[i].atoms.emplace_back(atom.apply(x), atom.weight(x));
    }
    return rows;
}

}  // namespace

MinorizationCertificate minorization_check(const CopulaModel& model, Interval S, double q,
                                           const Grid& grid, int n, double tol) {
    if (!(q > 0.0 && q <= 1.0)) throw InputError("minorization constant q must lie in (0,1]");
    if (n < 1) throw InputError("minorization step count must be at least 1");
    if (!(S.lo <= S.hi)) throw InputError("small-set candidate must satisfy lo <= hi");
    const CopulaModel step = n == 1 ? model : n_step(model, n, grid);
    const auto rows = rows_of(step, grid);
    const std::size_t N = grid.size();

    MinorizationCertificate c;
    c.S = S;
    c.q = q;
    c.n = n;
    c.tolerance = tol;
    c.worst_margin = std::numeric_limits<double>::infinity();
    c.interval_margin = std::numeric_limits<double>::infinity();
    bool any = false;
    std::vector<double> d(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double x = grid.node(i);
        if (!S.contains(x)) continue;
        any = true;
        for (std::size_t j = 0; j < N; ++j) d[j] = grid.weight(j) * (rows[i].density[j] - q);
        // Atoms sit on Lebesgue-null points a Borel set can avoid, so the
        // union margin ignores them.
        double unions = 0.0;
        for (double v : d) unions += std::min(0.0, v);
        if (unions < c.worst_margin) {
            c.worst_margin = unions;
            c.worst_x = x;
        }
        // A single interval cannot avoid an atom inside it.
        for (const auto& [image, weight] : rows[i].atoms) d[grid.cell_of(image)] += weight;
        double run = 0.0, best = 0.0;
        for (double v : d) {
            run = std::min(v, run + v);
            best = std::min(best, run);
        }
        c.interval_margin = std::min(c.interval_margin, best);
    }
    if (!any) throw InputError("small-set candidate contains no grid node");
    return c;
}

double minorization_margin(const CopulaModel& model, std::size_t row, const std::vector<std::size_t>& cells,
                           double q, const Grid& grid) {
    if (row >= grid.size()) throw InputError("row index outside the grid");
    const double x = grid.node(row);
    std::vector<char> in(grid.size(), 0);
    for (auto j : cells) {
        if (j >= grid.size()) throw InputError("cell index outside the grid");
        in[j] = 1;
    }
    double m = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (in[j]) m += grid.weight(j) * ((model.density ? model.density(x, grid.node(j)) : 0.0) - q);
    for (const auto& atom : model.atoms)
        if (in[grid.cell_of(atom.apply(x))]) m += atom.weight(x);
    return m;
}

std::string DriftReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["drift_ok"] = drift_ok;
    j["drift_worst_slack"] = drift_worst_slack;
    j["drift_worst_x"] = drift_worst_x;
    j["bound_ok"] = bound_ok;
    j["bound_worst_slack"] = bound_worst_slack;
    j["bound_worst_x"] = bound_worst_x;
    j["tolerance"] = tolerance;
    return j.dump(2);
}

std::string MinorizationCertificate::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["S"] = {S.lo, S.hi};
    j["q"] = q;
    j["n"] = n;
    j["worst_margin"] = worst_margin;
    j["interval_margin"] = interval_margin;
    j["worst_x"] = worst_x;
    j["valid"] = valid();
    return j.dump(2);
}

}  // namespace copmix
