#include "copmix/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "copmix/error.hpp"

namespace copmix {

std::string BoundReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["name"] = name;
    j["value"] = value;
    j["threshold"] = threshold;
    j["satisfied"] = satisfied;
    j["inputs"] = inputs;
    j["extras"] = extras;
    return j.dump(2);
}

BoundReport theorem3_bound(const CopulaModel& model, const Grid& grid) {
    if (!model.density_dy) throw InputError("theorem3_bound needs the y-derivative of the density");
    if (!model.density) throw InputError("theorem3_bound needs a density");
    const auto& c = model.density;
    const auto& cy = *model.density_dy;
    double k1 = 0.0, k2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        double inner = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) inner += grid.weight(j) * std::abs(cy(x, grid.node(j)));
        const double jump = std::abs(c(x, 1.0) - c(x, 0.0));
        if (!std::isfinite(inner) || !std::isfinite(jump)) {
            std::ostringstream os;
            os << "theorem3_bound: non-finite derivative integral at x = " << x;
            throw NumericError(os.str());
        }
        k1 += grid.weight(i) * inner * inner;
        k2 += grid.weight(i) * (jump + inner) * (jump + inner);
    }
    BoundReport r;
    r.name = "theorem3";
    r.value = k1 + k2;
    r.threshold = 12.0;
    r.satisfied = r.value < r.threshold;
    r.inputs["N"] = static_cast<double>(grid.size());
    r.extras["k1"] = k1;
    r.extras["k2"] = k2;
    r.extras["rho1_bound"] = std::sqrt(r.value / 12.0);
    return r;
}

BoundReport envelope_bound(const Envelope& env, const Grid& grid) {
    if (env.eps1.size() != grid.size() || env.eps2.size() != grid.size())
        throw InputError("envelope samples do not match the grid");
    double i1 = 0.0, i2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (env.eps1[i] < 0.0 || env.eps2[i] < 0.0 || !std::isfinite(env.eps1[i]) ||
            !std::isfinite(env.eps2[i])) {
            std::ostringstream os;
            os << "envelope negative or not finite at node " << grid.node(i);
            throw InputError(os.str());
        }
        i1 += grid.weight(i) * env.eps1[i];
        i2 += grid.weight(i) * env.eps2[i];
    }
    if (i1 + i2 >= 2.0) {
        std::ostringstream os;
        os << "envelope integrals sum to " << i1 + i2 << ", must be below 2";
        throw InfeasibleEnvelopeError(os.str());
    }
    BoundReport r;
    r.name = "envelope";
    r.value = 1.0 - 0.5 * (i1 + i2);
    r.threshold = 1.0;
    r.satisfied = i1 > 0.0 || i2 > 0.0;
    r.inputs["N"] = static_cast<double>(grid.size());
    r.extras["int_eps1"] = i1;
    r.extras["int_eps2"] = i2;
    return r;
}

BoundReport envelope_bound(const Curve& eps1, const Curve& eps2, const Grid& grid) {
    return envelope_bound(Envelope{grid.sample(eps1), grid.sample(eps2)}, grid);
}

Envelope envelope_extract(const CopulaModel& model, const Grid& grid) {
    if (!model.density) throw InputError("envelope_extract needs a density");
    const std::size_t n = grid.size();
    const auto table = density_table(model, grid);
    Envelope env{std::vector<double>(n, INFINITY), std::vector<double>(n, INFINITY)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double c = table[i * n + j];
            env.eps1[i] = std::min(env.eps1[i], c);
            env.eps2[j] = std::min(env.eps2[j], c);
        }
    for (auto* v : {&env.eps1, &env.eps2})
        for (auto& e : *v) e = std::max(0.0, 0.5 * e);
    return env;
}

namespace {

struct RowTerms {
    double numerator = 0.0;  // the constant in front
    double mixed = 0.0;      // the product of L1 terms
};

RowTerms row_terms(TableRow row, const TableConstants& k) {
    switch (row) {
        case TableRow::M1: return {k.b1, k.g_l1 * k.h_l1};
        case TableRow::M2: return {k.b1 * k.b2, k.g_l1 * k.h_l1};
        case TableRow::M3: return {k.b1 * (k.b2 - k.a2), k.g_l1 * (k.b2 - k.h_l1)};
        case TableRow::M4: return {(k.b1 - k.a1) * (k.b2 - k.a2), (k.b1 - k.g_l1) * (k.b2 - k.h_l1)};
        default: break;
    }
    throw NotApplicableError("closed-form rho1 bound exists for rows m1..m4 only");
}

}  // namespace

std::pair<Curve, Curve> table_envelope(const TableDensitySpec& spec) {
    if (!is_envelope_row(spec.row))
        throw NotApplicableError("table envelope exists for rows m1..m4 only");
    const auto k = resolve_table_constants(spec);
    const auto t = row_terms(spec.row, k);
    const double d = t.numerator + t.mixed;
    if (!(d > 0.0)) throw ParameterError("degenerate row constants (zero denominator)");
    const Curve g = spec.g, h = spec.h;
    switch (spec.row) {
        case TableRow::M1:
        case TableRow::M2:
            return {[g, k, d](double x) { return g(x) * k.h_l1 / d; },
                    [h, k, d](double y) { return h(y) * k.g_l1 / d; }};
        case TableRow::M3:
            return {[g, k, d](double x) { return g(x) * (k.b2 - k.h_l1) / d; },
                    [h, k, d](double y) { return (k.b2 - h(y)) * k.g_l1 / d; }};
        default:
            return {[g, k, d](double x) { return (k.b1 - g(x)) * (k.b2 - k.h_l1) / d; },
                    [h, k, d](double y) { return (k.b2 - h(y)) * (k.b1 - k.g_l1) / d; }};
    }
}

BoundReport table2_bound(const TableDensitySpec& spec) {
    if (!is_envelope_row(spec.row))
        throw NotApplicableError("closed-form rho1 bound exists for rows m1..m4 only");
    const auto k = resolve_table_constants(spec);
    const auto t = row_terms(spec.row, k);
    const double d = t.numerator + t.mixed;
    if (std::abs(d) <= 1e-14)
        throw ParameterError("degenerate " + std::string(to_string(spec.row)) +
                             " constants: bound is 0/0 (constant g or h)");
    BoundReport r;
    r.name = "table2_" + std::string(to_string(spec.row));
    r.value = t.numerator / d;
    r.threshold = 1.0;
    r.satisfied = r.value < r.threshold;
    r.inputs = {{"b1", k.b1}, {"a1", k.a1}, {"b2", k.b2}, {"a2", k.a2}, {"g_l1", k.g_l1}, {"h_l1", k.h_l1}};
    if (k.approximate) r.extras["approximate_constants"] = 1.0;
    return r;
}

DmrSandwich dmr_sandwich(double a, int n) {
    if (!(a > 0.0 && a <= 1.0)) throw ParameterError("dmr_sandwich needs a in (0,1]");
    if (n < 1) throw InputError("dmr_sandwich needs n >= 1");
    const int m = n / 2;
    DmrSandwich s;
    s.printed_lower = std::pow(a, n + 1) / (n + 1);
    s.expectation_lower = std::pow(a, n) / (n + 1);
    s.upper = 3.0 * std::pow(a, m + 1) / (m + 1);
    return s;
}

}  // namespace copmix
