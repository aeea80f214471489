#include "copmix/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "copmix/error.hpp"

namespace copmix {

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void require_complete(const Generator& gen) {
    if (!gen.phi || !gen.dphi || !gen.phi_inv)
        throw InputError("generator '" + gen.label + "' is missing phi, phi' or phi^-1");
    if (!gen.d2phi) throw InputError("generator '" + gen.label + "' has no second derivative");
}

void require_standard_nonstrict(const Generator& gen, const char* what) {
    require_complete(gen);
    if (gen.strict)
        throw NotApplicableError(std::string(what) + " applies to non-strict generators only");
    if (!gen.standardized())
        throw NotApplicableError(std::string(what) + " needs a standardized generator (phi(0) = 1)");
}

constexpr double kSingularSlack = 1e-9;

}  // namespace

bool Generator::standardized(double tol) const {
    return !strict && std::abs(phi0() - 1.0) <= tol;
}

GeneratorCheck check_generator(const Generator& gen, const Grid& grid) {
    require_complete(gen);
    GeneratorCheck out;
    auto flag = [&](double magnitude, double tol, const std::string& msg) {
        out.worst = std::max(out.worst, magnitude);
        if (magnitude > tol) {
            out.ok = false;
            out.problems.push_back(msg);
        }
    };
    flag(std::abs(gen.phi(1.0)), 1e-12, "phi(1) != 0");
    for (double x : grid.nodes()) {
        flag(std::max(0.0, gen.dphi(x)), 1e-12, "phi' > 0 at x = " + fmt_double(x));
        flag(std::max(0.0, -gen.d2phi(x)), 1e-12, "phi'' < 0 at x = " + fmt_double(x));
    }
    if (!gen.strict) {
        if (std::abs(gen.phi0() - 1.0) <= 1e-10) {
            for (double x : grid.nodes())
                flag(std::abs(gen.phi_inv(gen.phi(x)) - x), 1e-8,
                     "phi_inv(phi(x)) != x at x = " + fmt_double(x));
        }
    }
    return out;
}

Generator standardize(const Generator& gen) {
    require_complete(gen);
    const double s = gen.phi0();
    if (gen.strict || !std::isfinite(s))
        throw NotApplicableError("standardize: '" + gen.label + "' is a strict generator");
    if (!(s > 0.0)) throw InputError("standardize: phi(0) must be positive");
    Generator out;
    out.label = gen.label + " (standard)";
    out.strict = false;
    out.phi = [f = gen.phi, s](double u) { return f(u) / s; };
    out.dphi = [f = gen.dphi, s](double u) { return f(u) / s; };
    out.d2phi = [f = gen.d2phi, s](double u) { return f(u) / s; };
    out.phi_inv = [f = gen.phi_inv, s](double t) { return f(t * s); };
    return out;
}

double boundary_mass(const Generator& gen) {
    require_complete(gen);
    if (gen.strict) return 0.0;
    const double d0 = gen.dphi(0.0);
    if (!std::isfinite(d0)) return 0.0;
    return -gen.phi0() / d0;
}

CopulaModel make_archimedean(const Generator& gen) {
    require_complete(gen);
    const double top = gen.strict ? std::numeric_limits<double>::infinity() : gen.phi0();
    const double singular = boundary_mass(gen);
    if (singular >= 1.0 - kSingularSlack)
        throw SingularCopulaError("generator '" + gen.label +
                                  "' yields the Hoeffding lower bound W (no density)");

    const Curve phi = gen.phi, dphi = gen.dphi, d2phi = gen.d2phi, phi_inv = gen.phi_inv;
    const bool strict = gen.strict;
    auto joint = [=](double u, double v) {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        const double s = phi(u) + phi(v);
        if (!strict && s >= top) return 0.0;
        return phi_inv(s);
    };

    CopulaModel m;
    m.label = "Archimedean[" + gen.label + "]";
    m.cdf = joint;
    m.density = [=](double u, double v) {
        const double s = phi(u) + phi(v);
        if (!strict && s >= top) return 0.0;
        const double c = phi_inv(s);
        const double d = dphi(c);
        return -d2phi(c) * dphi(u) * dphi(v) / (d * d * d);
    };

    const double d0 = strict ? 0.0 : dphi(0.0);
    const bool has_curve = singular > 0.0;
    Curve partner = [=](double x) { return phi_inv(std::max(0.0, top - phi(x))); };
    Curve jump = [=](double x) { return has_curve ? dphi(x) / d0 : 0.0; };
    // C_{,1}(x, v) = phi'(x) / phi'(C(x, v)) above the boundary curve, 0 below.
    m.ac_partial = [=](double x, double v) {
        if (x <= 0.0 || v <= 0.0) return 0.0;
        const double s = phi(x) + phi(v);
        if (!strict && s >= top) return 0.0;
        const double total = dphi(x) / dphi(phi_inv(s));
        return std::max(0.0, total - jump(x));
    };
    if (has_curve) {
        // The copula is symmetric, so the mass arriving at y has density w(y).
        m.atoms.push_back(AtomicMap::involution(partner, AtomWeight::function(jump), jump));
    }
    m.family = FamilySpec{"archimedean:" + gen.label, {}, {}};
    return m;
}

// ---------------------------------------------------------------------------
// Exponential rho-mixing condition for non-strict generators
// ---------------------------------------------------------------------------

namespace {

/// phi'' o phi_inv on the nodes and at t = 1, plus monotonicity flags.
struct Profile {
    std::vector<double> values;  // at grid nodes
    double at_one = 0.0;         // t = 1, i.e. phi''(0)
    bool increasing = true;      // in t
    bool decreasing = true;
};

Profile profile(const Generator& gen, const Grid& grid) {
    Profile p;
    p.values.reserve(grid.size());
    for (double t : grid.nodes()) p.values.push_back(gen.d2phi(gen.phi_inv(t)));
    p.at_one = gen.d2phi(gen.phi_inv(1.0));
    const double scale = std::max(1.0, std::abs(p.at_one));
    std::vector<double> all = p.values;
    all.push_back(p.at_one);
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i] < all[i - 1] - 1e-12 * scale) p.increasing = false;
        if (all[i] > all[i - 1] + 1e-12 * scale) p.decreasing = false;
    }
    return p;
}

}  // namespace

HMaxResult h_max(const Generator& gen, double x, const Grid& grid) {
    require_standard_nonstrict(gen, "h_max");
    if (!(x >= 0.0 && x <= 1.0)) throw InputError("h_max: x outside [0,1]");
    const auto p = profile(gen, grid);
    const double at_x = gen.d2phi(gen.phi_inv(x));
    HMaxResult r;
    r.signed_max = std::max(at_x, p.at_one);
    r.signed_min = std::min(at_x, p.at_one);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.node(i) < x) continue;
        r.signed_max = std::max(r.signed_max, p.values[i]);
        r.signed_min = std::min(r.signed_min, p.values[i]);
    }
    r.value = std::max(std::abs(r.signed_max), std::abs(r.signed_min));
    // phi'' decreasing in u means phi'' o phi_inv increasing in t: max at t = 1.
    if (p.increasing) r.shortcut = std::abs(p.at_one);
    else if (p.decreasing) r.shortcut = std::abs(at_x);
    return r;
}

double theorem4_integral(const Generator& gen, const Grid& grid) {
    require_standard_nonstrict(gen, "theorem4_integral");
    if (boundary_mass(gen) >= 1.0 - kSingularSlack)
        throw NotApplicableError("theorem4_integral: generator is the Hoeffding lower bound");
    const auto p = profile(gen, grid);
    const std::size_t n = grid.size();
    // Suffix maxima of |phi'' o phi_inv| over nodes >= x_i, including t = 1.
    std::vector<double> suffix(n + 1);
    suffix[n] = std::abs(p.at_one);
    for (std::size_t i = n; i-- > 0;) suffix[i] = std::max(suffix[i + 1], std::abs(p.values[i]));
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.node(i);
        const double d = gen.dphi(gen.phi_inv(x));
        const double ratio = suffix[i] / (d * d);
        const double f = (1.0 - x) * ratio * ratio;
        if (!std::isfinite(f)) {
            std::ostringstream os;
            os << "theorem4_integral: integrand not finite at x = " << x;
            throw NumericError(os.str());
        }
        sum += grid.weight(i) * f;
    }
    return sum;
}

IntegralCriterionReport theorem4_report(const Generator& gen, const Grid& grid) {
    IntegralCriterionReport r;
    r.integral = theorem4_integral(gen, grid);
    r.certified = r.integral < 1.0;
    r.rho1_bound = std::sqrt(r.integral);
    const double d1 = gen.dphi(1.0);
    if (d1 != 0.0) {
        const auto p = profile(gen, grid);
        const std::size_t n = grid.size();
        std::vector<double> suffix(n + 1);
        suffix[n] = std::abs(p.at_one);
        for (std::size_t i = n; i-- > 0;) suffix[i] = std::max(suffix[i + 1], std::abs(p.values[i]));
        double lhs = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            lhs += grid.weight(i) * suffix[i] * suffix[i] * (1.0 - grid.node(i));
        r.sufficient_lhs = lhs;
        r.sufficient_rhs = std::pow(d1, 4);
    }
    return r;
}

double theorem4_critical_parameter(const GeneratorFamily& family, double lo, double hi,
                                   double tol, const Grid& grid) {
    if (!(lo < hi)) throw InputError("bracket must satisfy lo < hi");
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    auto excess = [&](double theta) { return theorem4_integral(family(theta), grid) - 1.0; };
    const double flo = excess(lo), fhi = excess(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw BracketError("integral - 1 has the same sign at both ends of [" + fmt_double(lo) +
                           ", " + fmt_double(hi) + "]");
    boost::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::bisect(
        excess, lo, hi, [tol](double l, double r) { return std::abs(r - l) <= tol; }, max_iter);
    return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

Generator log_generator(double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw ParameterError("log generator needs theta in (0,1), got " + fmt_double(theta));
    Generator g;
    g.label = "log(" + fmt_double(theta) + ")";
    g.phi = [theta](double u) { return -std::log(theta * u + 1.0 - theta); };
    g.dphi = [theta](double u) { return -theta / (theta * u + 1.0 - theta); };
    g.d2phi = [theta](double u) {
        const double d = theta * u + 1.0 - theta;
        return theta * theta / (d * d);
    };
    g.phi_inv = [theta](double s) { return (std::exp(-s) - 1.0 + theta) / theta; };
    return g;
}

Generator rational_generator(double theta) {
    if (!(theta >= 1.0))
        throw ParameterError("rational generator needs theta >= 1, got " + fmt_double(theta));
    Generator g;
    g.label = "rational(" + fmt_double(theta) + ")";
    g.phi = [theta](double x) { return (1.0 - x) / (1.0 + (theta - 1.0) * x); };
    g.dphi = [theta](double x) {
        const double d = 1.0 + (theta - 1.0) * x;
        return -theta / (d * d);
    };
    g.d2phi = [theta](double x) {
        const double d = 1.0 + (theta - 1.0) * x;
        return 2.0 * theta * (theta - 1.0) / (d * d * d);
    };
    g.phi_inv = g.phi;
    return g;
}

Generator lower_bound_generator() {
    Generator g;
    g.label = "1-u";
    g.phi = [](double u) { return 1.0 - u; };
    g.dphi = [](double) { return -1.0; };
    g.d2phi = [](double) { return 0.0; };
    g.phi_inv = [](double s) { return 1.0 - s; };
    return g;
}

Generator independence_generator() {
    Generator g;
    g.label = "-ln u";
    g.strict = true;
    g.phi = [](double u) { return -std::log(u); };
    g.dphi = [](double u) { return -1.0 / u; };
    g.d2phi = [](double u) { return 1.0 / (u * u); };
    g.phi_inv = [](double s) { return std::exp(-s); };
    return g;
}

GeneratorFamily builtin_generator_family(std::string_view name) {
    if (name == "example2")
        return [](double theta) {
            auto g = standardize(log_generator(theta));
            g.label = "example2(" + fmt_double(theta) + ")";
            return g;
        };
    if (name == "example3")
        return [](double theta) {
            auto g = rational_generator(theta);
            g.label = "example3(" + fmt_double(theta) + ")";
            return g;
        };
    throw InputError("unknown generator family '" + std::string(name) +
                     "' (expected example2 or example3)");
}

}  // namespace copmix
