#include "copmix/families.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "copmix/error.hpp"

namespace copmix {

namespace {

constexpr double kParamSlack = 1e-12;

std::string fmt_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

/// Running integral of a bounded function on [0,1] with 4-point Gauss-Legendre
/// per cell.
class Primitive {
public:
    explicit Primitive(Curve f, std::size_t cells = 4096) : f_(std::move(f)), cells_(cells) {
        gauss_legendre_rule(4, 0.0, 1.0, gx_, gw_);
        cum_.assign(cells_ + 1, 0.0);
        for (std::size_t b = 0; b < cells_; ++b) cum_[b + 1] = cum_[b] + piece(edge(b), edge(b + 1));
    }

    double operator()(double v) const {
        v = std::clamp(v, 0.0, 1.0);
        const auto b = std::min(cells_ - 1, static_cast<std::size_t>(v * static_cast<double>(cells_)));
        return cum_[b] + piece(edge(b), v);
    }

    [[nodiscard]] double total() const { return cum_.back(); }

private:
    double edge(std::size_t b) const { return static_cast<double>(b) / static_cast<double>(cells_); }

    double piece(double lo, double hi) const {
        double s = 0.0;
        for (std::size_t k = 0; k < gx_.size(); ++k) s += gw_[k] * f_(lo + gx_[k] * (hi - lo));
        return s * (hi - lo);
    }

    Curve f_;
    std::size_t cells_;
    std::vector<double> gx_, gw_, cum_;
};

}  // namespace

double solve_increasing_quadratic(double l, double q, double m) {
    if (m <= 0.0) return 0.0;
    const double disc = std::max(0.0, l * l + 4.0 * q * m);
    const double denom = l + std::sqrt(disc);
    if (denom <= 0.0) return 0.0;
    return std::clamp(2.0 * m / denom, 0.0, 1.0);
}

FrechetParams MardiaParams::as_frechet() const noexcept {
    const double t2 = theta * theta;
    return {t2 * (1.0 + theta) / 2.0, t2 * (1.0 - theta) / 2.0};
}

double MHKernelParams::p(double x) const noexcept { return a * std::abs(x); }

double MHKernelParams::f(double x) const noexcept {
    return x <= 0.0 ? a * (1.0 - x * x) / 2.0 : a * (1.0 + x * x) / 2.0;
}

std::string_view to_string(TableRow row) noexcept {
    switch (row) {
        case TableRow::M1: return "m1";
        case TableRow::M2: return "m2";
        case TableRow::M3: return "m3";
        case TableRow::M4: return "m4";
        case TableRow::T3_1: return "t3_1";
        case TableRow::T3_2: return "t3_2";
        case TableRow::T3_3: return "t3_3";
        case TableRow::T3_4: return "t3_4";
    }
    return "?";
}

TableRow parse_table_row(std::string_view name) {
    for (auto r : {TableRow::M1, TableRow::M2, TableRow::M3, TableRow::M4, TableRow::T3_1,
                   TableRow::T3_2, TableRow::T3_3, TableRow::T3_4})
        if (to_string(r) == name) return r;
    throw InputError("unknown table row '" + std::string(name) + "'");
}

CopulaModel make_independence() {
    CopulaModel m;
    m.label = "P";
    m.density = [](double, double) { return 1.0; };
    m.density_dy = [](double, double) { return 0.0; };
    m.cdf = [](double u, double v) { return u * v; };
    m.ac_partial = [](double, double v) { return v; };
    m.ac_quantile = [](double, double mass) { return mass; };
    m.family = FamilySpec{"independence", {}, {}};
    return m;
}

CopulaModel make_fgm(double theta) {
    if (!(std::abs(theta) <= 1.0))
        throw ParameterError("FGM parameter must lie in [-1,1], got " + fmt_double(theta));
    CopulaModel m;
    m.label = "FGM(" + fmt_double(theta) + ")";
    m.density = [theta](double x, double y) { return 1.0 + theta * (1 - 2 * x) * (1 - 2 * y); };
    m.density_dy = [theta](double x, double) { return -2.0 * theta * (1 - 2 * x); };
    m.cdf = [theta](double u, double v) { return u * v + theta * u * v * (1 - u) * (1 - v); };
    m.ac_partial = [theta](double x, double v) {
        return v + theta * (1 - 2 * x) * v * (1 - v);
    };
    m.ac_quantile = [theta](double x, double mass) {
        const double t = theta * (1 - 2 * x);
        return solve_increasing_quadratic(1.0 + t, -t, mass);
    };
    m.family = FamilySpec{"fgm", {theta}, {}};
    return m;
}

CopulaModel make_frechet(FrechetParams p) {
    const double a = p.a, b = p.b;
    if (!(a >= 0.0 && b >= 0.0 && a + b <= 1.0 + kParamSlack))
        throw ParameterError("Frechet parameters need a, b >= 0 and a + b <= 1, got a = " +
                             fmt_double(a) + ", b = " + fmt_double(b));
    const double rest = std::max(0.0, 1.0 - a - b);
    CopulaModel m;
    m.label = "Frechet(" + fmt_double(a) + ", " + fmt_double(b) + ")";
    m.density = [rest](double, double) { return rest; };
    m.density_dy = [](double, double) { return 0.0; };
    m.cdf = [a, b, rest](double u, double v) {
        return a * std::min(u, v) + rest * u * v + b * std::max(u + v - 1.0, 0.0);
    };
    m.ac_partial = [rest](double, double v) { return rest * v; };
    m.ac_quantile = [rest](double, double mass) {
        return rest > 0.0 ? std::clamp(mass / rest, 0.0, 1.0) : 0.0;
    };
    if (a > 0.0) m.atoms.push_back(AtomicMap::identity(AtomWeight::constant(a)));
    if (b > 0.0) m.atoms.push_back(AtomicMap::flip(AtomWeight::constant(b)));
    m.family = FamilySpec{"frechet", {a, b}, {}};
    return m;
}

CopulaModel make_mardia(MardiaParams p) {
    if (!(std::abs(p.theta) <= 1.0))
        throw ParameterError("Mardia parameter must lie in [-1,1], got " + fmt_double(p.theta));
    auto m = make_frechet(p.as_frechet());
    m.label = "Mardia(" + fmt_double(p.theta) + ")";
    m.family = FamilySpec{"mardia", {p.theta}, {}};
    return m;
}

CopulaModel make_mh_copula(double a) {
    if (!(a > 0.0 && a <= 1.0))
        throw ParameterError("MH kernel slope must lie in (0,1], got " + fmt_double(a));
    const MHKernelParams kp{a};
    const double k = kp.k();
    // G(v) = integral over [0, v] of 1 - a|2t - 1|.
    auto G_low = [a](double v) { return (1.0 - a) * v + a * v * v; };
    auto G = [a, G_low](double v) {
        return v <= 0.5 ? G_low(v) : (1.0 - a / 2.0) - G_low(1.0 - v);
    };
    auto G_inv = [a](double g) {
        const double half = 0.5 - a / 4.0;
        if (g <= half) return solve_increasing_quadratic(1.0 - a, a, g);
        return 1.0 - solve_increasing_quadratic(1.0 - a, a, (1.0 - a / 2.0) - g);
    };

    CopulaModel m;
    m.label = "MH(" + fmt_double(a) + ")";
    m.density = [a, k](double u, double v) {
        return 2.0 * k * (1.0 - a * std::abs(2 * u - 1)) * (1.0 - a * std::abs(2 * v - 1));
    };
    m.density_dy = [a, k](double u, double v) {
        return -4.0 * a * k * (1.0 - a * std::abs(2 * u - 1)) * sgn(2 * v - 1);
    };
    m.ac_partial = [a, k, G](double u, double v) {
        return 2.0 * k * (1.0 - a * std::abs(2 * u - 1)) * G(v);
    };
    m.ac_quantile = [a, k, G_inv](double u, double mass) {
        const double scale = 2.0 * k * (1.0 - a * std::abs(2 * u - 1));
        return scale > 0.0 ? G_inv(mass / scale) : 0.0;
    };
    m.cdf = [kp, k](double u, double v) {
        const double x = 2 * u - 1, y = 2 * v - 1;
        return 0.5 * (kp.f(std::min(x, y)) + k * (2 * u - kp.f(x)) * (2 * v - kp.f(y)));
    };
    m.atoms.push_back(AtomicMap::identity(
        AtomWeight::function([kp](double u) { return kp.p(2 * u - 1); })));
    m.family = FamilySpec{"mh", {a}, {}};
    return m;
}

std::pair<double, double> frechet_n_step_params(double a, double b, int n) {
    if (!(a >= 0.0 && b >= 0.0 && a + b <= 1.0 + kParamSlack))
        throw ParameterError("Frechet parameters need a, b >= 0 and a + b <= 1");
    if (n < 1) throw InputError("n must be >= 1");
    const double s = std::pow(a + b, n), d = std::pow(a - b, n);
    return {0.5 * (s + d), 0.5 * (s - d)};
}

// ---------------------------------------------------------------------------
// Table densities
// ---------------------------------------------------------------------------

TableConstants resolve_table_constants(const TableDensitySpec& spec) {
    TableConstants k;
    if (!is_envelope_row(spec.row)) return k;
    if (!spec.g || !spec.h) throw InputError("rows m1..m4 need both g and h");
    constexpr std::size_t scan = 4096;
    auto extrema = [&](const Curve& f, const char* name) {
        double lo = f(0.0), hi = lo;
        for (std::size_t i = 1; i <= scan; ++i) {
            const double v = f(static_cast<double>(i) / scan);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo < 0.0 || hi > 1.0)
            throw ParameterError(std::string(name) + " must map [0,1] into [0,1]");
        return std::pair{lo, hi};
    };
    const auto [ga, gb] = extrema(spec.g, "g");
    const auto [ha, hb] = extrema(spec.h, "h");
    auto take = [&](const std::optional<double>& given, double scanned, const char* what) {
        if (given) return *given;
        k.approximate = true;
        k.warnings.push_back(std::string(what) + " estimated by grid scan; value is approximate");
        return scanned;
    };
    k.b1 = take(spec.b1, gb, "sup g");
    k.a1 = take(spec.a1, ga, "inf g");
    k.b2 = take(spec.b2, hb, "sup h");
    k.a2 = take(spec.a2, ha, "inf h");
    k.g_l1 = spec.g_l1 ? *spec.g_l1 : Primitive(spec.g).total();
    k.h_l1 = spec.h_l1 ? *spec.h_l1 : Primitive(spec.h).total();
    return k;
}

namespace {

CopulaModel envelope_row_model(const TableDensitySpec& spec, const TableConstants& k) {
    const double b1 = k.b1, a1 = k.a1, b2 = k.b2, a2 = k.a2, G = k.g_l1, H = k.h_l1;
    const Curve g = spec.g, h = spec.h;
    auto Hv = std::make_shared<const Primitive>(h);

    // Numerators as printed and their y-primitives; D normalizes both.
    Density num, num_partial;
    double D = 0.0;
    switch (spec.row) {
        case TableRow::M1:
        case TableRow::M2: {
            const double top = spec.row == TableRow::M1 ? b1 : b1 * b2;
            D = top + G * H;
            num = [=](double x, double y) { return top - g(x) * h(y) + h(y) * G + g(x) * H; };
            num_partial = [=](double x, double v) {
                const double hv = (*Hv)(v);
                return top * v - g(x) * hv + hv * G + g(x) * H * v;
            };
            break;
        }
        case TableRow::M3: {
            const double top = b1 * (b2 - a2);
            D = top + G * (b2 - H);
            num = [=](double x, double y) {
                return top - g(x) * (b2 - h(y)) + (b2 - h(y)) * G + g(x) * (b2 - H);
            };
            num_partial = [=](double x, double v) {
                const double hv = b2 * v - (*Hv)(v);
                return top * v - g(x) * hv + hv * G + g(x) * (b2 - H) * v;
            };
            break;
        }
        case TableRow::M4: {
            const double top = (b1 - a1) * (b2 - a2);
            D = top + (b1 - G) * (b2 - H);
            num = [=](double x, double y) {
                return top - (b1 - g(x)) * (b2 - h(y)) + (b2 - h(y)) * (b1 - G) +
                       (b1 - g(x)) * (b2 - H);
            };
            num_partial = [=](double x, double v) {
                const double hv = b2 * v - (*Hv)(v);
                return top * v - (b1 - g(x)) * hv + hv * (b1 - G) + (b1 - g(x)) * (b2 - H) * v;
            };
            break;
        }
        default: break;
    }
    if (!(D > 0.0) || !std::isfinite(D))
        throw ParameterError("degenerate " + std::string(to_string(spec.row)) +
                             " spec: normalizing constant is " + fmt_double(D) +
                             " (constant g or h?)");
    CopulaModel m;
    m.label = std::string(to_string(spec.row));
    m.density = [num, D](double x, double y) { return num(x, y) / D; };
    m.ac_partial = [num_partial, D](double x, double v) { return num_partial(x, v) / D; };
    if (spec.dh) {
        // Every numerator is affine in h(y); its slope in h depends on x only.
        Curve slope;
        switch (spec.row) {
            case TableRow::M1:
            case TableRow::M2: slope = [=](double x) { return G - g(x); }; break;
            case TableRow::M3: slope = [=](double x) { return g(x) - G; }; break;
            default: slope = [=](double x) { return G - g(x); }; break;
        }
        m.density_dy = [slope, dh = spec.dh, D](double x, double y) { return slope(x) * dh(y) / D; };
    }
    return m;
}

CopulaModel phi_row_model(const TableDensitySpec& spec) {
    const double a = spec.a, theta = spec.theta, cc = spec.c;
    if (!(a > 0.0 && a <= 1.0)) throw ParameterError("table row needs a in (0,1]");
    if ((spec.row == TableRow::T3_2 || spec.row == TableRow::T3_3) &&
        !(std::abs(theta) <= 2.0 * a + kParamSlack))
        throw ParameterError("table row needs theta in [-2a, 2a]");
    if ((spec.row == TableRow::T3_3 || spec.row == TableRow::T3_4) && !(cc >= 0.0))
        throw ParameterError("table row needs c >= 0");

    // s(x) = x^(1/a - 1) sign(1/2 - x^(1/a)).
    const Curve s = [a](double x) {
        return std::pow(x, 1.0 / a - 1.0) * sgn(0.5 - std::pow(x, 1.0 / a));
    };
    CopulaModel m;
    m.label = std::string(to_string(spec.row));
    // density = base + slope * s(x) * (2y - 1), all rows.
    double base = 1.0, slope = 0.0, scale = 1.0;
    switch (spec.row) {
        case TableRow::T3_1: {
            const double K = 3.0 / std::pow(2.0, 2.0 - a);
            scale = 1.0 + K;
            base = (K + 1.0) / scale;
            slope = -0.5 / scale;
            break;
        }
        case TableRow::T3_2: slope = theta / (2.0 * a); break;
        case TableRow::T3_3:
            scale = 1.0 + cc;
            base = (cc + 1.0) / scale;
            slope = theta / (2.0 * a) / scale;
            break;
        case TableRow::T3_4:
            scale = 1.0 + cc;
            base = (cc + 1.0) / scale;
            slope = -0.5 / scale;
            break;
        default: break;
    }
    m.density = [=](double x, double y) { return base + slope * s(x) * (2 * y - 1); };
    m.density_dy = [=](double x, double) { return 2.0 * slope * s(x); };
    m.ac_partial = [=](double x, double v) { return base * v + slope * s(x) * (v * v - v); };
    m.ac_quantile = [=](double x, double mass) {
        const double t = slope * s(x);
        return solve_increasing_quadratic(base - t, t, mass);
    };
    return m;
}

}  // namespace

TableModel make_table_density(const TableDensitySpec& spec, const Grid& grid) {
    TableModel out;
    if (is_envelope_row(spec.row)) {
        out.constants = resolve_table_constants(spec);
        out.model = envelope_row_model(spec, out.constants);
    } else {
        out.model = phi_row_model(spec);
    }
    std::vector<double> params;
    if (is_envelope_row(spec.row)) {
        params = {out.constants.b1, out.constants.a1, out.constants.b2, out.constants.a2,
                  out.constants.g_l1, out.constants.h_l1};
    } else {
        params = {spec.theta, spec.a, spec.c};
    }
    out.model.family = FamilySpec{std::string(to_string(spec.row)), params, {}};
    out.report = validate_copula(out.model, grid, grid.tolerance());
    return out;
}

}  // namespace copmix
