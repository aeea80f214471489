#include "copmix/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "copmix/error.hpp"
#include "copmix/families.hpp"

namespace copmix {

std::string Trajectory::to_csv() const {
    nlohmann::ordered_json header;
    header["schema_version"] = 1;
    header["model"] = label;
    header["seed"] = seed;
    header["length"] = states.size();
    std::string out = "# " + header.dump() + "\nstate\n";
    char buf[32];
    for (double s : states) {
        std::snprintf(buf, sizeof buf, "%.17g\n", s);
        out += buf;
    }
    return out;
}

namespace {

constexpr double kInversionTol = 1e-12;

double invert_ac(const CopulaModel& model, double x, double mass) {
    if (model.ac_quantile) return std::clamp(model.ac_quantile(x, mass), 0.0, 1.0);
    auto partial = [&](double v) {
        return model.ac_partial ? model.ac_partial(x, v) : ac_conditional(model, x, v);
    };
    double lo = 0.0, hi = 1.0;
    const double top = partial(1.0);
    if (!std::isfinite(top)) {
        std::ostringstream os;
        os << "conditional CDF not finite at state x = " << x;
        throw NumericError(os.str());
    }
    if (mass >= top) return 1.0;
    int iter = 0;
    while (hi - lo > kInversionTol) {
        const double mid = 0.5 * (lo + hi);
        if (partial(mid) < mass) lo = mid;
        else hi = mid;
        if (++iter > 200) {
            std::ostringstream os;
            os << "inversion did not converge at state x = " << x;
            throw NumericError(os.str());
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double sample_step(const CopulaModel& model, double x, Rng& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (const auto& atom : model.atoms) {
        acc += atom.weight(x);
        if (u < acc) return atom.apply(x);
    }
    if (!model.density) {
        // Rounding left a sliver of mass outside the atoms; assign it to the last one.
        if (model.atoms.empty()) throw InputError("model has neither density nor atoms");
        return model.atoms.back().apply(x);
    }
    return invert_ac(model, x, u - acc);
}

Trajectory sample_chain(const CopulaModel& model, std::size_t length, Rng& rng) {
    if (length < 1) throw InputError("trajectory length must be at least 1");
    Trajectory t;
    t.label = model.label;
    t.states.reserve(length);
    double x = uniform01(rng);
    t.states.push_back(x);
    while (t.states.size() < length) {
        x = sample_step(model, x, rng);
        t.states.push_back(x);
    }
    return t;
}

Trajectory sample_chain(const CopulaModel& model, std::size_t length, std::uint64_t seed) {
    Rng rng(seed);
    auto t = sample_chain(model, length, rng);
    t.seed = seed;
    return t;
}

Trajectory sample_mh_kernel(double a, std::size_t length, Rng& rng) {
    if (!(a > 0.0 && a <= 1.0)) throw ParameterError("MH kernel slope must lie in (0,1]");
    if (length < 1) throw InputError("trajectory length must be at least 1");
    const double half = 1.0 - a / 2.0;  // unnormalized mass of [-1, 0]
    // Position t with t + 1 - f(t) = y, f the integrated stay probability.
    auto draw = [&](double u) {
        const double y = u * 2.0 * half;
        if (y <= half) return solve_increasing_quadratic(1.0 - a, a / 2.0, y) - 1.0;
        return 1.0 - solve_increasing_quadratic(1.0 - a, a / 2.0, 2.0 * half - y);
    };
    Trajectory t;
    t.label = "MH-kernel(" + std::to_string(a) + ")";
    t.states.reserve(length);
    double x = 2.0 * uniform01(rng) - 1.0;
    t.states.push_back(x);
    while (t.states.size() < length) {
        if (uniform01(rng) >= a * std::abs(x)) x = draw(uniform01(rng));
        t.states.push_back(x);
    }
    return t;
}

Trajectory sample_mh_kernel(double a, std::size_t length, std::uint64_t seed) {
    Rng rng(seed);
    auto t = sample_mh_kernel(a, length, rng);
    t.seed = seed;
    return t;
}

namespace {

double pearson(const std::vector<double>& first, const std::vector<double>& second,
               std::size_t begin, std::size_t end) {
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    const double n = static_cast<double>(end - begin);
    for (std::size_t t = begin; t < end; ++t) {
        const double p = first[t], q = second[t];
        sa += p;
        sb += q;
        saa += p * p;
        sbb += q * q;
        sab += p * q;
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double va = saa / n - (sa / n) * (sa / n);
    const double vb = sbb / n - (sb / n) * (sb / n);
    if (!(va > 0.0 && vb > 0.0)) return std::nan("");
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

/// Correlation over all pairs with a batch-means standard error.
void push_lag(DecaySeries& out, int lag, const std::vector<double>& first,
              const std::vector<double>& second, std::size_t batches) {
    const std::size_t pairs = first.size();
    if (pairs < 2 * batches) throw InputError("too few pairs for lag " + std::to_string(lag));
    const double r = pearson(first, second, 0, pairs);
    if (std::isnan(r)) throw InputError("correlation undefined at lag " + std::to_string(lag));
    const std::size_t size = pairs / batches;
    double s = 0, ss = 0;
    std::size_t used = 0;
    for (std::size_t b = 0; b < batches; ++b) {
        const double rb = pearson(first, second, b * size, (b + 1) * size);
        if (std::isnan(rb)) continue;
        s += rb;
        ss += rb * rb;
        ++used;
    }
    double se = NAN;
    if (used >= 2) {
        const double mean = s / used;
        const double var = std::max(0.0, (ss - used * mean * mean) / (used - 1));
        se = std::sqrt(var / used);
    }
    out.lags.push_back(lag);
    out.values.push_back(r);
    out.standard_errors.push_back(se);
}

void require_nonconstant(const std::vector<double>& y) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (y.empty() || !(*hi - *lo > 1e-14 * std::max(1.0, std::abs(*hi))))
        throw InputError("correlation undefined: f is constant on the sample");
}

}  // namespace

DecaySeries empirical_corr_decay(const Trajectory& traj, const Curve& f, const std::vector<int>& lags,
                                 std::size_t batches) {
    if (batches < 2) throw InputError("need at least two batches for standard errors");
    std::vector<double> y(traj.states.size());
    std::transform(traj.states.begin(), traj.states.end(), y.begin(), f);
    require_nonconstant(y);
    DecaySeries out;
    for (int lag : lags) {
        if (lag < 0) throw InputError("lags must be nonnegative");
        const auto l = static_cast<std::size_t>(lag);
        if (y.size() <= l) throw InputError("trajectory too short for lag " + std::to_string(lag));
        const std::vector<double> first(y.begin(), y.end() - static_cast<std::ptrdiff_t>(l));
        const std::vector<double> second(y.begin() + static_cast<std::ptrdiff_t>(l), y.end());
        push_lag(out, lag, first, second, batches);
    }
    return out;
}

DecaySeries ensemble_corr_decay(const std::vector<Trajectory>& paths, const Curve& f,
                                const std::vector<int>& lags, std::size_t batches) {
    if (batches < 2) throw InputError("need at least two batches for standard errors");
    DecaySeries out;
    std::vector<double> starts;
    for (const auto& p : paths) starts.push_back(f(p.states.front()));
    require_nonconstant(starts);
    for (int lag : lags) {
        if (lag < 0) throw InputError("lags must be nonnegative");
        const auto l = static_cast<std::size_t>(lag);
        std::vector<double> second;
        for (const auto& p : paths) {
            if (p.states.size() <= l) throw InputError("trajectory too short for lag " + std::to_string(lag));
            second.push_back(f(p.states[l]));
        }
        push_lag(out, lag, starts, second, batches);
    }
    return out;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InputError("KS test needs two nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_uniform(std::vector<double> sample) {
    if (sample.empty()) throw InputError("KS test needs a nonempty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double u = std::clamp(sample[i], 0.0, 1.0);
        d = std::max({d, (i + 1) / n - u, u - i / n});
    }
    return d;
}

// c(0.01) = sqrt(-ln(0.005) / 2) = 1.628.
double ks_critical_1pct(std::size_t n, std::size_t m) {
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return 1.628 * std::sqrt((nn + mm) / (nn * mm));
}

double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

}  // namespace copmix
