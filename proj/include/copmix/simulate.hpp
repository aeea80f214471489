#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "copmix/copula.hpp"
#include "copmix/rng.hpp"

namespace copmix {

struct Trajectory {
    std::vector<double> states;
    std::uint64_t seed = 0;
    std::string label;

    /// One `state` column below a one-line JSON header starting with '#'.
    [[nodiscard]] std::string to_csv() const;
};

struct DecaySeries {
    std::vector<int> lags;
    std::vector<double> values;
    std::vector<double> standard_errors;
};

/// Stationary chain started at a uniform draw. Atoms are chosen categorically,
/// the absolutely continuous part is inverted (closed form or bisection).
Trajectory sample_chain(const CopulaModel& model, std::size_t length, std::uint64_t seed);
Trajectory sample_chain(const CopulaModel& model, std::size_t length, Rng& rng);

/// One transition X_{t+1} given X_t = x.
double sample_step(const CopulaModel& model, double x, Rng& rng);

/// Chain on [-1, 1] that stays with probability a|x| and otherwise draws from
/// k (1 - a|t|) by inversion.
Trajectory sample_mh_kernel(double a, std::size_t length, std::uint64_t seed);
Trajectory sample_mh_kernel(double a, std::size_t length, Rng& rng);

/// Lag correlations of f along the trajectory with batch-means standard errors.
DecaySeries empirical_corr_decay(const Trajectory& traj, const Curve& f, const std::vector<int>& lags,
                                 std::size_t batches = 20);

/// Correlation of f(X_0) and f(X_lag) across independent trajectories. Works
/// for chains that never leave a level set of f, where a single path carries
/// no variance.
DecaySeries ensemble_corr_decay(const std::vector<Trajectory>& paths, const Curve& f,
                                const std::vector<int>& lags, std::size_t batches = 20);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b| (ties handled).
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// One-sample statistic against the uniform law on [0,1].
double ks_uniform(std::vector<double> sample);
/// Asymptotic 1% critical values.
double ks_critical_1pct(std::size_t n, std::size_t m);
double ks_critical_1pct(std::size_t n);

}  // namespace copmix
