#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "copmix/grid.hpp"

namespace copmix {

struct RunConfig {
    std::size_t N = 512;
    QuadratureScheme scheme = QuadratureScheme::Midpoint;
    std::uint64_t seed = 42;

    [[nodiscard]] Grid grid() const { return Grid::make(scheme, N); }
};

/// Outcome of one acceptance check. `data` holds every number behind the
/// verdict; `series` are optional CSV tables (name -> text).
struct CheckResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    nlohmann::ordered_json data;
    std::vector<std::pair<std::string, std::string>> series;
};

// Tolerances used by the checks.
inline constexpr double kRhoTol = 1e-3;
inline constexpr double kRhoPowerTol = 2e-3;
inline constexpr double kQuadConstTol = 1e-6;
inline constexpr double kExactTol = 1e-14;
inline constexpr double kWitnessTol = 1e-6;
inline constexpr double kRootTol = 5e-3;
inline constexpr double kClosedFormTol = 1e-4;
inline constexpr double kBoundTol = 1e-3;
inline constexpr double kSandwichTol = 1e-3;
inline constexpr std::size_t kKsPairs = 100000;
inline constexpr std::size_t kRandomPairs = 200;

CheckResult check_fgm_spectral(const RunConfig& cfg);
CheckResult check_smoothness_constants(const RunConfig& cfg);
CheckResult check_frechet_closed_form(const RunConfig& cfg);
CheckResult check_frechet_mixing(const RunConfig& cfg);
CheckResult check_archimedean_roots(const RunConfig& cfg);
CheckResult check_envelope_soundness(const RunConfig& cfg);
CheckResult check_mh_kernel(const RunConfig& cfg);
CheckResult check_drift(const RunConfig& cfg);
CheckResult check_properties(const RunConfig& cfg);

/// Checks 1..9 in order. Independent checks run concurrently; the result
/// order and content do not depend on scheduling.
std::vector<CheckResult> run_checks(const RunConfig& cfg);

/// Writes report.json, one CSV per series and summary.md under `dir`.
void write_report(const std::vector<CheckResult>& results, const RunConfig& cfg,
                  const std::filesystem::path& dir);

}  // namespace copmix
