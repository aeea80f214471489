#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "copmix/copula.hpp"

namespace copmix {

/// Weight a on M and b on W; the remaining 1-a-b sits on independence.
struct FrechetParams {
    double a = 0.0;
    double b = 0.0;
};

struct MardiaParams {
    double theta = 0.0;

    /// a = theta^2 (1 + theta) / 2, b = theta^2 (1 - theta) / 2.
    [[nodiscard]] FrechetParams as_frechet() const noexcept;
};

/// Metropolis-type kernel with stay probability p(x) = a|x| on [-1, 1].
struct MHKernelParams {
    double a = 1.0;

    [[nodiscard]] double k() const noexcept { return 1.0 / (2.0 - a); }
    [[nodiscard]] double p(double x) const noexcept;
    /// f(x) = integral of p(t) over [-1, x].
    [[nodiscard]] double f(double x) const noexcept;
};

enum class TableRow { M1, M2, M3, M4, T3_1, T3_2, T3_3, T3_4 };

std::string_view to_string(TableRow row) noexcept;
TableRow parse_table_row(std::string_view name);
[[nodiscard]] inline bool is_envelope_row(TableRow r) noexcept {
    return r == TableRow::M1 || r == TableRow::M2 || r == TableRow::M3 || r == TableRow::M4;
}

/// Inputs for the densities built from two functions g, h : [0,1] -> [0,1]
/// (rows m1..m4) and for the four phi-mixing rows (t3_*).
///
/// Extrema and L1 norms of g, h may be supplied; missing ones are estimated
/// by a fine scan, which is flagged as approximate.
struct TableDensitySpec {
    TableRow row = TableRow::M1;
    Curve g;
    Curve h;
    Curve dh;  ///< optional h'; enables the y-derivative of the density
    std::optional<double> b1, a1, b2, a2;  ///< sup g, inf g, sup h, inf h
    std::optional<double> g_l1, h_l1;
    double theta = 0.0;
    double a = 1.0;
    double c = 0.0;
};

struct TableConstants {
    double b1 = 0, a1 = 0, b2 = 0, a2 = 0, g_l1 = 0, h_l1 = 0;
    bool approximate = false;
    std::vector<std::string> warnings;
};

struct TableModel {
    CopulaModel model;
    ValidationReport report;
    TableConstants constants;
};

CopulaModel make_independence();
CopulaModel make_fgm(double theta);
CopulaModel make_frechet(FrechetParams p);
CopulaModel make_mardia(MardiaParams p);
CopulaModel make_mh_copula(double a);

/// Fills in any missing sup/inf/L1 values of g and h.
TableConstants resolve_table_constants(const TableDensitySpec& spec);

/// Builds the printed density for the requested row and validates it on
/// `grid` at tolerance `grid.tolerance()`. Invalid densities are returned with
/// a failing report rather than rejected.
TableModel make_table_density(const TableDensitySpec& spec, const Grid& grid);

/// (a_n, b_n) of the n-step Frechet copula.
std::pair<double, double> frechet_n_step_params(double a, double b, int n);

/// Smallest root in [0,1] of q v^2 + l v = m for an increasing quadratic.
double solve_increasing_quadratic(double l, double q, double m);

}  // namespace copmix
