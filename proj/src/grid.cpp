#include "copmix/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "copmix/error.hpp"

namespace copmix {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Input: return "input";
        case ErrorKind::Parameter: return "parameter";
        case ErrorKind::Numeric: return "numeric";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::NotApplicable: return "not-applicable";
        case ErrorKind::Bracket: return "bracket";
        case ErrorKind::SingularCopula: return "singular-copula";
        case ErrorKind::InfeasibleEnvelope: return "infeasible-envelope";
    }
    return "unknown";
}

std::string_view to_string(QuadratureScheme scheme) noexcept {
    return scheme == QuadratureScheme::Midpoint ? "midpoint" : "gauss-legendre";
}

QuadratureScheme parse_scheme(std::string_view name) {
    if (name == "midpoint") return QuadratureScheme::Midpoint;
    if (name == "gauss-legendre" || name == "gl") return QuadratureScheme::GaussLegendre;
    throw InputError("unknown quadrature scheme '" + std::string(name) + "'");
}

void gauss_legendre_rule(std::size_t n, double lo, double hi,
                         std::vector<double>& nodes, std::vector<double>& weights) {
    if (n == 0) throw InputError("Gauss-Legendre rule needs at least one point");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    const std::size_t m = (n + 1) / 2;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < m; ++i) {
        // Tricomi initial guess, refined by Newton on P_n.
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (std::size_t k = 2; k <= n; ++k) {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * z * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            dp = dn * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = mid - half * z;
        nodes[n - 1 - i] = mid + half * z;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
}

Grid::Grid(QuadratureScheme scheme, std::vector<double> nodes, std::vector<double> weights)
    : scheme_(scheme), nodes_(std::move(nodes)), weights_(std::move(weights)) {
    const std::size_t n = nodes_.size();
    edges_.resize(n + 1);
    if (scheme_ == QuadratureScheme::Midpoint) {
        for (std::size_t i = 0; i <= n; ++i)
            edges_[i] = static_cast<double>(i) / static_cast<double>(n);
        return;
    }
    double total = 0.0;
    for (double w : weights_) total += w;
    for (double& w : weights_) w /= total;
    edges_[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) edges_[i + 1] = edges_[i] + weights_[i];
    edges_.back() = 1.0;
}

Grid Grid::midpoint(std::size_t n) {
    if (n == 0) throw InputError("grid size must be positive");
    std::vector<double> nodes(n), weights(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        nodes[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return Grid(QuadratureScheme::Midpoint, std::move(nodes), std::move(weights));
}

Grid Grid::gauss_legendre(std::size_t n) {
    std::vector<double> nodes, weights;
    gauss_legendre_rule(n, 0.0, 1.0, nodes, weights);
    return Grid(QuadratureScheme::GaussLegendre, std::move(nodes), std::move(weights));
}

Grid Grid::make(QuadratureScheme scheme, std::size_t n) {
    return scheme == QuadratureScheme::Midpoint ? midpoint(n) : gauss_legendre(n);
}

std::size_t Grid::cell_of(double x) const noexcept {
    auto it = std::upper_bound(edges_.begin() + 1, edges_.end() - 1, x);
    return static_cast<std::size_t>(it - (edges_.begin() + 1));
}

}  // namespace copmix
