#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace copmix {

enum class QuadratureScheme { Midpoint, GaussLegendre };

std::string_view to_string(QuadratureScheme scheme) noexcept;
QuadratureScheme parse_scheme(std::string_view name);

/// One-dimensional quadrature mesh on [0,1]. Every integral and every operator
/// in the library is discretized on one of these.
///
/// Nodes are strictly increasing, lie in the open interval, and are symmetric
/// about 1/2 (node N-1-i is 1 - node i) for both schemes. Weights sum to one.
/// Each node owns a cell [edge(i), edge(i+1)) whose width equals its weight.
class Grid {
public:
    static Grid midpoint(std::size_t n);
    static Grid gauss_legendre(std::size_t n);
    static Grid make(QuadratureScheme scheme, std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] QuadratureScheme scheme() const noexcept { return scheme_; }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] std::span<const double> edges() const noexcept { return edges_; }
    [[nodiscard]] double node(std::size_t i) const { return nodes_[i]; }
    [[nodiscard]] double weight(std::size_t i) const { return weights_[i]; }

    /// Index of the node mirrored through 1/2.
    [[nodiscard]] std::size_t mirror(std::size_t i) const noexcept { return size() - 1 - i; }

    /// Index of the cell containing x (clamped to the mesh).
    [[nodiscard]] std::size_t cell_of(double x) const noexcept;

    /// Default tolerance for quantities obtained by quadrature on this mesh: 5/N.
    [[nodiscard]] double tolerance() const noexcept { return 5.0 / static_cast<double>(size()); }

    template <class F>
    [[nodiscard]] double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(nodes_[i]);
        return s;
    }

    /// Samples f at every node.
    template <class F>
    [[nodiscard]] std::vector<double> sample(F&& f) const {
        std::vector<double> out(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = f(nodes_[i]);
        return out;
    }

    friend bool operator==(const Grid& a, const Grid& b) noexcept {
        return a.scheme_ == b.scheme_ && a.nodes_.size() == b.nodes_.size();
    }

private:
    Grid(QuadratureScheme scheme, std::vector<double> nodes, std::vector<double> weights);

    QuadratureScheme scheme_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> edges_;
};

/// Gauss-Legendre nodes and weights on [lo, hi] with n points.
void gauss_legendre_rule(std::size_t n, double lo, double hi,
                         std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace copmix
