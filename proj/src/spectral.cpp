#include "copmix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "copmix/bounds.hpp"
#include "copmix/error.hpp"

namespace copmix {

namespace {

/// Linear interpolation weights of a point y between neighbouring nodes.
struct Stencil {
    std::size_t lo = 0, hi = 0;
    double t = 0.0;  // weight of hi
};

Stencil stencil(const Grid& grid, double y) {
    const auto nodes = grid.nodes();
    const std::size_t n = nodes.size();
    if (y <= nodes.front()) return {0, 0, 0.0};
    if (y >= nodes.back()) return {n - 1, n - 1, 0.0};
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), y);
    const std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
    const std::size_t lo = hi - 1;
    return {lo, hi, (y - nodes[lo]) / (nodes[hi] - nodes[lo])};
}

double l2_norm(const Grid& grid, const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += grid.weight(i) * f[i] * f[i];
    return std::sqrt(s);
}

}  // namespace

std::vector<double> TransferOperator::apply_uncentered(const std::vector<double>& f) const {
    auto out = apply_centered(f);
    const double mean = grid.integrate([&, i = std::size_t{0}](double) mutable { return f[i++]; });
    for (auto& v : out) v += mean;
    return out;
}

std::vector<double> TransferOperator::apply_centered(const std::vector<double>& f) const {
    const std::size_t n = grid.size();
    if (f.size() != n) throw InputError("apply: vector length does not match the grid");
    Eigen::VectorXd g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::sqrt(grid.weight(i)) * f[i];
    const Eigen::VectorXd r = matrix * g;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = r[i] / std::sqrt(grid.weight(i));
    return out;
}

TransferOperator assemble_operator(const CopulaModel& model, const Grid& grid) {
    const std::size_t n = grid.size();
    TransferOperator op{Eigen::MatrixXd::Zero(n, n), grid, false, {}, 0.0, 0.0};
    std::vector<double> sw(n);
    for (std::size_t i = 0; i < n; ++i) sw[i] = std::sqrt(grid.weight(i));

    op.row_mass.assign(n, 0.0);
    if (model.density) {
        const auto table = density_table(model, grid);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double c = table[i * n + j];
                op.matrix(i, j) = sw[i] * (c - 1.0) * sw[j];
                op.row_mass[i] += grid.weight(j) * c;
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) op.matrix(i, j) = -sw[i] * sw[j];
    }

    for (const auto& atom : model.atoms) {
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid.node(i);
            const double w = atom.weight(x);
            if (!std::isfinite(w)) {
                std::ostringstream os;
                os << "atom weight not finite at x = " << x;
                throw NumericError(os.str());
            }
            op.row_mass[i] += w;
            switch (atom.kind) {
                case MapKind::Identity:
                    op.matrix(i, i) += w;
                    break;
                case MapKind::Flip: {
                    const std::size_t k = grid.mirror(i);
                    op.matrix(i, k) += w * sw[i] / sw[k];
                    break;
                }
                case MapKind::Curve: {
                    const auto s = stencil(grid, atom.apply(x));
                    op.matrix(i, s.lo) += w * (1.0 - s.t) * sw[i] / sw[s.lo];
                    if (s.t > 0.0) op.matrix(i, s.hi) += w * s.t * sw[i] / sw[s.hi];
                    break;
                }
            }
        }
    }

    for (double m : op.row_mass)
        op.stochastic_residual = std::max(op.stochastic_residual, std::abs(m - 1.0));
    Eigen::VectorXd ones(n);
    for (std::size_t i = 0; i < n; ++i) ones[i] = sw[i];
    op.centering_residual = (op.matrix * ones).norm();
    op.symmetric = (op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff() <= kSymmetryThreshold;
    return op;
}

double rho1_estimate(const TransferOperator& op) {
    const auto n = op.matrix.rows();
    if (n == 0) throw InputError("rho1_estimate: empty operator");
    if (n <= 1024) {
        if (op.symmetric) {
            const Eigen::MatrixXd sym = 0.5 * (op.matrix + op.matrix.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
            return es.eigenvalues().cwiseAbs().maxCoeff();
        }
        Eigen::BDCSVD<Eigen::MatrixXd> svd(op.matrix);
        return svd.singularValues()[0];
    }
    // Power iteration on M^T M with a deterministic start.
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0);
    v.normalize();
    double sigma2 = 0.0, residual = 0.0;
    constexpr int kMaxIter = 5000;
    for (int it = 0; it < kMaxIter; ++it) {
        const Eigen::VectorXd w = op.matrix.transpose() * (op.matrix * v);
        const double next = v.dot(w);
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;
        residual = (w - next * v).norm();
        v = w / wn;
        if (std::abs(next - sigma2) <= 1e-13 * std::max(1.0, next) && residual <= 1e-8 * std::max(1.0, next))
            return std::sqrt(std::max(0.0, next));
        sigma2 = next;
    }
    std::ostringstream os;
    os << "power iteration did not converge, residual " << residual;
    throw NumericError(os.str());
}

SpectralDecomposition spectral_decomposition(const TransferOperator& op) {
    if (!op.symmetric)
        throw NotApplicableError("spectral_decomposition needs a symmetric (reversible) operator");
    const Eigen::MatrixXd sym = 0.5 * (op.matrix + op.matrix.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
    const auto n = static_cast<std::size_t>(sym.rows());
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    const auto& ev = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(ev[static_cast<Eigen::Index>(a)]) > std::abs(ev[static_cast<Eigen::Index>(b)]);
    });
    SpectralDecomposition out;
    for (std::size_t k : order) {
        const auto col = static_cast<Eigen::Index>(k);
        out.eigenvalues.push_back(ev[col]);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i)
            f[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), col) / std::sqrt(op.grid.weight(i));
        out.eigenfunctions.push_back(std::move(f));
    }
    return out;
}

std::vector<double> excess_mass_profile(const CopulaModel& model, const Grid& grid) {
    const std::size_t n = grid.size();
    std::vector<double> out(n, 0.0);
    if (model.density) {
        const auto table = density_table(model, grid);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += grid.weight(j) * std::max(0.0, table[i * n + j] - 1.0);
            out[i] = s;
        }
    }
    for (std::size_t i = 0; i < n; ++i) out[i] += model.atom_mass(grid.node(i));
    return out;
}

double beta_n(const CopulaModel& model, int n, const Grid& grid) {
    if (n < 1) throw InputError("beta_n needs n >= 1");
    const auto row = excess_mass_profile(n_step(model, n, grid), grid);
    double s = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) s += grid.weight(i) * row[i];
    return s;
}

double phi_n(const CopulaModel& model, int n, const Grid& grid) {
    if (n < 1) throw InputError("phi_n needs n >= 1");
    const auto row = excess_mass_profile(n_step(model, n, grid), grid);
    return *std::max_element(row.begin(), row.end());
}

WitnessResult no_mixing_witness(const CopulaModel& model, const Grid& grid) {
    const std::size_t n = grid.size();
    auto f = [](double x) { return std::cos(2.0 * std::numbers::pi * x); };
    const auto fs = grid.sample(f);
    std::vector<double> qf(n, 0.0);
    if (model.density) {
        const auto table = density_table(model, grid);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) qf[i] += grid.weight(j) * table[i * n + j] * fs[j];
    }
    for (const auto& atom : model.atoms)
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid.node(i);
            qf[i] += atom.weight(x) * f(atom.apply(x));
        }
    for (std::size_t i = 0; i < n; ++i) qf[i] -= fs[i];
    WitnessResult r;
    r.residual = l2_norm(grid, qf);
    r.is_fixed = r.residual <= 10.0 * grid.tolerance();
    return r;
}

double claim1_basis_bound(const CopulaModel& model, const Grid& grid, int n_terms) {
    if (n_terms < 1) throw InputError("claim1_basis_bound needs n_terms >= 1");
    if (model.has_atoms()) throw NotApplicableError("claim1_basis_bound needs a model without atoms");
    if (!model.density) throw InputError("claim1_basis_bound needs a density");
    const std::size_t n = grid.size();
    const auto table = density_table(model, grid);
    const double root2 = std::numbers::sqrt2;
    double total = 0.0;
    std::vector<double> e(n), te(n);
    for (int k = 1; k <= n_terms; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < n; ++j) {
                const double arg = 2.0 * std::numbers::pi * k * grid.node(j);
                e[j] = root2 * (pass == 0 ? std::sin(arg) : std::cos(arg));
            }
            for (std::size_t i = 0; i < n; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < n; ++j) s += grid.weight(j) * table[i * n + j] * e[j];
                te[i] = s;
            }
            const double norm = l2_norm(grid, te);
            total += norm * norm;
        }
    }
    return total;
}

double claim1_tail_bound(const CopulaModel& model, const Grid& grid, int n_terms) {
    if (n_terms < 1) throw InputError("claim1_tail_bound needs n_terms >= 1");
    const auto t3 = theorem3_bound(model, grid);
    return t3.value / (2.0 * std::numbers::pi * std::numbers::pi * n_terms);
}

MixingReport mixing_report(const CopulaModel& model, int nmax, const Grid& grid) {
    if (nmax < 1) throw InputError("mixing_report needs nmax >= 1");
    MixingReport r;
    r.label = model.label;
    CopulaModel step = model;
    for (int k = 1; k <= nmax; ++k) {
        if (k > 1) step = fold(step, model, grid);
        const auto op = assemble_operator(step, grid);
        r.rho_k.push_back(rho1_estimate(op));
        const auto row = excess_mass_profile(step, grid);
        double b = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) b += grid.weight(i) * row[i];
        r.beta.push_back(b);
        r.phi.push_back(*std::max_element(row.begin(), row.end()));
    }
    r.rho1 = r.rho_k.front();
    for (int k = 1; k <= nmax; ++k) r.rho1_pow.push_back(std::pow(r.rho1, k));

    const double tol = grid.tolerance();
    for (int k = 1; k <= nmax; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        if (r.rho_k[i] > r.rho1_pow[i] + tol) {
            std::ostringstream os;
            os << "rho_" << k << " exceeds rho1^" << k << " beyond tolerance";
            r.notes.push_back(os.str());
        }
    }
    if (model.density_dy && !model.has_atoms()) {
        const auto t3 = theorem3_bound(model, grid);
        r.certified_bounds.push_back({"theorem3", t3.extras.at("rho1_bound"), t3.satisfied});
    }
    if (model.density) {
        const auto env = envelope_extract(model, grid);
        try {
            const auto eb = envelope_bound(env, grid);
            r.certified_bounds.push_back({"envelope", eb.value, eb.satisfied});
        } catch (const InfeasibleEnvelopeError& e) {
            r.notes.push_back(e.what());
        }
    }
    return r;
}

std::string MixingReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["label"] = label;
    j["rho1"] = rho1;
    j["rho_k"] = rho_k;
    j["beta_n"] = beta;
    j["phi_n"] = phi;
    j["rho1_pow_n"] = rho1_pow;
    auto& bounds = j["certified_bounds"] = nlohmann::ordered_json::array();
    for (const auto& b : certified_bounds)
        bounds.push_back({{"name", b.name}, {"value", b.value}, {"satisfied", b.satisfied}});
    j["notes"] = notes;
    return j.dump(2);
}

std::string MixingReport::to_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "n,beta_n,phi_n,rho1_pow_n\n";
    for (std::size_t i = 0; i < beta.size(); ++i)
        os << (i + 1) << ',' << beta[i] << ',' << phi[i] << ',' << rho1_pow[i] << '\n';
    return os.str();
}

}  // namespace copmix
