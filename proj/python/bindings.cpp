// Python bindings. Structured results travel as JSON text and are decoded
// on the Python side, so the schema matches the CLI output.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "copmix/archimedean.hpp"
#include "copmix/bounds.hpp"
#include "copmix/ergodicity.hpp"
#include "copmix/error.hpp"
#include "copmix/registry.hpp"
#include "copmix/reproduce.hpp"
#include "copmix/simulate.hpp"
#include "copmix/spectral.hpp"

namespace py = pybind11;
using namespace copmix;

namespace {

Grid grid_for(std::size_t n, const std::string& scheme) { return Grid::make(parse_scheme(scheme), n); }

std::string validate_json(const std::string& family, const std::vector<double>& params, std::size_t n,
                          const std::string& scheme) {
    const auto g = grid_for(n, scheme);
    const auto r = validate_copula(make_model(family, params, g), g, g.tolerance());
    nlohmann::ordered_json j;
    j["ok"] = r.ok();
    j["grounded_ok"] = r.grounded_ok;
    j["margins_ok"] = r.margins_ok;
    j["two_increasing_ok"] = r.two_increasing_ok;
    j["worst_violation"] = r.worst_violation;
    j["tolerance"] = r.tolerance;
    return j.dump();
}

std::string bound_json(const std::string& name, const std::string& family, const std::vector<double>& params,
                       std::size_t n, const std::string& scheme) {
    if (name == "table2") return table2_bound(table_spec(family, params)).to_json();
    const auto g = grid_for(n, scheme);
    const auto m = make_model(family, params, g);
    if (name == "theorem3") return theorem3_bound(m, g).to_json();
    if (name == "envelope") return envelope_bound(envelope_extract(m, g), g).to_json();
    throw InputError("unknown bound '" + name + "' (theorem3, envelope or table2)");
}

std::string drift_json(double a, double b, std::size_t n, const std::string& scheme) {
    const auto g = grid_for(n, scheme);
    const auto m = make_frechet({a, b});
    const auto spec = frechet_drift_spec(a, b, g);
    nlohmann::ordered_json j;
    j["r"] = spec.r;
    j["gamma"] = spec.gamma;
    j["K"] = spec.K;
    j["drift"] = nlohmann::json::parse(drift_check(m, spec, g).to_json());
    j["minorization"] = nlohmann::json::parse(minorization_check(m, {0.5, 1.0}, 1.0 - a - b, g).to_json());
    return j.dump();
}

std::string checks_json(std::size_t n, std::uint64_t seed) {
    RunConfig cfg;
    cfg.N = n;
    cfg.seed = seed;
    auto out = nlohmann::ordered_json::array();
    for (const auto& r : run_checks(cfg))
        out.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
    return out.dump();
}

}  // namespace

PYBIND11_MODULE(_copmix, m) {
    m.doc() = "Mixing diagnostics for copula-based Markov chains";
    static py::exception<Error> base(m, "CopmixError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(base.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    m.attr("SCHEMA_VERSION") = kSchemaVersion;

    m.def("families", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& f : builtin_families()) out.emplace_back(f.name, f.params);
        return out;
    });
    m.def("validate_json", &validate_json, py::arg("family"), py::arg("params"), py::arg("n") = 256,
          py::arg("scheme") = "midpoint");
    m.def(
        "rho1",
        [](const std::string& family, const std::vector<double>& params, std::size_t n, const std::string& scheme) {
            const auto g = grid_for(n, scheme);
            return rho1_estimate(assemble_operator(make_model(family, params, g), g));
        },
        py::arg("family"), py::arg("params"), py::arg("n") = 512, py::arg("scheme") = "midpoint");
    m.def(
        "eigenvalues",
        [](const std::string& family, const std::vector<double>& params, std::size_t n, std::size_t k) {
            const auto g = Grid::midpoint(n);
            auto ev = spectral_decomposition(assemble_operator(make_model(family, params, g), g)).eigenvalues;
            if (ev.size() > k) ev.resize(k);
            return ev;
        },
        py::arg("family"), py::arg("params"), py::arg("n") = 512, py::arg("k") = 5);
    m.def(
        "mixing_report_json",
        [](const std::string& family, const std::vector<double>& params, int nmax, std::size_t n) {
            const auto g = Grid::midpoint(n);
            return mixing_report(make_model(family, params, g), nmax, g).to_json();
        },
        py::arg("family"), py::arg("params"), py::arg("nmax") = 5, py::arg("n") = 512);
    m.def("bound_json", &bound_json, py::arg("name"), py::arg("family"), py::arg("params"), py::arg("n") = 512,
          py::arg("scheme") = "midpoint");
    m.def(
        "dmr_sandwich",
        [](double a, int n) {
            const auto s = dmr_sandwich(a, n);
            return std::tuple{s.printed_lower, s.expectation_lower, s.upper};
        },
        py::arg("a"), py::arg("n"));
    m.def(
        "arch_root",
        [](const std::string& family, double lo, double hi, double tol, std::size_t n) {
            return theorem4_critical_parameter(builtin_generator_family(family), lo, hi, tol, Grid::midpoint(n));
        },
        py::arg("family"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-8, py::arg("n") = 512);
    m.def(
        "simulate",
        [](const std::string& family, const std::vector<double>& params, std::size_t length, std::uint64_t seed) {
            const auto g = Grid::midpoint(512);
            return sample_chain(make_model(family, params, g), length, seed).states;
        },
        py::arg("family"), py::arg("params"), py::arg("length"), py::arg("seed") = 42);
    m.def(
        "simulate_mh_kernel",
        [](double a, std::size_t length, std::uint64_t seed) { return sample_mh_kernel(a, length, seed).states; },
        py::arg("a"), py::arg("length"), py::arg("seed") = 42);
    m.def("ks_uniform", &ks_uniform, py::arg("sample"));
    m.def("ks_two_sample", &ks_two_sample, py::arg("a"), py::arg("b"));
    m.def("drift_json", &drift_json, py::arg("a"), py::arg("b"), py::arg("n") = 512, py::arg("scheme") = "midpoint");
    m.def("checks_json", &checks_json, py::arg("n") = 512, py::arg("seed") = 42,
          py::call_guard<py::gil_scoped_release>());
}
