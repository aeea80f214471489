// Command-line front end for the copmix library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "copmix/archimedean.hpp"
#include "copmix/bounds.hpp"
#include "copmix/ergodicity.hpp"
#include "copmix/error.hpp"
#include "copmix/families.hpp"
#include "copmix/registry.hpp"
#include "copmix/reproduce.hpp"
#include "copmix/simulate.hpp"
#include "copmix/spectral.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace copmix;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;

struct Target {
    std::string family;
    std::vector<double> params;
};

double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InputError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw InputError("not a number: '" + s + "'");
    return v;
}

/// "family p1 p2 ..." from positional words.
Target target_from_words(const std::vector<std::string>& words) {
    if (words.empty()) throw InputError("missing family name");
    Target t{words.front(), {}};
    for (std::size_t i = 1; i < words.size(); ++i) t.params.push_back(parse_number(words[i]));
    return t;
}

/// "family:p1,p2" as used by `fold`.
Target target_from_spec(const std::string& spec) {
    Target t;
    const auto colon = spec.find(':');
    t.family = spec.substr(0, colon);
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) t.params.push_back(parse_number(item));
    }
    return t;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json report_json(const ValidationReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["ok"] = r.ok();
    j["grounded_ok"] = r.grounded_ok;
    j["margins_ok"] = r.margins_ok;
    j["two_increasing_ok"] = r.two_increasing_ok;
    j["worst_violation"] = r.worst_violation;
    j["tolerance"] = r.tolerance;
    auto& d = j["violations"] = json::array();
    for (const auto& v : r.details)
        d.push_back({{"check", v.check}, {"x", v.x}, {"y", v.y}, {"magnitude", v.magnitude}});
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixing diagnostics for copula-based Markov chains"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string scheme_name = "midpoint";
    app.add_option("-N,--grid-size", cfg.N, "quadrature nodes")->check(CLI::Range(16, 1 << 14));
    app.add_option("--scheme", scheme_name, "midpoint or gauss-legendre");

    std::vector<std::string> words;
    auto add_target = [&](CLI::App* sub) {
        sub->add_option("model", words, "family name followed by its parameters")->required();
    };

    auto* validate = app.add_subcommand("validate", "check the copula axioms");
    add_target(validate);
    double validate_tol = 0.0;
    validate->add_option("--tol", validate_tol, "violation tolerance (default 5/N)");

    auto* rho1 = app.add_subcommand("rho1", "largest singular value of the centered transfer operator");
    add_target(rho1);

    auto* mix = app.add_subcommand("mix", "beta_n, phi_n and rho1^n series as CSV");
    add_target(mix);
    int nmax = 5;
    bool mix_json = false;
    mix->add_option("--nmax", nmax, "largest n")->check(CLI::Range(1, 64));
    mix->add_flag("--json", mix_json, "full report as JSON instead of CSV");

    auto* bound = app.add_subcommand("bound", "closed-form bounds: theorem3 | envelope | table2 | dmr");
    std::string bound_name;
    bound->add_option("name", bound_name)->required()->check(CLI::IsMember({"theorem3", "envelope", "table2", "dmr"}));
    add_target(bound);
    int dmr_n = 1;
    bound->add_option("--n", dmr_n, "step count for dmr")->check(CLI::PositiveNumber);

    auto* arch = app.add_subcommand("arch-root", "critical parameter where the Archimedean integral equals 1");
    std::string arch_family;
    std::vector<double> bracket;
    double arch_tol = 1e-8;
    arch->add_option("family", arch_family)->required()->check(CLI::IsMember({"example2", "example3"}));
    arch->add_option("--bracket", bracket, "lo hi")->required()->expected(2);
    arch->add_option("--tol", arch_tol)->check(CLI::PositiveNumber);

    auto* fold_cmd = app.add_subcommand("fold", "fold product of two models given as family:p1,p2");
    std::string fold_a, fold_b;
    fold_cmd->add_option("first", fold_a)->required();
    fold_cmd->add_option("second", fold_b)->required();

    auto* simulate = app.add_subcommand("simulate", "stationary trajectory as CSV");
    add_target(simulate);
    std::size_t length = 1000;
    std::uint64_t sim_seed = 42;
    std::string sim_out;
    simulate->add_option("--length", length)->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed);
    simulate->add_option("--out", sim_out, "write CSV here instead of stdout");

    auto* drift = app.add_subcommand("drift", "drift and minorization certificates for Frechet(a, b)");
    double drift_a = 0.0, drift_b = 0.0;
    drift->add_option("a", drift_a)->required();
    drift->add_option("b", drift_b)->required();

    auto* reproduce = app.add_subcommand("reproduce", "run every check and write JSON, CSV and markdown");
    std::string out_dir;
    reproduce->add_option("--seed", cfg.seed);
    reproduce->add_option("--out", out_dir, "output directory (default $COPMIX_OUTPUT_DIR or ./reproduce_out)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        cfg.scheme = parse_scheme(scheme_name);
        const Grid grid = cfg.grid();

        if (*validate) {
            const auto t = target_from_words(words);
            const auto m = make_model(t.family, t.params, grid);
            const auto r = validate_copula(m, grid, validate_tol > 0 ? validate_tol : grid.tolerance());
            auto j = report_json(r);
            j["model"] = model_to_json(m);
            print(j);
            return r.ok() ? kExitOk : kExitCheckFailed;
        }
        if (*rho1) {
            const auto t = target_from_words(words);
            const auto m = make_model(t.family, t.params, grid);
            const auto op = assemble_operator(m, grid);
            json j;
            j["schema_version"] = kSchemaVersion;
            j["model"] = m.label;
            j["rho1"] = rho1_estimate(op);
            j["symmetric"] = op.symmetric;
            j["stochastic_residual"] = op.stochastic_residual;
            print(j);
            return kExitOk;
        }
        if (*mix) {
            const auto t = target_from_words(words);
            const auto rep = mixing_report(make_model(t.family, t.params, grid), nmax, grid);
            if (mix_json) std::cout << rep.to_json() << '\n';
            else std::cout << rep.to_csv();
            return kExitOk;
        }
        if (*bound) {
            const auto t = target_from_words(words);
            if (bound_name == "dmr") {
                if (t.family != "mh" || t.params.size() != 1)
                    throw InputError("dmr bound expects: bound dmr mh <a> --n <n>");
                const auto s = dmr_sandwich(t.params[0], dmr_n);
                print({{"schema_version", kSchemaVersion}, {"name", "dmr"}, {"a", t.params[0]}, {"n", dmr_n},
                       {"printed_lower", s.printed_lower}, {"expectation_lower", s.expectation_lower},
                       {"upper", s.upper}});
                return kExitOk;
            }
            BoundReport r;
            if (bound_name == "table2") {
                r = table2_bound(table_spec(t.family, t.params));
            } else {
                const auto m = make_model(t.family, t.params, grid);
                r = bound_name == "theorem3" ? theorem3_bound(m, grid)
                                             : envelope_bound(envelope_extract(m, grid), grid);
            }
            std::cout << r.to_json() << '\n';
            return r.satisfied ? kExitOk : kExitCheckFailed;
        }
        if (*arch) {
            const double root = theorem4_critical_parameter(builtin_generator_family(arch_family), bracket[0],
                                                            bracket[1], arch_tol, grid);
            print({{"schema_version", kSchemaVersion}, {"family", arch_family}, {"theta0", root},
                   {"bracket", bracket}, {"tol", arch_tol}});
            return kExitOk;
        }
        if (*fold_cmd) {
            const auto ta = target_from_spec(fold_a), tb = target_from_spec(fold_b);
            const auto m = fold(make_model(ta.family, ta.params, grid), make_model(tb.family, tb.params, grid), grid);
            auto j = model_to_json(m);
            j["rho1"] = rho1_estimate(assemble_operator(m, grid));
            auto& atoms = j["atom_weights"] = json::array();
            for (const auto& a : m.atoms) {
                const char* kind = a.kind == MapKind::Identity ? "identity" : a.kind == MapKind::Flip ? "flip" : "curve";
                json e = {{"kind", kind}};
                if (a.weight.constant_value()) e["weight"] = *a.weight.constant_value();
                else e["weight_at_half"] = a.weight(0.5);
                atoms.push_back(e);
            }
            print(j);
            return kExitOk;
        }
        if (*simulate) {
            const auto t = target_from_words(words);
            const auto traj = sample_chain(make_model(t.family, t.params, grid), length, sim_seed);
            if (sim_out.empty()) std::cout << traj.to_csv();
            else std::ofstream(sim_out, std::ios::binary) << traj.to_csv();
            return kExitOk;
        }
        if (*drift) {
            const auto m = make_frechet({drift_a, drift_b});
            const auto spec = frechet_drift_spec(drift_a, drift_b, grid);
            const auto d = drift_check(m, spec, grid);
            const auto c = minorization_check(m, {0.5, 1.0}, 1.0 - drift_a - drift_b, grid);
            json j;
            j["schema_version"] = kSchemaVersion;
            j["r"] = spec.r;
            j["gamma"] = spec.gamma;
            j["K"] = spec.K;
            j["drift"] = json::parse(d.to_json());
            j["minorization"] = json::parse(c.to_json());
            print(j);
            return d.ok() && c.valid() ? kExitOk : kExitCheckFailed;
        }
        if (*reproduce) {
            if (out_dir.empty()) {
                const char* env = std::getenv("COPMIX_OUTPUT_DIR");
                out_dir = env && *env ? env : "reproduce_out";
            }
            const auto results = run_checks(cfg);
            write_report(results, cfg, out_dir);
            bool all = true;
            for (const auto& r : results) {
                std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << ": " << r.detail << '\n';
                all = all && r.pass;
            }
            return all ? kExitOk : kExitCheckFailed;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::Numeric:
            case ErrorKind::InfeasibleEnvelope: return kExitCheckFailed;
            default: return kExitInput;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}
