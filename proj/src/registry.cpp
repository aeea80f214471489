#include "copmix/registry.hpp"

#include <cmath>
#include <sstream>

#include "copmix/archimedean.hpp"
#include "copmix/error.hpp"

namespace copmix {

const std::vector<FamilyInfo>& builtin_families() {
    static const std::vector<FamilyInfo> families = {
        {"independence", "", "product copula P"},
        {"fgm", "theta", "Farlie-Gumbel-Morgenstern, |theta| <= 1"},
        {"frechet", "a b", "a M + (1-a-b) P + b W"},
        {"mardia", "theta", "Frechet with a, b from theta"},
        {"mh", "a", "copula of the stay-or-redraw kernel with stay probability a|2u-1|"},
        {"m1", "[p q]", "envelope row 1 with g = x^p, h = y^q"},
        {"m2", "[p q]", "envelope row 2 with g = x^p, h = y^q"},
        {"m3", "[p q]", "envelope row 3 with g = x^p, h = y^q"},
        {"m4", "[p q]", "envelope row 4 with g = x^p, h = y^q"},
        {"t3_1", "a", "phi-mixing row 1"},
        {"t3_2", "a theta", "phi-mixing row 2"},
        {"t3_3", "a theta c", "phi-mixing row 3"},
        {"t3_4", "a c", "phi-mixing row 4"},
        {"example2", "theta", "Archimedean, standardized -ln(theta u + 1 - theta)"},
        {"example3", "theta", "Archimedean, (1-x)/(1+(theta-1)x)"},
    };
    return families;
}

namespace {

void expect_count(std::string_view family, const std::vector<double>& params, std::size_t lo,
                  std::size_t hi) {
    if (params.size() < lo || params.size() > hi) {
        std::ostringstream os;
        os << "family '" << family << "' takes ";
        if (lo == hi) os << lo;
        else os << lo << " to " << hi;
        os << " parameter(s), got " << params.size();
        throw InputError(os.str());
    }
}

}  // namespace

TableDensitySpec table_spec(std::string_view family, const std::vector<double>& params) {
    TableDensitySpec spec;
    spec.row = parse_table_row(family);
    if (is_envelope_row(spec.row)) {
        expect_count(family, params, 0, 2);
        const double p = params.size() > 0 ? params[0] : 1.0;
        const double q = params.size() > 1 ? params[1] : 1.0;
        if (!(p >= 0.0 && q >= 0.0)) throw ParameterError("power exponents must be nonnegative");
        spec.g = [p](double x) { return p == 0.0 ? 1.0 : std::pow(x, p); };
        spec.h = [q](double y) { return q == 0.0 ? 1.0 : std::pow(y, q); };
        spec.dh = [q](double y) { return q == 0.0 ? 0.0 : q * std::pow(y, q - 1.0); };
        // x^p on [0,1]: sup 1, inf 0 (or 1 when p = 0), L1 norm 1/(p+1).
        spec.b1 = 1.0;
        spec.a1 = p == 0.0 ? 1.0 : 0.0;
        spec.b2 = 1.0;
        spec.a2 = q == 0.0 ? 1.0 : 0.0;
        spec.g_l1 = 1.0 / (p + 1.0);
        spec.h_l1 = 1.0 / (q + 1.0);
        return spec;
    }
    switch (spec.row) {
        case TableRow::T3_1: expect_count(family, params, 1, 1); spec.a = params[0]; break;
        case TableRow::T3_2:
            expect_count(family, params, 2, 2);
            spec.a = params[0];
            spec.theta = params[1];
            break;
        case TableRow::T3_3:
            expect_count(family, params, 3, 3);
            spec.a = params[0];
            spec.theta = params[1];
            spec.c = params[2];
            break;
        default:
            expect_count(family, params, 2, 2);
            spec.a = params[0];
            spec.c = params[1];
            break;
    }
    return spec;
}

CopulaModel make_model(std::string_view family, const std::vector<double>& params, const Grid& grid) {
    if (family == "independence" || family == "P") {
        expect_count(family, params, 0, 0);
        return make_independence();
    }
    if (family == "fgm") {
        expect_count(family, params, 1, 1);
        return make_fgm(params[0]);
    }
    if (family == "frechet") {
        expect_count(family, params, 2, 2);
        return make_frechet({params[0], params[1]});
    }
    if (family == "mardia") {
        expect_count(family, params, 1, 1);
        return make_mardia({params[0]});
    }
    if (family == "mh") {
        expect_count(family, params, 1, 1);
        return make_mh_copula(params[0]);
    }
    if (family == "example2" || family == "example3") {
        expect_count(family, params, 1, 1);
        auto m = make_archimedean(builtin_generator_family(family)(params[0]));
        m.family = FamilySpec{std::string(family), params, {}};
        return m;
    }
    for (auto name : {"m1", "m2", "m3", "m4", "t3_1", "t3_2", "t3_3", "t3_4"}) {
        if (family != name) continue;
        auto tm = make_table_density(table_spec(family, params), grid);
        if (!tm.report.ok()) {
            std::ostringstream os;
            os << "family '" << family << "' with these parameters is not a copula (worst violation "
               << tm.report.worst_violation << ")";
            throw ParameterError(os.str());
        }
        tm.model.family = FamilySpec{std::string(family), params, {}};
        return tm.model;
    }
    throw InputError("unknown family '" + std::string(family) + "'");
}

CopulaModel rebuild(const FamilySpec& spec, const Grid& grid) {
    if (spec.name == "fold") {
        if (spec.operands.size() != 2) throw InputError("fold needs two operands");
        return fold(rebuild(spec.operands[0], grid), rebuild(spec.operands[1], grid), grid);
    }
    if (spec.name == "n_step") {
        if (spec.operands.size() != 1 || spec.params.size() != 1)
            throw InputError("n_step needs one operand and a step count");
        return n_step(rebuild(spec.operands[0], grid), static_cast<int>(spec.params[0]), grid);
    }
    return make_model(spec.name, spec.params, grid);
}

nlohmann::ordered_json to_json(const FamilySpec& spec) {
    nlohmann::ordered_json j;
    j["name"] = spec.name;
    j["params"] = spec.params;
    if (!spec.operands.empty()) {
        auto& ops = j["operands"] = nlohmann::ordered_json::array();
        for (const auto& o : spec.operands) ops.push_back(to_json(o));
    }
    return j;
}

FamilySpec family_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("name")) throw InputError("family record needs a name");
    FamilySpec s;
    try {
        s.name = j.at("name").get<std::string>();
        if (j.contains("params")) s.params = j.at("params").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed family record: ") + e.what());
    }
    if (j.contains("operands"))
        for (const auto& o : j.at("operands")) s.operands.push_back(family_from_json(o));
    return s;
}

nlohmann::ordered_json model_to_json(const CopulaModel& model) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["label"] = model.label;
    if (model.family) j["family"] = to_json(*model.family);
    j["atoms"] = model.atoms.size();
    return j;
}

}  // namespace copmix
