#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "copmix/copula.hpp"
#include "copmix/families.hpp"

namespace copmix {

inline constexpr int kSchemaVersion = 1;

struct FamilyInfo {
    std::string name;
    std::string params;  ///< parameter names, space separated
    std::string summary;
};

/// Every family `make_model` understands.
const std::vector<FamilyInfo>& builtin_families();

/// Builds a model from a family name and positional parameters:
///   independence | fgm theta | frechet a b | mardia theta | mh a
///   m1..m4 [p q]  (g(x) = x^p, h(y) = y^q, defaults 1 1)
///   t3_1 a | t3_2 a theta | t3_3 a theta c | t3_4 a c
///   example2 theta | example3 theta   (non-strict Archimedean)
/// Throws InputError for unknown names or wrong parameter counts.
CopulaModel make_model(std::string_view family, const std::vector<double>& params, const Grid& grid);

/// The TableDensitySpec behind an m1..m4 / t3_* request.
TableDensitySpec table_spec(std::string_view family, const std::vector<double>& params);

/// Rebuilds a model, including fold and n_step compositions.
CopulaModel rebuild(const FamilySpec& spec, const Grid& grid);

nlohmann::ordered_json to_json(const FamilySpec& spec);
FamilySpec family_from_json(const nlohmann::json& j);

/// {"schema_version", "label", "family"} for a model with a family record.
nlohmann::ordered_json model_to_json(const CopulaModel& model);

}  // namespace copmix
