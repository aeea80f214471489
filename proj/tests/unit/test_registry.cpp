#include <gtest/gtest.h>
#include <json.hpp>

#include "copmix/error.hpp"
#include "copmix/registry.hpp"

using namespace copmix;

namespace {

std::vector<double> defaults_for(const std::string& name) {
    if (name == "fgm" || name == "mardia") return {0.5};
    if (name == "frechet") return {0.3, 0.2};
    if (name == "mh") return {0.7};
    if (name == "example2") return {0.4};
    if (name == "example3") return {1.3};
    if (name == "t3_1") return {0.5};
    if (name == "t3_2") return {0.5, 0.5};
    if (name == "t3_3") return {0.5, 0.5, 0.5};
    if (name == "t3_4") return {0.5, 0.5};
    return {};
}

}  // namespace

TEST(Registry, EveryBuiltinBuildsAndValidates) {
    const Grid g = Grid::midpoint(64);
    ASSERT_FALSE(builtin_families().empty());
    for (const auto& info : builtin_families()) {
        const auto m = make_model(info.name, defaults_for(info.name), g);
        EXPECT_FALSE(m.label.empty()) << info.name;
        const auto r = validate_copula(m, g, g.tolerance());
        EXPECT_TRUE(r.ok()) << info.name << ' ' << r.worst_violation;
    }
}

TEST(Registry, UnknownAndBadParameters) {
    const Grid g = Grid::midpoint(32);
    EXPECT_THROW(make_model("nosuch", {}, g), InputError);
    EXPECT_THROW(make_model("fgm", {1.5}, g), ParameterError);
    EXPECT_THROW(make_model("fgm", {}, g), InputError);
    EXPECT_THROW(make_model("frechet", {0.7, 0.5}, g), ParameterError);
}

TEST(Registry, JsonRoundTrip) {
    const Grid g = Grid::midpoint(32);
    const auto m = fold(make_model("fgm", {0.5}, g), make_model("frechet", {0.3, 0.2}, g), g);
    ASSERT_TRUE(m.family);
    const auto j = to_json(*m.family);
    const auto back = family_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(to_json(back).dump(), j.dump());
    const auto rebuilt = rebuild(back, g);
    for (double x : {0.1, 0.6})
        for (double y : {0.2, 0.9}) EXPECT_NEAR(rebuilt.density(x, y), m.density(x, y), 1e-12);
    EXPECT_EQ(model_to_json(m)["schema_version"], kSchemaVersion);
}

TEST(Registry, FamilyJsonErrors) {
    EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"params": []})")), InputError);
}
