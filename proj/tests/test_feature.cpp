#include <doctest.h>

#include <stag/error.hpp>
#include <stag/feature.hpp>

#include "support/algebra.hpp"

using namespace stag;

TEST_CASE("atoms unify when compatible") {
  auto r = unify({{"a", "+"}}, {{"b", "-"}});
  REQUIRE(r);
  CHECK(r->fs == feature_structure{{"a", "+"}, {"b", "-"}});
  CHECK_FALSE(unify({{"a", "+"}}, {{"a", "-"}}));
  CHECK(unify({{"case", "nom"}}, {{"case", "nom"}})->fs == feature_structure{{"case", "nom"}});
}

TEST_CASE("variables bind and propagate") {
  auto r = unify({{"a", "?X"}, {"b", "?X"}}, {{"a", "+"}});
  REQUIRE(r);
  CHECK(r->fs == feature_structure{{"a", "+"}, {"b", "+"}});
  CHECK(resolve(feature_value{"?X"}, r->env) == feature_value{"+"});

  CHECK_FALSE(unify({{"a", "?X"}, {"b", "?X"}}, {{"a", "+"}, {"b", "-"}}));
}

TEST_CASE("variable chains resolve through later bindings") {
  auto r1 = unify({{"a", "?X"}}, {{"a", "?Y"}});
  REQUIRE(r1);
  auto r2 = unify({{"b", "?Y"}}, {{"b", "footwear"}}, r1->env);
  REQUIRE(r2);
  CHECK(resolve(feature_value{"?X"}, r2->env).text == "footwear");
  CHECK(resolve(r1->fs, r2->env) == feature_structure{{"a", "footwear"}});
}

TEST_CASE("a bound variable clashes like its value") {
  bindings env{{"?X", "+"}};
  CHECK_FALSE(unify({{"a", "?X"}}, {{"a", "-"}}, env));
  CHECK(env.size() == 1);
  auto r = unify({{"a", "?X"}}, {{"a", "+"}}, env);
  REQUIRE(r);
  CHECK(r->fs.at("a").text == "+");
}

TEST_CASE("unify_values extends the environment in place") {
  bindings env;
  feature_value out;
  CHECK(unify_values("?A", "?B", env, &out));
  CHECK(unify_values("?B", "x", env, &out));
  CHECK(resolve(feature_value{"?A"}, env).text == "x");
  CHECK_FALSE(unify_values("?A", "y", env));
}

TEST_CASE("rename_apart suffixes variables only") {
  feature_structure fs{{"a", "?X"}, {"b", "+"}};
  CHECK(rename_apart(fs, "#3") == feature_structure{{"a", "?X#3"}, {"b", "+"}});
}

TEST_CASE("rendering and json") {
  feature_structure fs{{"wh", "-"}, {"animate", "+"}};
  CHECK(to_string(fs) == "[animate:+, wh:-]");
  CHECK(to_string(feature_structure{}) == "[]");
  CHECK(feature_structure_from_json(to_json(fs)) == fs);
  CHECK_THROWS_AS(feature_structure_from_json(nlohmann::json::parse(R"({"a": 1})")), format_error);
  CHECK_THROWS_AS(feature_structure_from_json(nlohmann::json::parse(R"({"a": ""})")), format_error);
  CHECK_THROWS_AS(feature_structure_from_json(nlohmann::json::parse(R"({"a": "?"})")), format_error);
  CHECK_THROWS_AS(feature_structure_from_json(nlohmann::json::parse("[]")), format_error);
}

TEST_CASE("ground algebra holds exhaustively") {
  auto all = test::all_structures({"f", "g", "h"}, {"+", "-", "x"});
  CHECK(all.size() == 64);
  auto rep = test::check_ground_algebra(all);
  INFO(rep.first_violation);
  CHECK(rep.violations == 0);
  CHECK(rep.cases > 250000);
}

TEST_CASE("algebra with variables") {
  auto all = test::all_structures({"f", "g"}, {"+", "-", "?X", "?Y"});
  auto rep = test::check_variable_algebra(all);
  INFO(rep.first_violation);
  CHECK(rep.violations == 0);
}

TEST_CASE("union oracle") {
  CHECK(test::union_oracle({{"a", "+"}}, {{"a", "-"}}) == std::nullopt);
  CHECK(test::union_oracle({{"a", "+"}}, {{"b", "-"}}) == feature_structure{{"a", "+"}, {"b", "-"}});
}
