#include <doctest.h>

#include <stag/combine.hpp>
#include <stag/compose.hpp>
#include <stag/error.hpp>

#include "support/algebra.hpp"
#include "support/golden.hpp"

using namespace stag;

namespace {

tree_node node(const std::string& label, node_mark mark, feature_structure top,
               std::optional<feature_structure> bottom = feature_structure{}) {
  tree_node n;
  n.label = label;
  n.mark = mark;
  n.top = std::move(top);
  n.bottom = std::move(bottom);
  return n;
}

derivation_node dn(const std::string& tree, const std::string& lemma, std::vector<derivation_node> kids = {},
                   attach_op op = attach_op::substitution, const std::string& site = "") {
  derivation_node d;
  d.tree = tree;
  d.lemma = lemma;
  d.children = std::move(kids);
  d.op = op;
  d.site = node_address::parse(site);
  return d;
}

derivation_node adj(const std::string& tree, const std::string& lemma, const std::string& site = "",
                    std::vector<derivation_node> kids = {}) {
  return dn(tree, lemma, std::move(kids), attach_op::adjunction, site);
}

derivation_node sub(const std::string& tree, const std::string& lemma, const std::string& site,
                    std::vector<derivation_node> kids = {}) {
  return dn(tree, lemma, std::move(kids), attach_op::substitution, site);
}

const grammar& ko() { return test::bundled().ko; }

}  // namespace

TEST_CASE("substitution follows the top/bottom equations") {
  auto small = test::all_structures({"f", "g"}, {"+", "-"});
  for (const auto& st : small)
    for (const auto& rt : small)
      for (const auto& rb : small) {
        tree_node site = node("NP", node_mark::substitution, st, std::nullopt);
        tree_node root = node("NP", node_mark::internal, rt, rb);
        auto r = substitute_features(site, root, {});
        auto want = test::union_oracle(st, rt);
        REQUIRE(r.has_value() == want.has_value());
        if (!r) continue;
        CHECK(resolve(r->node.top, r->env) == *want);
        CHECK(resolve(*r->node.bottom, r->env) == rb);
      }
}

TEST_CASE("adjunction follows the top/bottom equations") {
  auto small = test::all_structures({"f", "g"}, {"+", "-"});
  const feature_structure foot_top{{"g", "+"}};
  const feature_structure foot_bottom{{"f", "-"}};
  for (const auto& st : small)
    for (const auto& sb : small)
      for (const auto& rt : small) {
        tree_node site = node("NP", node_mark::internal, st, sb);
        tree_node root = node("NP", node_mark::internal, rt, feature_structure{{"h", "x"}});
        tree_node foot = node("NP", node_mark::foot, foot_top, foot_bottom);
        auto r = adjoin_features(site, root, foot, {});
        auto up = test::union_oracle(st, rt);
        auto low = test::union_oracle(sb, foot_bottom);
        REQUIRE(r.has_value() == (up && low));
        if (!r) continue;
        CHECK(resolve(r->upper.top, r->env) == *up);
        CHECK(resolve(*r->upper.bottom, r->env) == feature_structure{{"h", "x"}});
        CHECK(resolve(r->lower.top, r->env) == foot_top);
        CHECK(resolve(*r->lower.bottom, r->env) == *low);
        CHECK(r->lower.adjoin == adjoin_constraint::forbid);
      }
}

TEST_CASE("combination preconditions") {
  tree_node np_site = node("NP", node_mark::substitution, {}, std::nullopt);
  tree_node s_root = node("S", node_mark::internal, {});
  CHECK_THROWS_AS(substitute_features(np_site, s_root, {}), precondition_error);
  CHECK_THROWS_AS(substitute_features(node("NP", node_mark::internal, {}), node("NP", node_mark::internal, {}), {}),
                  precondition_error);

  tree_node site = node("NP", node_mark::internal, {});
  site.adjoin = adjoin_constraint::forbid;
  tree_node root = node("NP", node_mark::internal, {});
  tree_node foot = node("NP", node_mark::foot, {});
  CHECK_THROWS_AS(adjoin_features(site, root, foot, {}), precondition_error);
  site.adjoin = adjoin_constraint::allow;
  CHECK(adjoin_features(site, root, foot, {}));
  CHECK_THROWS_AS(adjoin_features(node("S", node_mark::internal, {}), root, foot, {}), precondition_error);
}

TEST_CASE("finalize unifies top and bottom") {
  CHECK(finalize_node(node("NP", node_mark::internal, {{"a", "+"}}, feature_structure{{"a", "+"}}), {}));
  CHECK_FALSE(finalize_node(node("NP", node_mark::internal, {{"a", "+"}}, feature_structure{{"a", "-"}}), {}));
  CHECK(finalize_node(node("NP", node_mark::substitution, {{"a", "+"}}, std::nullopt), {}));
}

TEST_CASE("composing the transitive sentence") {
  auto d = dn("ko_tnx0Vnx2", "pwunsilhaissta",
              {sub("ko_NP", "ku", "0", {adj("ko_case", "-ka")}),
               sub("ko_NP", "pokose", "1", {adj("ko_det", "ku", "", {adj("ko_case", "-lul")})})});
  derived_tree t = compose(d, ko());
  CHECK(stag::join(yield_of(t)) == "ku -ka ku pokose -lul pwunsilhaissta");
  CHECK(t.open_slots.empty());
  CHECK(t.instances.size() == 6);
  auto at = [&](derivation_path p) -> const instance_info& {
    for (const auto& i : t.instances)
      if (i.path == p) return i;
    FAIL("no instance");
    return t.instances.front();
  };
  CHECK(t.instances[0].lemma == "pwunsilhaissta");
  CHECK(at({0}).lemma == "ku");
  CHECK(at({1}).lemma == "pokose");
  // The determiner marks the noun it attaches to.
  CHECK(at({1}).features.at(node_address{}).at("det").text == "+");
  CHECK(at({}).features.at(node_address::parse("0")).at("case").text == "nom");
}

TEST_CASE("surface forms are chosen after composition") {
  auto d = dn("ko_tnx0Vnx2", "pwunsilhaissta",
              {sub("ko_NP", "Tom", "0", {adj("ko_case", "-ka")}), sub("ko_NP", "pokose", "1", {adj("ko_case", "-lul")})});
  derived_tree t = compose(d, ko());
  CHECK(stag::join(yield_of(t)) == "Tom -i pokose -lul pwunsilhaissta");
  CHECK(t.source_derivation.children[0].children[0].surface == "-i");
}

TEST_CASE("composition errors name the failing place") {
  SUBCASE("case clash at the object slot") {
    auto d = dn("ko_tnx0Vnx2", "pwunsilhaissta", {sub("ko_NP", "pokose", "1", {adj("ko_case", "-ka")})});
    try {
      compose(d, ko());
      FAIL("expected composition_error");
    } catch (const composition_error& e) {
      CHECK(std::string(e.what()).find("ko_tnx0Vnx2[pwunsilhaissta] at 1") != std::string::npos);
    }
  }
  SUBCASE("substitution at a non-slot") {
    auto d = dn("ko_tnx0Vnx2", "pwunsilhaissta", {sub("ko_NP", "ku", "2")});
    CHECK_THROWS_WITH_AS(compose(d, ko()), doctest::Contains("at 2"), composition_error);
  }
  SUBCASE("two adjunctions at one site") {
    auto d = dn("ko_NP", "ku", {adj("ko_case", "-ka"), adj("ko_case", "-lul")});
    CHECK_THROWS_WITH_AS(compose(d, ko()), doctest::Contains("more than one adjunction"), composition_error);
  }
  SUBCASE("adjunction where forbidden") {
    auto d = dn("ko_NP", "ku", {adj("ko_case", "-ka", "", {adj("ko_case", "-lul")})});
    CHECK_THROWS_AS(compose(d, ko()), composition_error);
  }
  SUBCASE("unknown lexeme") {
    CHECK_THROWS_WITH_AS(compose(dn("ko_NP", "zzz"), ko()), doctest::Contains("ko_NP[zzz]"), composition_error);
  }
  SUBCASE("selectional restriction") {
    auto d = dn("ko_tnx0Vnx2", "pwunsilhaissta", {sub("ko_NP", "pokose", "0", {adj("ko_case", "-ka")})});
    CHECK_THROWS_AS(compose(d, ko()), composition_error);
    CHECK_FALSE(try_compose(d, ko()));
  }
}

TEST_CASE("empty argument slots") {
  auto slots = empty_slots(dn("ko_tnx0Vnx2", "pwunsilhaissta"), ko());
  REQUIRE(slots.size() == 2);
  CHECK(slots[0].slot == "NP0");
  CHECK(slots[0].restriction == feature_structure{{"animate", "+"}});
  CHECK(slots[0].slot_features.at("case").text == "nom");
  CHECK(slots[1].slot == "NP2");
  CHECK(slots[1].address.str() == "1");
  CHECK(slots[1].restriction == feature_structure{{"animate", "-"}});
}

TEST_CASE("derivation text, json and ranking") {
  auto d = dn("ko_NP", "ku", {adj("ko_case", "-ka")});
  CHECK(to_text(d) == "ko_NP[ku](adj@root ko_case[-ka])");
  d.children[0].surface = "-ka";
  CHECK(to_text(d) == "ko_NP[ku](adj@root ko_case[-ka])");
  d.children[0].surface = "-i";
  CHECK(to_text(d) == "ko_NP[ku](adj@root ko_case[-ka/-i])");
  CHECK(to_text(derivation_from_json(to_json(d))) == to_text(d));

  auto x = dn("ko_tnx0Vnx2", "v", {sub("ko_NP", "b", "1"), sub("ko_NP", "a", "0")});
  canonicalize(x);
  CHECK(x.children[0].lemma == "a");

  auto full = dn("ko_tnx0Vnx2", "pwunsilhaissta",
                 {sub("ko_NP", "ku", "0", {adj("ko_case", "-ka")}), sub("ko_NP", "pokose", "1", {adj("ko_case", "-lul")})});
  auto dropped = dn("ko_tnx0Vnx2", "pwunsilhaissta", {sub("ko_NP", "pokose", "1", {adj("ko_case", "-lul")})});
  CHECK(empty_slot_count(dropped, ko()) == 1);
  CHECK(derivation_less(full, dropped, ko()));
  CHECK_FALSE(derivation_less(dropped, full, ko()));
  CHECK(tree_count(full) == 5);
  CHECK(adjunction_count(full) == 2);
}
