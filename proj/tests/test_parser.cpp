#include <doctest.h>

#include <set>

#include <stag/compose.hpp>
#include <stag/error.hpp>
#include <stag/parser.hpp>

#include "support/golden.hpp"
#include "support/oracle.hpp"

using namespace stag;

namespace {

const grammar& ko() { return test::bundled().ko; }
const grammar& en() { return test::bundled().en; }

std::vector<std::string> texts(const parse_result& r) {
  std::vector<std::string> out;
  for (const auto& d : r.derivations) out.push_back(to_text(d));
  return out;
}

grammar korean_subgrammar() {
  return test::restrict_grammar(ko(),
                                {"ko_tnx0Vnx2", "ko_Sx0Vs1", "ko_NP", "ko_topic", "ko_det", "ko_case", "ko_topic_mark",
                                 "ko_comp"},
                                {"pwunsilhaissta", "malhaissta", "ku", "pokose", "Tom", "-ka", "-lul", "-nun", "-ko"});
}

}  // namespace

TEST_CASE("transitive sentence with a determiner") {
  auto r = parse(tokenize("ku -ka ku pokose -lul pwunsilhaissta"), ko());
  REQUIRE(r.derivations.size() == 1);
  CHECK(to_text(r.derivations[0]) ==
        "ko_tnx0Vnx2[pwunsilhaissta](subst@0 ko_NP[ku](adj@root ko_case[-ka]); "
        "subst@1 ko_NP[pokose](adj@root ko_det[ku](adj@root ko_case[-lul])))");
  CHECK_FALSE(r.truncated);
  CHECK(r.derivations[0].anchor_pos == 5);
  CHECK(r.derivations[0].children[1].anchor_pos == 3);
}

TEST_CASE("relative clause sits left of the head noun") {
  auto r = parse(tokenize("ku -ka kunye -ka ssun ku pokose -lul pwunsilhaissta"), ko());
  REQUIRE(r.derivations.size() == 1);
  CHECK(to_text(r.derivations[0]).find("ko_det[ku](adj@root ko_rel[ssun](") != std::string::npos);
}

TEST_CASE("english relative clause follows the head noun") {
  auto r = parse(tokenize("he lost that report that she wrote"), en());
  REQUIRE(r.derivations.size() == 1);
  CHECK(to_text(r.derivations[0]) ==
        "en_tnx0Vnx1[lose/lost](subst@0 en_NP[he]; subst@1.1 en_NP[report](adj@root en_det[that](adj@root "
        "en_rel[write/wrote](subst@1.1.0 en_NP[she]))))");
}

TEST_CASE("dropped arguments leave droppable slots empty") {
  auto r = parse(tokenize("Tom -un pokose -nun pwunsilhaissta -ko malhaissta"), ko());
  REQUIRE(r.derivations.size() == 1);
  const auto& d = r.derivations[0];
  CHECK(empty_slot_count(d, ko()) == 3);
  CHECK(d.child_at(attach_op::substitution, node_address::parse("0")) == nullptr);

  auto bare = parse({"pwunsilhaissta"}, ko());
  REQUIRE(bare.derivations.size() == 1);
  CHECK(bare.derivations[0].children.empty());
}

TEST_CASE("non-droppable slots must be filled") {
  // The relative clause subject is not droppable.
  CHECK(parse(tokenize("ssun pokose -lul pwunsilhaissta"), ko()).derivations.empty());
  // English slots are never droppable.
  CHECK(parse(tokenize("lost the report"), en()).derivations.empty());
}

TEST_CASE("features prune parses") {
  // Nominative particle on an object-only position; inanimate subject.
  CHECK(parse(tokenize("pokose -ka pwunsilhaissta"), ko()).derivations.size() == 0);
  CHECK(parse(tokenize("ku -ka ku"), ko()).derivations.empty());
  // Topic markers alternate by the noun's final sound.
  CHECK(parse(tokenize("Tom -nun pwunsilhaissta"), ko()).derivations.empty());
  CHECK(parse(tokenize("Tom -un pwunsilhaissta"), ko()).derivations.size() == 1);
  CHECK(parse(tokenize("what did he lose"), en()).derivations.size() == 1);
  CHECK(parse(tokenize("what did he lost"), en()).derivations.empty());
}

TEST_CASE("unknown tokens are reported together") {
  try {
    parse(tokenize("ku -ka xx pokose yy"), ko());
    FAIL("expected unknown_token_error");
  } catch (const unknown_token_error& e) {
    CHECK(e.tokens == std::vector<std::string>{"xx", "yy"});
  }
  // Terminal words of the grammar are known even without a lexeme.
  CHECK_NOTHROW(parse(tokenize("did"), en()));
}

TEST_CASE("ambiguity, ranking and the limit") {
  const auto tokens = tokenize("Tom -i pwunsilhaissta -ko malhaissta");
  auto all = parse(tokens, ko());
  REQUIRE(all.derivations.size() == 2);
  CHECK_FALSE(all.truncated);
  for (std::size_t i = 1; i < all.derivations.size(); ++i)
    CHECK_FALSE(derivation_less(all.derivations[i], all.derivations[i - 1], ko()));

  parse_options one;
  one.limit = 1;
  auto cut = parse(tokens, ko(), one);
  CHECK(cut.truncated);
  REQUIRE(cut.derivations.size() == 1);
  CHECK(to_text(cut.derivations[0]) == to_text(all.derivations[0]));
}

TEST_CASE("soundness and mode equivalence on the golden suite") {
  for (const auto& [lang, sentence] : test::golden_sentences()) {
    const grammar& g = test::bundled().of(lang);
    const auto tokens = tokenize(sentence);
    parse_options eager, deferred;
    deferred.eager = false;
    auto a = parse(tokens, g, eager);
    auto b = parse(tokens, g, deferred);
    INFO(sentence);
    CHECK_FALSE(a.derivations.empty());
    CHECK(texts(a) == texts(b));
    for (const auto& d : a.derivations) CHECK(yield_of(compose(d, g)) == tokens);
  }
}

TEST_CASE("parser agrees with exhaustive generation") {
  grammar g = korean_subgrammar();
  CHECK(g.trees.size() == 8);
  auto expected = test::derivations_by_yield(g, 4);
  CHECK(expected.size() > 10);
  parse_options o;
  o.limit = 100000;
  for (const auto& [yield, derivs] : expected) {
    std::multiset<std::string> got;
    for (const auto& d : parse(yield, g, o).derivations) got.insert(test::canonical_text(compose(d, g).source_derivation));
    INFO(join(yield));
    CHECK(got == derivs);
  }
}

TEST_CASE("the generator itself") {
  grammar g = korean_subgrammar();
  // One tree: only the bare verbs.
  auto one = test::generate_derivations(g, 1);
  std::set<std::string> names;
  for (const auto& d : one) names.insert(to_text(d));
  CHECK(names == std::set<std::string>{"ko_tnx0Vnx2[pwunsilhaissta]"});
  // The control verb's clausal slot is not droppable, so it needs two trees.
  bool found = false;
  for (const auto& d : test::generate_derivations(g, 2))
    found |= to_text(d) == "ko_Sx0Vs1[malhaissta](subst@1 ko_tnx0Vnx2[pwunsilhaissta])";
  CHECK(found);
}
