#ifndef STAG_TEST_GOLDEN_HPP
#define STAG_TEST_GOLDEN_HPP

#include <string>
#include <utility>
#include <vector>

#include <stag/pipeline.hpp>

namespace stag::test {

struct golden_case {
  std::string name;
  direction dir;
  std::string input;
  std::string expected;
  bool pronominalize = false;
};

/// The bundled grammars, loaded once.
const grammar_bundle& bundled();

/// Worked translations the bundled grammar must reproduce exactly.
const std::vector<golden_case>& golden_translations();

/// Every sentence of the golden suite, in its own language: inputs and
/// expected outputs.
std::vector<std::pair<language, std::string>> golden_sentences();

/// Translates with a fresh session.
translation_result run(const golden_case& c);
translation_result run(direction dir, const std::string& text, bool pronominalize = false);

}  // namespace stag::test

#endif
