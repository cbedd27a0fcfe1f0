#ifndef STAG_PARSER_HPP
#define STAG_PARSER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <stag/derivation.hpp>
#include <stag/grammar.hpp>

namespace stag {

struct parse_options {
  /// Check feature equations each time a derivation node is assembled.
  /// When false, features are only checked on complete derivations; the
  /// accepted set is the same either way.
  bool eager = true;
  /// Maximum number of derivations returned.
  std::size_t limit = 64;
};

struct parse_result {
  /// Ranked: fewer empty arguments, fewer adjunctions, tree names.
  std::vector<derivation_node> derivations;
  bool truncated = false;
  std::size_t chart_items = 0;
};

/// Returns every derivation of `tokens` rooted in the start symbol whose
/// features finalize. Throws unknown_token_error for tokens the grammar
/// cannot anchor or match.
parse_result parse(const std::vector<std::string>& tokens, const grammar& g,
                   const parse_options& opts = {});

}  // namespace stag

#endif
