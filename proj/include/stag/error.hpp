#ifndef STAG_ERROR_HPP
#define STAG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace stag {

/// Malformed input file: bad JSON or a schema violation.
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A structurally valid grammar that breaks a well-formedness rule.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
struct precondition_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Input tokens with no lexicon entry.
struct unknown_token_error : std::runtime_error {
  std::vector<std::string> tokens;
  explicit unknown_token_error(std::vector<std::string> toks);
};

/// A derivation whose feature equations cannot be satisfied.
struct composition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stag

#endif
