#ifndef STAG_TEST_ALGEBRA_HPP
#define STAG_TEST_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include <stag/feature.hpp>

namespace stag::test {

/// Every flat FS over `features`, each feature absent or one of `values`.
std::vector<feature_structure> all_structures(const std::vector<std::string>& features,
                                              const std::vector<std::string>& values);

/// Reference unification for variable-free structures: the union when no
/// feature carries two different atoms.
std::optional<feature_structure> union_oracle(const feature_structure& a, const feature_structure& b);

struct algebra_report {
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::string first_violation;
};

/// Commutativity, identity, idempotence and agreement with the oracle over
/// all pairs; associativity (of result and of failure) over all triples.
algebra_report check_ground_algebra(const std::vector<feature_structure>& all);

/// The same laws where values may be variables: results are compared after
/// resolving under the returned bindings.
algebra_report check_variable_algebra(const std::vector<feature_structure>& all);

}  // namespace stag::test

#endif
