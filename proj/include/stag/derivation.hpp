#ifndef STAG_DERIVATION_HPP
#define STAG_DERIVATION_HPP

#include <map>
#include <string>
#include <vector>

#include <stag/feature.hpp>
#include <stag/grammar.hpp>
#include <stag/tree.hpp>

namespace stag {

enum class attach_op { substitution, adjunction };

std::string to_string(attach_op op);

/// One elementary tree instance in a derivation tree, together with how it
/// attaches to its parent (unused on the root).
struct derivation_node {
  std::string tree;
  std::string lemma;
  /// Anchor surface form. Empty means "choose after composition".
  std::string surface;

  attach_op op = attach_op::substitution;
  node_address site;
  std::vector<derivation_node> children;

  /// Token index of the anchor in the parsed input; -1 if not from the input.
  int anchor_pos = -1;
  /// Inserted by argument recovery rather than parsed.
  bool recovered = false;
  /// Recovered as a controlled (PRO) subject.
  bool controlled = false;
  /// Features imposed on nodes of this instance (by transfer feature links),
  /// unified into the node's top when composing.
  std::map<node_address, feature_structure> imposed;

  const derivation_node* child_at(attach_op op, const node_address& site) const;
};

/// Sorts children by (site, op) recursively so equal derivations compare
/// equal textually.
void canonicalize(derivation_node& d);

/// One-line canonical form, e.g.
/// `ko_NP[ku](adj@root ko_case[-ka])`.
std::string to_text(const derivation_node& d);

/// Indented multi-line form for traces.
std::string to_pretty(const derivation_node& d);

std::size_t tree_count(const derivation_node& d);
std::size_t adjunction_count(const derivation_node& d);
/// Argument slots left without a substitution child.
std::size_t empty_slot_count(const derivation_node& d, const grammar& g);
/// Tree names in preorder.
std::vector<std::string> tree_names(const derivation_node& d);

/// Ranking order: fewer empty arguments, then fewer adjunctions, then
/// lexicographic tree names, then canonical text.
bool derivation_less(const derivation_node& a, const derivation_node& b, const grammar& g);

nlohmann::json to_json(const derivation_node& d);
derivation_node derivation_from_json(const nlohmann::json& j);

}  // namespace stag

#endif
