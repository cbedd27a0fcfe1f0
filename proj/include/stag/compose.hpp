#ifndef STAG_COMPOSE_HPP
#define STAG_COMPOSE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <stag/derivation.hpp>
#include <stag/grammar.hpp>
#include <stag/tree.hpp>

namespace stag {

/// Path of child indices from the root of a derivation tree.
using derivation_path = std::vector<int>;

const derivation_node& node_at(const derivation_node& root, const derivation_path& path);
derivation_node& node_at(derivation_node& root, const derivation_path& path);

/// A tree instance of a composed derivation. Instance 0 is the root; the
/// rest are numbered in build order (each node's children by descending site).
struct instance_info {
  derivation_path path;
  std::string tree;
  std::string lemma;
  std::string surface;
  /// Finalized features of every node of this instance, by address in the
  /// instance's elementary tree.
  std::map<node_address, feature_structure> features;
};

struct derived_tree {
  /// Fully composed tree. Every node's top holds its finalized features.
  tree_node root;
  /// The derivation, with anchor surfaces filled in.
  derivation_node source_derivation;
  std::vector<instance_info> instances;
  /// Unfilled substitution nodes (instance, address) in surface order.
  std::vector<std::pair<int, node_address>> open_slots;
};

/// Composes a derivation. Throws composition_error naming the failing
/// address when the feature equations cannot be satisfied or the derivation
/// does not fit the grammar.
derived_tree compose(const derivation_node& d, const grammar& g);

/// As compose, but failure is reported through the return value.
std::optional<derived_tree> try_compose(const derivation_node& d, const grammar& g,
                                        std::string* why = nullptr);

/// Left-to-right anchor and terminal strings; empty leaves are skipped.
std::vector<std::string> yield_of(const derived_tree& t);
std::vector<std::string> yield_of(const tree_node& root);

struct empty_slot {
  derivation_path path;  ///< verb instance in the derivation
  std::string lemma;
  std::string tree;
  std::string slot;
  node_address address;
  /// The anchoring lexeme's selectional restriction for this slot.
  feature_structure restriction;
  /// Finalized features of the slot node (case requirements and the like).
  feature_structure slot_features;
};

/// Argument slots with no substitution child, in surface order.
std::vector<empty_slot> empty_slots(const derivation_node& d, const grammar& g);

}  // namespace stag

#endif
