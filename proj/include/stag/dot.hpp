#ifndef STAG_DOT_HPP
#define STAG_DOT_HPP

#include <string>

#include <stag/derivation.hpp>
#include <stag/tree.hpp>

namespace stag {

/// Graphviz digraph of a derivation tree. Edges are labelled
/// `subst@<address>` or `adj@<address>`.
std::string derivation_to_dot(const derivation_node& d, const std::string& graph_name = "derivation");

/// Graphviz digraph of a derived tree. Node labels show the category, the
/// word for anchors, and the finalized features when `features` is set.
std::string derived_to_dot(const tree_node& root, const std::string& graph_name = "derived",
                           bool features = false);

}  // namespace stag

#endif
