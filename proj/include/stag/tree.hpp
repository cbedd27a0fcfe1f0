#ifndef STAG_TREE_HPP
#define STAG_TREE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <stag/feature.hpp>

namespace stag {

/// Gorn address: child indices from the root. The empty path is the root.
class node_address {
 public:
  node_address() = default;
  explicit node_address(std::vector<int> path) : path_(std::move(path)) {}

  /// Parses a dotted path such as "1.0". The empty string is the root.
  static node_address parse(const std::string& dotted);

  const std::vector<int>& path() const { return path_; }
  bool is_root() const { return path_.empty(); }
  std::size_t depth() const { return path_.size(); }

  node_address child(int index) const;
  node_address parent() const;

  /// Dotted form; the root renders as "".
  std::string str() const;
  /// Dotted form with the root rendered as "root", for display.
  std::string display() const;

  friend bool operator==(const node_address&, const node_address&) = default;
  friend auto operator<=>(const node_address&, const node_address&) = default;

 private:
  std::vector<int> path_;
};

enum class node_mark { internal, substitution, foot, anchor, terminal };
enum class adjoin_constraint { allow, forbid };

std::string to_string(node_mark m);
node_mark node_mark_from_string(const std::string& s);

/// Where a node of a derived tree came from: a tree instance (numbered by
/// composition) and the node's address in that instance's elementary tree.
struct node_origin {
  int instance = -1;
  node_address address;
  friend bool operator==(const node_origin&, const node_origin&) = default;
};

struct tree_node {
  std::string label;
  node_mark mark = node_mark::internal;
  feature_structure top;
  std::optional<feature_structure> bottom = feature_structure{};
  std::vector<tree_node> children;
  adjoin_constraint adjoin = adjoin_constraint::allow;

  /// Argument slot label (NP0, NP1, S1, ...) on substitution nodes.
  std::string slot;
  /// Substitution slot that may stay empty (dropped argument).
  bool droppable = false;
  /// Surface string placed on an anchor node by anchoring.
  std::string word;

  /// Populated only in derived trees.
  std::vector<node_origin> origins;

  bool is_leaf() const { return children.empty(); }
};

enum class tree_kind { initial, auxiliary };

struct elementary_tree {
  std::string name;
  tree_kind kind = tree_kind::initial;
  tree_node root;
  std::map<std::string, node_address> arg_slots;
  std::vector<node_address> anchor_addresses;
  /// Node whose bottom receives the anchor's semantic features.
  node_address semantic_node;

  std::optional<node_address> foot_address() const;
};

/// Recomputes `arg_slots` and `anchor_addresses` from the node marks.
void index_tree(elementary_tree& tree);

const tree_node& node_at(const tree_node& root, const node_address& addr);
tree_node& node_at(tree_node& root, const node_address& addr);
const tree_node& node_at(const elementary_tree& tree, const node_address& addr);

/// Returns the addresses of all nodes in preorder.
std::vector<node_address> preorder_addresses(const tree_node& root);

struct tree_violation {
  node_address address;
  std::string rule;
};

/// Lists every well-formedness violation; an empty result means the tree is
/// valid.
std::vector<tree_violation> validate_tree(const elementary_tree& tree);

nlohmann::json to_json(const tree_node& node);
tree_node tree_node_from_json(const nlohmann::json& j);

}  // namespace stag

#endif
