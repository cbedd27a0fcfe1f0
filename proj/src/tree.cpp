#include <stag/tree.hpp>

#include <set>

#include <stag/error.hpp>

namespace stag {

node_address node_address::parse(const std::string& dotted) {
  std::vector<int> path;
  if (dotted.empty() || dotted == "root") return node_address{};
  std::size_t pos = 0;
  while (pos <= dotted.size()) {
    std::size_t dot = dotted.find('.', pos);
    std::string part = dotted.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw format_error("malformed node address '" + dotted + "'");
    path.push_back(std::stoi(part));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return node_address{std::move(path)};
}

node_address node_address::child(int index) const {
  auto p = path_;
  p.push_back(index);
  return node_address{std::move(p)};
}

node_address node_address::parent() const {
  if (path_.empty()) throw precondition_error("root has no parent");
  auto p = path_;
  p.pop_back();
  return node_address{std::move(p)};
}

std::string node_address::str() const {
  std::string s;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(path_[i]);
  }
  return s;
}

std::string node_address::display() const { return is_root() ? "root" : str(); }

std::string to_string(node_mark m) {
  switch (m) {
    case node_mark::internal: return "internal";
    case node_mark::substitution: return "substitution";
    case node_mark::foot: return "foot";
    case node_mark::anchor: return "anchor";
    case node_mark::terminal: return "terminal";
  }
  return "internal";
}

node_mark node_mark_from_string(const std::string& s) {
  if (s == "internal") return node_mark::internal;
  if (s == "substitution") return node_mark::substitution;
  if (s == "foot") return node_mark::foot;
  if (s == "anchor") return node_mark::anchor;
  if (s == "terminal") return node_mark::terminal;
  throw format_error("unknown node mark '" + s + "'");
}

namespace {

void collect(const tree_node& n, const node_address& at, std::vector<node_address>& out) {
  out.push_back(at);
  for (std::size_t i = 0; i < n.children.size(); ++i)
    collect(n.children[i], at.child(static_cast<int>(i)), out);
}

}  // namespace

std::vector<node_address> preorder_addresses(const tree_node& root) {
  std::vector<node_address> out;
  collect(root, node_address{}, out);
  return out;
}

const tree_node& node_at(const tree_node& root, const node_address& addr) {
  const tree_node* cur = &root;
  for (int i : addr.path()) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->children.size())
      throw precondition_error("node address '" + addr.str() + "' is out of range");
    cur = &cur->children[static_cast<std::size_t>(i)];
  }
  return *cur;
}

tree_node& node_at(tree_node& root, const node_address& addr) {
  return const_cast<tree_node&>(node_at(static_cast<const tree_node&>(root), addr));
}

const tree_node& node_at(const elementary_tree& tree, const node_address& addr) {
  return node_at(tree.root, addr);
}

std::optional<node_address> elementary_tree::foot_address() const {
  for (const auto& a : preorder_addresses(root))
    if (node_at(root, a).mark == node_mark::foot) return a;
  return std::nullopt;
}

void index_tree(elementary_tree& tree) {
  tree.arg_slots.clear();
  tree.anchor_addresses.clear();
  for (const auto& a : preorder_addresses(tree.root)) {
    const tree_node& n = node_at(tree.root, a);
    if (n.mark == node_mark::substitution && !n.slot.empty()) tree.arg_slots.emplace(n.slot, a);
    if (n.mark == node_mark::anchor) tree.anchor_addresses.push_back(a);
  }
}

std::vector<tree_violation> validate_tree(const elementary_tree& tree) {
  std::vector<tree_violation> out;
  auto flag = [&](const node_address& a, std::string rule) {
    out.push_back({a, std::move(rule)});
  };

  std::vector<node_address> feet;
  std::vector<node_address> anchors;
  std::set<std::string> slots;
  for (const auto& a : preorder_addresses(tree.root)) {
    const tree_node& n = node_at(tree.root, a);
    switch (n.mark) {
      case node_mark::internal:
        if (n.children.empty()) flag(a, "internal node has no children");
        if (n.label.empty()) flag(a, "internal node must carry a non-terminal label");
        break;
      case node_mark::substitution:
        if (n.bottom) flag(a, "substitution node must not have a bottom feature structure");
        if (n.slot.empty()) flag(a, "substitution node needs a slot label");
        else if (!slots.insert(n.slot).second) flag(a, "duplicate slot label " + n.slot);
        break;
      case node_mark::foot:
        feet.push_back(a);
        break;
      case node_mark::anchor:
        anchors.push_back(a);
        break;
      case node_mark::terminal:
        break;
    }
    if (n.mark != node_mark::internal && !n.children.empty())
      flag(a, to_string(n.mark) + " node must be a leaf");
    if (n.mark != node_mark::terminal && n.mark != node_mark::internal && n.label.empty())
      flag(a, to_string(n.mark) + " node must carry a category label");
    if (n.droppable && n.mark != node_mark::substitution)
      flag(a, "only substitution nodes can be droppable");
  }

  if (tree.kind == tree_kind::initial) {
    if (!feet.empty()) flag(feet.front(), "initial tree must not contain a foot node");
  } else {
    if (feet.size() != 1) {
      flag(feet.empty() ? node_address{} : feet[1],
           "auxiliary tree must contain exactly one foot node");
    } else if (node_at(tree.root, feet.front()).label != tree.root.label) {
      flag(feet.front(), "foot node label must equal the root label");
    }
  }
  if (anchors.size() != 1) flag(node_address{}, "tree must have exactly one anchor node");
  if (tree.root.mark != node_mark::internal) flag(node_address{}, "root must be an internal node");

  try {
    node_at(tree.root, tree.semantic_node);
  } catch (const precondition_error&) {
    flag(tree.semantic_node, "semantic node address does not resolve");
  }
  for (const auto& [slot, addr] : tree.arg_slots) {
    try {
      if (node_at(tree.root, addr).mark != node_mark::substitution)
        flag(addr, "slot " + slot + " does not resolve to a substitution node");
    } catch (const precondition_error&) {
      flag(addr, "slot " + slot + " address does not resolve");
    }
  }
  return out;
}

nlohmann::json to_json(const tree_node& node) {
  nlohmann::json j;
  j["label"] = node.label;
  j["mark"] = to_string(node.mark);
  if (!node.top.empty()) j["top"] = to_json(node.top);
  if (node.bottom && !node.bottom->empty()) j["bottom"] = to_json(*node.bottom);
  if (node.adjoin == adjoin_constraint::forbid) j["adjoin"] = "forbid";
  if (!node.slot.empty()) j["slot"] = node.slot;
  if (node.droppable) j["droppable"] = true;
  if (!node.word.empty()) j["word"] = node.word;
  if (!node.children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const auto& c : node.children) j["children"].push_back(to_json(c));
  }
  return j;
}

tree_node tree_node_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw format_error("tree node must be a JSON object");
  tree_node n;
  n.label = j.value("label", std::string{});
  n.mark = node_mark_from_string(j.value("mark", std::string{"internal"}));
  n.top = feature_structure_from_json(j.value("top", nlohmann::json::object()));
  if (j.contains("bottom"))
    n.bottom = feature_structure_from_json(j.at("bottom"));
  else if (n.mark == node_mark::substitution)
    n.bottom.reset();
  std::string adjoin = j.value("adjoin", std::string{"allow"});
  if (adjoin == "forbid") n.adjoin = adjoin_constraint::forbid;
  else if (adjoin != "allow") throw format_error("adjoin must be 'allow' or 'forbid'");
  n.slot = j.value("slot", std::string{});
  n.droppable = j.value("droppable", false);
  if (j.contains("children")) {
    if (!j.at("children").is_array()) throw format_error("children must be an array");
    for (const auto& c : j.at("children")) n.children.push_back(tree_node_from_json(c));
  }
  return n;
}

}  // namespace stag
