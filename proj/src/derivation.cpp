#include <stag/derivation.hpp>

#include <algorithm>
#include <tuple>

#include <stag/error.hpp>

namespace stag {

std::string to_string(attach_op op) {
  return op == attach_op::substitution ? "subst" : "adj";
}

const derivation_node* derivation_node::child_at(attach_op o, const node_address& s) const {
  for (const auto& c : children)
    if (c.op == o && c.site == s) return &c;
  return nullptr;
}

void canonicalize(derivation_node& d) {
  for (auto& c : d.children) canonicalize(c);
  std::stable_sort(d.children.begin(), d.children.end(), [](const auto& a, const auto& b) {
    return std::tie(a.site, a.op) < std::tie(b.site, b.op);
  });
}

namespace {

std::string head(const derivation_node& d) {
  std::string s = d.tree + "[" + d.lemma;
  if (!d.surface.empty() && d.surface != d.lemma) s += "/" + d.surface;
  return s + "]";
}

void pretty(const derivation_node& d, int depth, std::string& out) {
  out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
  if (depth > 0) out += to_string(d.op) + "@" + d.site.display() + " ";
  out += head(d);
  if (d.recovered) out += d.controlled ? " {recovered, controlled}" : " {recovered}";
  out += "\n";
  for (const auto& c : d.children) pretty(c, depth + 1, out);
}

}  // namespace

std::string to_text(const derivation_node& d) {
  std::string s = head(d);
  if (d.children.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    const auto& c = d.children[i];
    if (i) s += "; ";
    s += to_string(c.op) + "@" + c.site.display() + " " + to_text(c);
  }
  return s + ")";
}

std::string to_pretty(const derivation_node& d) {
  std::string out;
  pretty(d, 0, out);
  return out;
}

std::size_t tree_count(const derivation_node& d) {
  std::size_t n = 1;
  for (const auto& c : d.children) n += tree_count(c);
  return n;
}

std::size_t adjunction_count(const derivation_node& d) {
  std::size_t n = 0;
  for (const auto& c : d.children) n += (c.op == attach_op::adjunction) + adjunction_count(c);
  return n;
}

std::size_t empty_slot_count(const derivation_node& d, const grammar& g) {
  std::size_t n = 0;
  if (const elementary_tree* t = g.find_tree(d.tree))
    for (const auto& [slot, addr] : t->arg_slots)
      if (!d.child_at(attach_op::substitution, addr)) ++n;
  for (const auto& c : d.children) n += empty_slot_count(c, g);
  return n;
}

std::vector<std::string> tree_names(const derivation_node& d) {
  std::vector<std::string> out{d.tree};
  for (const auto& c : d.children) {
    auto sub = tree_names(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

bool derivation_less(const derivation_node& a, const derivation_node& b, const grammar& g) {
  auto key = [&](const derivation_node& d) {
    return std::make_tuple(empty_slot_count(d, g), adjunction_count(d), tree_names(d), to_text(d));
  };
  return key(a) < key(b);
}

nlohmann::json to_json(const derivation_node& d) {
  nlohmann::json j;
  j["tree"] = d.tree;
  j["lemma"] = d.lemma;
  j["surface"] = d.surface;
  if (d.anchor_pos >= 0) j["anchor_pos"] = d.anchor_pos;
  if (d.recovered) j["recovered"] = true;
  if (d.controlled) j["controlled"] = true;
  for (const auto& [addr, fs] : d.imposed) j["imposed"][addr.str()] = to_json(fs);
  j["children"] = nlohmann::json::array();
  for (const auto& c : d.children) {
    nlohmann::json cj;
    cj["op"] = to_string(c.op);
    cj["site"] = c.site.str();
    cj["node"] = to_json(c);
    j["children"].push_back(cj);
  }
  return j;
}

derivation_node derivation_from_json(const nlohmann::json& j) {
  try {
    derivation_node d;
    d.tree = j.at("tree").get<std::string>();
    d.lemma = j.at("lemma").get<std::string>();
    d.surface = j.value("surface", std::string{});
    d.anchor_pos = j.value("anchor_pos", -1);
    d.recovered = j.value("recovered", false);
    d.controlled = j.value("controlled", false);
    if (j.contains("imposed"))
      for (const auto& [addr, fs] : j.at("imposed").items())
        d.imposed.emplace(node_address::parse(addr), feature_structure_from_json(fs));
    for (const auto& cj : j.value("children", nlohmann::json::array())) {
      derivation_node c = derivation_from_json(cj.at("node"));
      std::string op = cj.at("op").get<std::string>();
      if (op == "subst") c.op = attach_op::substitution;
      else if (op == "adj") c.op = attach_op::adjunction;
      else throw format_error("unknown attachment op '" + op + "'");
      c.site = node_address::parse(cj.at("site").get<std::string>());
      d.children.push_back(std::move(c));
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("malformed derivation: ") + e.what());
  }
}

}  // namespace stag
