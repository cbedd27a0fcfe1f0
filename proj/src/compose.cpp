#include <stag/compose.hpp>

#include <algorithm>

#include <stag/combine.hpp>
#include <stag/error.hpp>

namespace stag {

const derivation_node& node_at(const derivation_node& root, const derivation_path& path) {
  const derivation_node* cur = &root;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->children.size())
      throw precondition_error("derivation path out of range");
    cur = &cur->children[static_cast<std::size_t>(i)];
  }
  return *cur;
}

derivation_node& node_at(derivation_node& root, const derivation_path& path) {
  return const_cast<derivation_node&>(node_at(static_cast<const derivation_node&>(root), path));
}

namespace {

class composer {
 public:
  explicit composer(const grammar& g) : g_(g) {}

  tree_node build(const derivation_node& d, derivation_path path) {
    const int id = static_cast<int>(instances_.size());
    instances_.push_back({path, d.tree, d.lemma, d.surface, {}});
    const std::string where = d.tree + "[" + d.lemma + "]";

    const elementary_tree* tmpl = g_.find_tree(d.tree);
    if (!tmpl) throw composition_error(where + ": unknown tree");
    const lex_entry* entry = g_.find_entry(d.lemma, d.tree);
    if (!entry) throw composition_error(where + ": no lexeme " + d.lemma + " anchors this tree");

    anchored_tree at = [&] {
      try {
        return anchor_tree(*tmpl, *entry, d.surface);
      } catch (const precondition_error& e) {
        throw composition_error(where + ": " + e.what());
      }
    }();

    const std::string suffix = "#" + std::to_string(id);
    for (const auto& a : preorder_addresses(at.tree.root)) {
      tree_node& n = stag::node_at(at.tree.root, a);
      n.top = rename_apart(n.top, suffix);
      if (n.bottom) n.bottom = rename_apart(*n.bottom, suffix);
      n.origins = {{id, a}};
    }
    tree_node root = std::move(at.tree.root);

    for (const auto& [addr, fs] : d.imposed) {
      tree_node* n = find(root, addr, where);
      auto r = unify(n->top, fs, env_);
      if (!r) throw composition_error(where + " at " + addr.display() + ": imposed features clash");
      n->top = std::move(r->fs);
      env_ = std::move(r->env);
    }

    // Deeper sites first, so an adjunction never shifts an address that is
    // still to be processed.
    std::vector<std::size_t> order(d.children.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return d.children[a].site > d.children[b].site;
    });

    std::vector<node_address> adjoined;
    for (std::size_t i : order) {
      const derivation_node& c = d.children[i];
      derivation_path cpath = path;
      cpath.push_back(static_cast<int>(i));
      tree_node sub = build(c, cpath);
      tree_node* site = find(root, c.site, where);
      const std::string at_site = where + " at " + c.site.display();
      try {
        if (c.op == attach_op::substitution) {
          if (site->mark != node_mark::substitution)
            throw composition_error(at_site + ": not an open substitution node");
          auto r = substitute_features(*site, sub, env_);
          if (!r) throw composition_error(at_site + ": feature clash substituting " + c.tree + "[" + c.lemma + "]");
          *site = std::move(r->node);
          env_ = std::move(r->env);
        } else {
          if (std::find(adjoined.begin(), adjoined.end(), c.site) != adjoined.end())
            throw composition_error(at_site + ": more than one adjunction");
          adjoined.push_back(c.site);
          auto foot_path = find_foot(sub, node_address{});
          if (!foot_path) throw composition_error(at_site + ": adjoined tree " + c.tree + " has no foot");
          auto r = adjoin_features(*site, sub, stag::node_at(sub, *foot_path), env_);
          if (!r) throw composition_error(at_site + ": feature clash adjoining " + c.tree + "[" + c.lemma + "]");
          stag::node_at(r->upper, *foot_path) = std::move(r->lower);
          *site = std::move(r->upper);
          env_ = std::move(r->env);
        }
      } catch (const precondition_error& e) {
        throw composition_error(at_site + ": " + e.what());
      }
    }
    return root;
  }

  derived_tree finish(tree_node root, const derivation_node& d) {
    // Collapse top and bottom everywhere, accumulating bindings.
    std::vector<tree_node*> nodes;
    collect(root, nodes);
    for (tree_node* n : nodes) {
      auto r = finalize_node(*n, env_);
      if (!r) throw composition_error("top/bottom clash at " + describe(*n));
      env_ = std::move(r->env);
    }

    derived_tree out;
    out.source_derivation = d;
    for (tree_node* n : nodes) {
      auto r = finalize_node(*n, env_);
      feature_structure fs = resolve(r->fs, r->env);
      n->top = fs;
      if (n->bottom) n->bottom = fs;
      for (const auto& o : n->origins) instances_[static_cast<std::size_t>(o.instance)].features[o.address] = fs;
      if (n->mark == node_mark::anchor && n->word.empty()) choose_surface(*n);
    }
    for (auto& inst : instances_)
      node_at(out.source_derivation, inst.path).surface = inst.surface;
    out.instances = std::move(instances_);
    open_slots(root, out.open_slots);
    out.root = std::move(root);
    return out;
  }

 private:
  tree_node* find(tree_node& root, const node_address& addr, const std::string& where) {
    try {
      return &stag::node_at(root, addr);
    } catch (const precondition_error&) {
      throw composition_error(where + ": no node at " + addr.display());
    }
  }

  static std::optional<node_address> find_foot(const tree_node& n, const node_address& at) {
    if (n.mark == node_mark::foot) return at;
    for (std::size_t i = 0; i < n.children.size(); ++i)
      if (auto f = find_foot(n.children[i], at.child(static_cast<int>(i)))) return f;
    return std::nullopt;
  }

  static void collect(tree_node& n, std::vector<tree_node*>& out) {
    out.push_back(&n);
    for (auto& c : n.children) collect(c, out);
  }

  std::string describe(const tree_node& n) const {
    std::string s = n.label;
    for (const auto& o : n.origins) {
      const auto& inst = instances_[static_cast<std::size_t>(o.instance)];
      s += " " + inst.tree + "[" + inst.lemma + "]@" + o.address.display();
    }
    return s;
  }

  void choose_surface(tree_node& n) {
    for (const auto& o : n.origins) {
      auto& inst = instances_[static_cast<std::size_t>(o.instance)];
      const lex_entry* e = g_.find_entry(inst.lemma, inst.tree);
      if (!e) continue;
      for (const auto& f : e->surface_forms) {
        if (unify(n.top, f.features)) {
          n.word = f.form;
          inst.surface = f.form;
          return;
        }
      }
      throw composition_error("no surface form of " + inst.lemma + " fits " + to_string(n.top));
    }
  }

  void open_slots(const tree_node& n, std::vector<std::pair<int, node_address>>& out) const {
    if (n.mark == node_mark::substitution && n.origins.size() == 1)
      out.emplace_back(n.origins.front().instance, n.origins.front().address);
    for (const auto& c : n.children) open_slots(c, out);
  }

  const grammar& g_;
  bindings env_;
  std::vector<instance_info> instances_;
};

}  // namespace

derived_tree compose(const derivation_node& d, const grammar& g) {
  composer c(g);
  tree_node root = c.build(d, {});
  return c.finish(std::move(root), d);
}

std::optional<derived_tree> try_compose(const derivation_node& d, const grammar& g,
                                        std::string* why) {
  try {
    return compose(d, g);
  } catch (const composition_error& e) {
    if (why) *why = e.what();
    return std::nullopt;
  }
}

std::vector<std::string> yield_of(const tree_node& root) {
  std::vector<std::string> out;
  auto walk = [&](auto& self, const tree_node& n) -> void {
    if (n.is_leaf()) {
      if (n.mark == node_mark::anchor && !n.word.empty()) out.push_back(n.word);
      else if (n.mark == node_mark::terminal && !n.label.empty()) out.push_back(n.label);
      return;
    }
    for (const auto& c : n.children) self(self, c);
  };
  walk(walk, root);
  return out;
}

std::vector<std::string> yield_of(const derived_tree& t) { return yield_of(t.root); }

std::vector<empty_slot> empty_slots(const derivation_node& d, const grammar& g) {
  derived_tree t = compose(d, g);
  std::vector<empty_slot> out;
  for (const auto& [id, addr] : t.open_slots) {
    const auto& inst = t.instances[static_cast<std::size_t>(id)];
    const elementary_tree& tmpl = g.tree(inst.tree);
    const tree_node& n = node_at(tmpl, addr);
    empty_slot s;
    s.path = inst.path;
    s.lemma = inst.lemma;
    s.tree = inst.tree;
    s.slot = n.slot;
    s.address = addr;
    if (const lex_entry* e = g.find_entry(inst.lemma, inst.tree)) {
      auto it = e->selectional_restrictions.find(n.slot);
      if (it != e->selectional_restrictions.end()) s.restriction = it->second;
    }
    auto f = inst.features.find(addr);
    if (f != inst.features.end()) s.slot_features = f->second;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace stag
