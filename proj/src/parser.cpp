#include <stag/parser.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include <stag/compose.hpp>
#include <stag/error.hpp>

namespace stag {

namespace {

constexpr int no_gap = -1;
constexpr int top_dot = -1;
/// Bound on alternatives kept per chart item during extraction.
constexpr std::size_t item_cap = 4096;

struct chart_node {
  node_address address;
  std::string label;
  node_mark mark = node_mark::internal;
  bool can_adjoin = false;
  bool droppable = false;
  int parent = -1;
  int child_index = 0;
  std::vector<int> children;
};

struct instance {
  const elementary_tree* tree = nullptr;
  const lex_entry* entry = nullptr;
  std::string surface;
  int anchor_pos = -1;
  std::vector<chart_node> nodes;  // preorder; 0 is the root
};

/// An item covers tokens [i, j) except for the foot gap [k, l) when present.
/// dot == top_dot: the node after (optional) adjunction. Otherwise the first
/// `dot` children of the node; dot == child count is the node before
/// adjunction.
struct item_key {
  int inst, node, dot, i, j, k, l;
  friend bool operator==(const item_key&, const item_key&) = default;
};

struct item_key_hash {
  std::size_t operator()(const item_key& k) const {
    std::size_t h = 0;
    for (int v : {k.inst, k.node, k.dot, k.i, k.j, k.k, k.l})
      h = h * 1000003u ^ static_cast<std::size_t>(v + 7);
    return h;
  }
};

enum class rule { leaf, drop, subst, seq_start, seq_ext, no_adj, adj };

struct backptr {
  rule r;
  int a = -1;
  int b = -1;
};

struct item {
  item_key key;
  std::vector<backptr> back;
};

using partial = std::vector<derivation_node>;

class chart {
 public:
  chart(const std::vector<std::string>& tokens, const grammar& g, const parse_options& opts)
      : tokens_(tokens), g_(g), opts_(opts), n_(static_cast<int>(tokens.size())) {}

  parse_result run() {
    build_instances();
    seed();
    while (!agenda_.empty()) {
      int id = agenda_.front();
      agenda_.pop_front();
      process(id);
    }
    parse_result out;
    out.chart_items = items_.size();
    std::vector<derivation_node> found;
    for (std::size_t id = 0; id < items_.size(); ++id) {
      const item_key& k = items_[id].key;
      const instance& x = insts_[static_cast<std::size_t>(k.inst)];
      if (k.node != 0 || k.dot != top_dot || k.i != 0 || k.j != n_ || k.k != no_gap) continue;
      if (x.tree->kind != tree_kind::initial || x.nodes[0].label != g_.start_symbol) continue;
      for (const auto& d : nodes_of(static_cast<int>(id)))
        if (opts_.eager || try_compose(d, g_)) found.push_back(d);
    }
    std::stable_sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
      return derivation_less(a, b, g_);
    });
    out.truncated = truncated_;
    if (found.size() > opts_.limit) {
      found.resize(opts_.limit);
      out.truncated = true;
    }
    out.derivations = std::move(found);
    return out;
  }

 private:
  void build_instances() {
    std::set<std::string> terminals;
    for (const auto& t : g_.trees)
      for (const auto& a : preorder_addresses(t.root)) {
        const tree_node& n = node_at(t.root, a);
        if (n.mark == node_mark::terminal && !n.label.empty()) terminals.insert(n.label);
      }

    std::vector<std::string> unknown;
    for (int p = 0; p < n_; ++p) {
      const std::string& tok = tokens_[static_cast<std::size_t>(p)];
      auto entries = g_.lookup(tok);
      if (entries.empty() && !terminals.contains(tok)) unknown.push_back(tok);
      for (const lex_entry* e : entries)
        for (const auto& tn : e->tree_names) {
          instance x;
          x.tree = &g_.tree(tn);
          x.entry = e;
          x.surface = tok;
          x.anchor_pos = p;
          flatten(x.tree->root, node_address{}, -1, 0, x.nodes);
          insts_.push_back(std::move(x));
        }
    }
    if (!unknown.empty()) throw unknown_token_error(unknown);

    for (int xi = 0; xi < static_cast<int>(insts_.size()); ++xi) {
      const auto& x = insts_[static_cast<std::size_t>(xi)];
      for (int ni = 0; ni < static_cast<int>(x.nodes.size()); ++ni) {
        const chart_node& cn = x.nodes[static_cast<std::size_t>(ni)];
        if (cn.mark == node_mark::substitution) subst_sites_[cn.label].emplace_back(xi, ni);
      }
    }
  }

  static void flatten(const tree_node& n, const node_address& at, int parent, int child_index,
                      std::vector<chart_node>& out) {
    const int self = static_cast<int>(out.size());
    chart_node cn;
    cn.address = at;
    cn.label = n.label;
    cn.mark = n.mark;
    cn.can_adjoin = n.mark == node_mark::internal && n.adjoin == adjoin_constraint::allow;
    cn.droppable = n.droppable;
    cn.parent = parent;
    cn.child_index = child_index;
    out.push_back(cn);
    for (std::size_t c = 0; c < n.children.size(); ++c) {
      out[static_cast<std::size_t>(self)].children.push_back(static_cast<int>(out.size()));
      flatten(n.children[c], at.child(static_cast<int>(c)), self, static_cast<int>(c), out);
    }
  }

  const chart_node& cnode(int inst, int node) const {
    return insts_[static_cast<std::size_t>(inst)].nodes[static_cast<std::size_t>(node)];
  }

  void seed() {
    for (int xi = 0; xi < static_cast<int>(insts_.size()); ++xi) {
      const auto& x = insts_[static_cast<std::size_t>(xi)];
      for (int ni = 0; ni < static_cast<int>(x.nodes.size()); ++ni) {
        const chart_node& cn = x.nodes[static_cast<std::size_t>(ni)];
        switch (cn.mark) {
          case node_mark::anchor:
            add({xi, ni, top_dot, x.anchor_pos, x.anchor_pos + 1, no_gap, no_gap}, {rule::leaf});
            break;
          case node_mark::terminal:
            for (int i = 0; i <= n_; ++i) {
              if (cn.label.empty())
                add({xi, ni, top_dot, i, i, no_gap, no_gap}, {rule::leaf});
              else if (i < n_ && tokens_[static_cast<std::size_t>(i)] == cn.label)
                add({xi, ni, top_dot, i, i + 1, no_gap, no_gap}, {rule::leaf});
            }
            break;
          case node_mark::foot:
            for (int k = 0; k <= n_; ++k)
              for (int l = k; l <= n_; ++l) add({xi, ni, top_dot, k, l, k, l}, {rule::leaf});
            break;
          case node_mark::substitution:
            if (cn.droppable)
              for (int i = 0; i <= n_; ++i) add({xi, ni, top_dot, i, i, no_gap, no_gap}, {rule::drop});
            break;
          case node_mark::internal:
            break;
        }
      }
    }
  }

  int add(const item_key& k, backptr bp) {
    auto [it, inserted] = index_.try_emplace(k, static_cast<int>(items_.size()));
    if (inserted) {
      items_.push_back({k, {bp}});
      agenda_.push_back(it->second);
    } else {
      items_[static_cast<std::size_t>(it->second)].back.push_back(bp);
    }
    return it->second;
  }

  /// Joins two adjacent spans; at most one may carry a gap.
  static bool join(const item_key& left, const item_key& right, int& k, int& l) {
    if (left.j != right.i) return false;
    if (left.k != no_gap && right.k != no_gap) return false;
    k = left.k != no_gap ? left.k : right.k;
    l = left.k != no_gap ? left.l : right.l;
    return true;
  }

  void process(int id) {
    const item_key key = items_[static_cast<std::size_t>(id)].key;
    const chart_node& cn = cnode(key.inst, key.node);
    const instance& x = insts_[static_cast<std::size_t>(key.inst)];

    if (key.dot == top_dot) {
      top_by_start_[{key.inst, key.node, key.i}].push_back(id);
      if (cn.parent >= 0) {
        if (cn.child_index == 0) {
          add({key.inst, cn.parent, 1, key.i, key.j, key.k, key.l}, {rule::seq_start, id});
        } else {
          auto it = seq_by_end_.find({key.inst, cn.parent, cn.child_index, key.i});
          if (it != seq_by_end_.end())
            for (int sid : std::vector<int>(it->second)) {
              const item_key left = items_[static_cast<std::size_t>(sid)].key;
              int k, l;
              if (join(left, key, k, l))
                add({key.inst, cn.parent, cn.child_index + 1, left.i, key.j, k, l}, {rule::seq_ext, sid, id});
            }
        }
        return;
      }
      // Root of an instance.
      if (x.tree->kind == tree_kind::initial && key.k == no_gap) {
        auto it = subst_sites_.find(cn.label);
        if (it != subst_sites_.end())
          for (auto [yi, si] : it->second)
            add({yi, si, top_dot, key.i, key.j, no_gap, no_gap}, {rule::subst, id});
      } else if (x.tree->kind == tree_kind::auxiliary && key.k != no_gap) {
        aux_by_gap_[{cn.label, key.k, key.l}].push_back(id);
        auto it = bottom_by_span_.find({cn.label, key.k, key.l});
        if (it != bottom_by_span_.end())
          for (int bid : std::vector<int>(it->second)) {
            const item_key b = items_[static_cast<std::size_t>(bid)].key;
            add({b.inst, b.node, top_dot, key.i, key.j, b.k, b.l}, {rule::adj, bid, id});
          }
      }
      return;
    }

    const int nchildren = static_cast<int>(cn.children.size());
    if (key.dot == nchildren) {
      add({key.inst, key.node, top_dot, key.i, key.j, key.k, key.l}, {rule::no_adj, id});
      if (cn.can_adjoin) {
        bottom_by_span_[{cn.label, key.i, key.j}].push_back(id);
        auto it = aux_by_gap_.find({cn.label, key.i, key.j});
        if (it != aux_by_gap_.end())
          for (int aid : std::vector<int>(it->second)) {
            const item_key a = items_[static_cast<std::size_t>(aid)].key;
            add({key.inst, key.node, top_dot, a.i, a.j, key.k, key.l}, {rule::adj, id, aid});
          }
      }
      return;
    }

    seq_by_end_[{key.inst, key.node, key.dot, key.j}].push_back(id);
    const int child = cn.children[static_cast<std::size_t>(key.dot)];
    auto it = top_by_start_.find({key.inst, child, key.j});
    if (it != top_by_start_.end())
      for (int tid : std::vector<int>(it->second)) {
        const item_key right = items_[static_cast<std::size_t>(tid)].key;
        int k, l;
        if (join(key, right, k, l))
          add({key.inst, key.node, key.dot + 1, key.i, right.j, k, l}, {rule::seq_ext, id, tid});
      }
  }

  // ---- derivation extraction ----

  void push_capped(std::vector<partial>& out, partial p) {
    if (out.size() >= item_cap) {
      truncated_ = true;
      return;
    }
    out.push_back(std::move(p));
  }

  const std::vector<partial>& partials(int id) {
    auto memo = partials_.find(id);
    if (memo != partials_.end()) return memo->second;
    std::vector<partial> out;
    const item& it = items_[static_cast<std::size_t>(id)];
    for (const backptr& bp : it.back) {
      switch (bp.r) {
        case rule::leaf:
        case rule::drop:
          push_capped(out, {});
          break;
        case rule::subst: {
          const node_address& site = cnode(it.key.inst, it.key.node).address;
          for (const auto& d : nodes_of(bp.a)) {
            derivation_node c = d;
            c.op = attach_op::substitution;
            c.site = site;
            push_capped(out, {std::move(c)});
          }
          break;
        }
        case rule::seq_start:
        case rule::no_adj:
          for (const auto& p : partials(bp.a)) push_capped(out, p);
          break;
        case rule::seq_ext: {
          const auto& left = partials(bp.a);
          const auto& right = partials(bp.b);
          for (const auto& p : left)
            for (const auto& q : right) {
              partial r = p;
              r.insert(r.end(), q.begin(), q.end());
              push_capped(out, std::move(r));
            }
          break;
        }
        case rule::adj: {
          const item_key& bottom = items_[static_cast<std::size_t>(bp.a)].key;
          const node_address& site = cnode(bottom.inst, bottom.node).address;
          const auto& below = partials(bp.a);
          const auto& aux = nodes_of(bp.b);
          for (const auto& p : below)
            for (const auto& d : aux) {
              partial r = p;
              derivation_node c = d;
              c.op = attach_op::adjunction;
              c.site = site;
              r.push_back(std::move(c));
              push_capped(out, std::move(r));
            }
          break;
        }
      }
    }
    return partials_.emplace(id, std::move(out)).first->second;
  }

  /// Derivation nodes for the instance whose root-top item is `id`.
  const std::vector<derivation_node>& nodes_of(int id) {
    auto memo = nodes_.find(id);
    if (memo != nodes_.end()) return memo->second;
    const item_key& k = items_[static_cast<std::size_t>(id)].key;
    const instance& x = insts_[static_cast<std::size_t>(k.inst)];
    std::vector<derivation_node> out;
    for (const auto& p : partials(id)) {
      derivation_node d;
      d.tree = x.tree->name;
      d.lemma = x.entry->lemma;
      d.surface = x.surface;
      d.anchor_pos = x.anchor_pos;
      d.children = p;
      canonicalize(d);
      if (opts_.eager && !try_compose(d, g_)) continue;
      out.push_back(std::move(d));
    }
    return nodes_.emplace(id, std::move(out)).first->second;
  }

  const std::vector<std::string>& tokens_;
  const grammar& g_;
  parse_options opts_;
  int n_;

  std::vector<instance> insts_;
  std::vector<item> items_;
  std::unordered_map<item_key, int, item_key_hash> index_;
  std::deque<int> agenda_;

  std::map<std::string, std::vector<std::pair<int, int>>> subst_sites_;
  std::map<std::tuple<int, int, int>, std::vector<int>> top_by_start_;
  std::map<std::tuple<int, int, int, int>, std::vector<int>> seq_by_end_;
  std::map<std::tuple<std::string, int, int>, std::vector<int>> bottom_by_span_;
  std::map<std::tuple<std::string, int, int>, std::vector<int>> aux_by_gap_;

  std::map<int, std::vector<partial>> partials_;
  std::map<int, std::vector<derivation_node>> nodes_;
  bool truncated_ = false;
};

}  // namespace

parse_result parse(const std::vector<std::string>& tokens, const grammar& g,
                   const parse_options& opts) {
  chart c(tokens, g, opts);
  return c.run();
}

}  // namespace stag
