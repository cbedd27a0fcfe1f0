#include <stag/transfer.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include <stag/error.hpp>

namespace stag {

std::string to_string(direction d) { return d == direction::ko_en ? "ko-en" : "en-ko"; }

direction direction_from_string(const std::string& s) {
  if (s == "ko-en") return direction::ko_en;
  if (s == "en-ko") return direction::en_ko;
  throw format_error("unknown direction '" + s + "' (expected ko-en or en-ko)");
}

language source_language(direction d) { return d == direction::ko_en ? language::ko : language::en; }
language target_language(direction d) { return d == direction::ko_en ? language::en : language::ko; }

bool tree_ref::matches(language l, const std::string& t, const std::string& lm) const {
  return lang == l && tree == t && (lemma == "*" || lemma == lm);
}

const tree_ref& oriented_entry::from() const { return reversed ? *entry->target : entry->source; }

std::optional<tree_ref> oriented_entry::to() const {
  if (reversed) return entry->source;
  return entry->target;
}

std::optional<node_address> oriented_entry::link_for(const node_address& from_address) const {
  for (const auto& l : entry->node_links)
    if ((reversed ? l.target : l.source) == from_address) return reversed ? l.source : l.target;
  return std::nullopt;
}

std::vector<adjunct_ref> oriented_entry::adjuncts_at(const node_address& to_address) const {
  std::vector<adjunct_ref> out;
  for (const auto& l : entry->node_links) {
    if ((reversed ? l.source : l.target) != to_address) continue;
    const auto& a = reversed ? l.source_adjuncts : l.target_adjuncts;
    out.insert(out.end(), a.begin(), a.end());
  }
  return out;
}

std::vector<std::pair<feature_ref, feature_ref>> oriented_entry::features() const {
  std::vector<std::pair<feature_ref, feature_ref>> out;
  for (const auto& f : entry->feature_links) {
    if (reversed) out.emplace_back(f.target, f.source);
    else out.emplace_back(f.source, f.target);
  }
  return out;
}

namespace {

using nlohmann::json;

tree_ref ref_from_json(const json& j) {
  return {language_from_string(j.at("language").get<std::string>()), j.at("tree").get<std::string>(),
          j.at("lemma").get<std::string>()};
}

json to_json(const tree_ref& r) {
  return {{"language", to_string(r.lang)}, {"tree", r.tree}, {"lemma", r.lemma}};
}

std::vector<adjunct_ref> adjuncts_from_json(const json& j, const char* key) {
  std::vector<adjunct_ref> out;
  if (!j.contains(key)) return out;
  for (const auto& a : j.at(key)) out.push_back({a.at("tree").get<std::string>(), a.at("lemma").get<std::string>()});
  return out;
}

json to_json(const std::vector<adjunct_ref>& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back({{"tree", a.tree}, {"lemma", a.lemma}});
  return out;
}

feature_ref feature_ref_from_json(const json& j) {
  return {node_address::parse(j.at("address").get<std::string>()), j.at("feature").get<std::string>()};
}

transfer_entry entry_from_json(const json& j, std::size_t index) {
  transfer_entry e;
  e.name = j.value("name", "entry" + std::to_string(index));
  e.source = ref_from_json(j.at("source"));
  if (j.contains("target") && !j.at("target").is_null() && !j.at("target").empty())
    e.target = ref_from_json(j.at("target"));
  if (j.contains("node_links")) {
    for (const auto& l : j.at("node_links")) {
      e.node_links.push_back({node_address::parse(l.at("source").get<std::string>()),
                              node_address::parse(l.at("target").get<std::string>()),
                              adjuncts_from_json(l, "source_adjuncts"), adjuncts_from_json(l, "target_adjuncts")});
    }
  }
  if (j.contains("feature_links")) {
    for (const auto& f : j.at("feature_links"))
      e.feature_links.push_back({feature_ref_from_json(f.at("source")), feature_ref_from_json(f.at("target"))});
  }
  if (j.contains("precondition")) {
    for (const auto& [addr, fs] : j.at("precondition").items())
      e.precondition.emplace(node_address::parse(addr), feature_structure_from_json(fs));
  }
  e.bidirectional = j.value("bidirectional", false);
  if (e.bidirectional && !e.target) throw format_error("transfer entry " + e.name + ": bidirectional entry needs a target");
  return e;
}

}  // namespace

transfer_lexicon parse_transfer_lexicon(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw format_error(std::string("transfer lexicon parse error: ") + e.what());
  }
  transfer_lexicon lex;
  try {
    const json& list = doc.is_object() ? doc.at("entries") : doc;
    if (!list.is_array()) throw format_error("transfer lexicon must be a JSON array of entries");
    for (std::size_t i = 0; i < list.size(); ++i) lex.entries.push_back(entry_from_json(list[i], i));
  } catch (const json::exception& e) {
    throw format_error(std::string("transfer lexicon schema error: ") + e.what());
  }
  return lex;
}

transfer_lexicon load_transfer_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot read transfer lexicon " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_transfer_lexicon(ss.str());
  } catch (const format_error& e) {
    throw format_error(path.string() + ": " + e.what());
  }
}

nlohmann::json to_json(const transfer_lexicon& lex) {
  json out = json::array();
  for (const auto& e : lex.entries) {
    json j;
    j["name"] = e.name;
    j["source"] = to_json(e.source);
    j["target"] = e.target ? to_json(*e.target) : json(nullptr);
    if (!e.node_links.empty()) {
      j["node_links"] = json::array();
      for (const auto& l : e.node_links) {
        json lj{{"source", l.source.str()}, {"target", l.target.str()}};
        if (!l.source_adjuncts.empty()) lj["source_adjuncts"] = to_json(l.source_adjuncts);
        if (!l.target_adjuncts.empty()) lj["target_adjuncts"] = to_json(l.target_adjuncts);
        j["node_links"].push_back(lj);
      }
    }
    for (const auto& f : e.feature_links) {
      j["feature_links"].push_back({{"source", {{"address", f.source.address.str()}, {"feature", f.source.feature}}},
                                    {"target", {{"address", f.target.address.str()}, {"feature", f.target.feature}}}});
    }
    for (const auto& [addr, fs] : e.precondition) j["precondition"][addr.str()] = to_json(fs);
    if (e.bidirectional) j["bidirectional"] = true;
    out.push_back(j);
  }
  return out;
}

std::vector<std::string> validate_transfer_lexicon(const transfer_lexicon& lex, const grammar& ko,
                                                   const grammar& en) {
  std::vector<std::string> out;
  auto pick = [&](language l) -> const grammar& { return l == language::ko ? ko : en; };
  auto check_ref = [&](const std::string& who, const tree_ref& r) -> const elementary_tree* {
    const elementary_tree* t = pick(r.lang).find_tree(r.tree);
    if (!t) {
      out.push_back(who + ": unknown tree " + r.tree);
      return nullptr;
    }
    if (r.lemma != "*" && !pick(r.lang).find_entry(r.lemma, r.tree))
      out.push_back(who + ": no lexeme " + r.lemma + " anchors " + r.tree);
    return t;
  };
  auto check_addr = [&](const std::string& who, const elementary_tree* t, const node_address& a) {
    if (!t) return;
    try {
      node_at(*t, a);
    } catch (const precondition_error&) {
      out.push_back(who + ": address " + a.display() + " not in tree " + t->name);
    }
  };
  auto check_adjuncts = [&](const std::string& who, language l, const std::vector<adjunct_ref>& v) {
    for (const auto& a : v) {
      const elementary_tree* t = pick(l).find_tree(a.tree);
      if (!t || t->kind != tree_kind::auxiliary) out.push_back(who + ": adjunct " + a.tree + " is not an auxiliary tree");
      else if (!pick(l).find_entry(a.lemma, a.tree)) out.push_back(who + ": no lexeme " + a.lemma + " anchors " + a.tree);
    }
  };

  for (const auto& e : lex.entries) {
    const std::string who = "transfer entry " + e.name;
    const elementary_tree* s = check_ref(who, e.source);
    const elementary_tree* t = e.target ? check_ref(who, *e.target) : nullptr;
    if (e.target && e.target->lang == e.source.lang) out.push_back(who + ": both sides in one language");
    if (!e.target && (!e.node_links.empty() || !e.feature_links.empty()))
      out.push_back(who + ": links on an entry without a target");
    for (const auto& l : e.node_links) {
      check_addr(who, s, l.source);
      check_addr(who, t, l.target);
      check_adjuncts(who, e.source.lang, l.source_adjuncts);
      if (e.target) check_adjuncts(who, e.target->lang, l.target_adjuncts);
    }
    for (const auto& f : e.feature_links) {
      check_addr(who, s, f.source.address);
      check_addr(who, t, f.target.address);
    }
    for (const auto& [a, fs] : e.precondition) check_addr(who, s, a);
  }
  return out;
}

namespace {

bool precondition_holds(const transfer_entry& e,
                        const std::map<node_address, feature_structure>& features, std::string* why) {
  for (const auto& [addr, want] : e.precondition) {
    auto it = features.find(addr);
    const feature_structure have = it == features.end() ? feature_structure{} : it->second;
    if (!unify(want, have)) {
      if (why) *why = "precondition " + to_string(want) + " fails at " + addr.display() + " " + to_string(have);
      return false;
    }
  }
  return true;
}

std::vector<oriented_entry> lookup_traced(const transfer_lexicon& lex, direction dir, const std::string& tree,
                                          const std::string& lemma,
                                          const std::map<node_address, feature_structure>& features,
                                          std::vector<std::string>* rejected) {
  const language from = source_language(dir);
  std::vector<oriented_entry> out;
  for (const auto& e : lex.entries) {
    if (e.source.matches(from, tree, lemma)) {
      std::string why;
      if (precondition_holds(e, features, &why)) out.push_back({&e, false});
      else if (rejected) rejected->push_back(e.name + ": " + why);
    } else if (e.bidirectional && e.target && e.target->matches(from, tree, lemma)) {
      out.push_back({&e, true});
    }
  }
  return out;
}

}  // namespace

std::vector<oriented_entry> lookup(const transfer_lexicon& lex, direction dir, const std::string& tree,
                                   const std::string& lemma,
                                   const std::map<node_address, feature_structure>& features) {
  return lookup_traced(lex, dir, tree, lemma, features, nullptr);
}

bool apply_feature_links(const oriented_entry& e,
                         const std::map<node_address, feature_structure>& source_features,
                         const grammar& target_grammar, derivation_node& target) {
  const elementary_tree* tmpl = target_grammar.find_tree(target.tree);
  if (!tmpl) return false;
  for (const auto& [from, to] : e.features()) {
    auto it = source_features.find(from.address);
    if (it == source_features.end()) continue;
    auto v = it->second.find(from.feature);
    if (v == it->second.end() || !v->second.is_atom()) continue;
    const tree_node& n = node_at(*tmpl, to.address);
    for (const feature_structure* fs : {&n.top, n.bottom ? &*n.bottom : nullptr}) {
      if (!fs) continue;
      auto fixed = fs->find(to.feature);
      if (fixed != fs->end() && fixed->second.is_atom() && fixed->second.text != v->second.text) return false;
    }
    feature_structure& imposed = target.imposed[to.address];
    auto r = unify(imposed, feature_structure{{to.feature, v->second}});
    if (!r) return false;
    imposed = std::move(r->fs);
  }
  return true;
}

namespace {

class transferrer {
 public:
  transferrer(const derived_tree& composed, const transfer_lexicon& lex, const grammar& tg, direction dir,
              std::size_t limit, transfer_output& out)
      : composed_(composed), lex_(lex), tg_(tg), dir_(dir), limit_(limit), out_(out) {
    for (std::size_t i = 0; i < composed.instances.size(); ++i) by_path_[composed.instances[i].path] = i;
  }

  /// Target options for a source subtree; nullopt means "dropped".
  std::vector<std::optional<derivation_node>> map(const derivation_node& src, const derivation_path& path) {
    static const std::map<node_address, feature_structure> none;
    auto pi = by_path_.find(path);
    const auto& features = pi == by_path_.end() ? none : composed_.instances[pi->second].features;

    // Steps are recorded in preorder.
    const std::size_t step_index = out_.steps.size();
    out_.steps.emplace_back();
    transfer_step step;
    step.source_node = src.tree + "[" + src.lemma + "]";
    auto entries = lookup_traced(lex_, dir_, src.tree, src.lemma, features, &step.rejected);

    std::vector<std::vector<std::optional<derivation_node>>> child_opts;
    for (std::size_t i = 0; i < src.children.size(); ++i) {
      derivation_path cp = path;
      cp.push_back(static_cast<int>(i));
      child_opts.push_back(map(src.children[i], cp));
    }

    std::vector<std::optional<derivation_node>> result;
    for (const auto& e : entries) {
      if (!e.to()) {
        step.selected.push_back(e.entry->name);
        result.emplace_back(std::nullopt);
        continue;
      }
      derivation_node base;
      base.tree = e.to()->tree;
      base.lemma = e.to()->lemma;
      base.surface.clear();
      base.recovered = src.recovered;
      base.controlled = src.controlled;
      if (!apply_feature_links(e, features, tg_, base)) {
        step.rejected.push_back(e.entry->name + ": linked feature clashes with target tree");
        continue;
      }

      // Per child: the attachments it can contribute under this entry.
      std::vector<std::vector<std::optional<derivation_node>>> slots;
      std::string why;
      for (std::size_t i = 0; i < src.children.size() && why.empty(); ++i) {
        const derivation_node& c = src.children[i];
        std::vector<std::optional<derivation_node>> opts;
        for (const auto& o : child_opts[i]) {
          if (!o) {
            opts.emplace_back(std::nullopt);
            continue;
          }
          auto to_addr = e.link_for(c.site);
          if (!to_addr) continue;
          derivation_node t = *o;
          t.op = c.op;
          t.site = *to_addr;
          opts.emplace_back(std::move(t));
        }
        if (opts.empty())
          why = "no link for " + std::string(c.op == attach_op::substitution ? "subst@" : "adj@") + c.site.display();
        slots.push_back(std::move(opts));
      }
      if (!why.empty()) {
        step.rejected.push_back(e.entry->name + ": " + why);
        continue;
      }
      step.selected.push_back(e.entry->name);
      expand(e, base, slots, 0, result);
    }

    if (entries.empty()) out_.gaps.push_back(step.source_node);
    out_.steps[step_index] = std::move(step);
    return result;
  }

 private:
  void expand(const oriented_entry& e, derivation_node& partial,
              const std::vector<std::vector<std::optional<derivation_node>>>& slots, std::size_t i,
              std::vector<std::optional<derivation_node>>& result) {
    if (result.size() >= limit_) {
      out_.truncated = true;
      return;
    }
    if (i == slots.size()) {
      derivation_node done = partial;
      if (insert_adjuncts(e, done)) {
        canonicalize(done);
        result.emplace_back(std::move(done));
      }
      return;
    }
    for (const auto& o : slots[i]) {
      if (o) partial.children.push_back(*o);
      expand(e, partial, slots, i + 1, result);
      if (o) partial.children.pop_back();
    }
  }

  bool insert_adjuncts(const oriented_entry& e, derivation_node& n) {
    std::vector<std::pair<node_address, attach_op>> seen;
    for (const auto& c : n.children) {
      for (const auto& s : seen)
        if (s.first == c.site && s.second == c.op) return false;
      seen.emplace_back(c.site, c.op);
    }
    for (auto& c : n.children) {
      if (c.op != attach_op::substitution) continue;
      derivation_node* top = &c;
      while (true) {
        auto it = std::find_if(top->children.begin(), top->children.end(), [](const derivation_node& k) {
          return k.op == attach_op::adjunction && k.site.is_root();
        });
        if (it == top->children.end()) break;
        top = &*it;
      }
      for (const auto& a : e.adjuncts_at(c.site)) {
        derivation_node adj;
        adj.tree = a.tree;
        adj.lemma = a.lemma;
        adj.op = attach_op::adjunction;
        adj.recovered = c.recovered;
        top->children.push_back(std::move(adj));
        top = &top->children.back();
      }
    }
    return true;
  }

  const derived_tree& composed_;
  const transfer_lexicon& lex_;
  const grammar& tg_;
  direction dir_;
  std::size_t limit_;
  transfer_output& out_;
  std::map<derivation_path, std::size_t> by_path_;
};

}  // namespace

transfer_output transfer(const derivation_node& source, const derived_tree& composed,
                         const transfer_lexicon& lex, const grammar& target_grammar, direction dir,
                         std::size_t limit) {
  transfer_output out;
  transferrer t(composed, lex, target_grammar, dir, limit, out);
  for (auto& o : t.map(source, {}))
    if (o) out.candidates.push_back(std::move(*o));
  return out;
}

filter_result filter_by_composition(const std::vector<derivation_node>& candidates,
                                    const grammar& target_grammar) {
  filter_result out;
  for (const auto& c : candidates) {
    std::string why;
    if (auto t = try_compose(c, target_grammar, &why)) out.accepted.emplace_back(c, std::move(*t));
    else out.rejected.emplace_back(c, why);
  }
  return out;
}

}  // namespace stag
