#include <stag/discourse.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <stag/error.hpp>

namespace stag {

void topic_list::mention(topic_entry e) {
  std::erase_if(entries_, [&](const topic_entry& t) { return t.lemma == e.lemma; });
  entries_.insert(entries_.begin(), std::move(e));
}

void discourse_session::reset() {
  global.clear();
  counter = 0;
}

nlohmann::json discourse_session::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : global.entries())
    out.push_back({{"lemma", t.lemma},
                   {"semantic_features", stag::to_json(t.semantic_features)},
                   {"mention_index", t.mention_index}});
  return out;
}

discourse_session discourse_session::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw format_error("session file must hold a JSON array of topics");
  discourse_session s;
  try {
    // Stored most recent first; replay oldest first.
    for (auto it = j.rbegin(); it != j.rend(); ++it) {
      topic_entry t{it->at("lemma").get<std::string>(),
                    feature_structure_from_json(it->value("semantic_features", nlohmann::json::object())),
                    it->value("mention_index", 0L)};
      s.counter = std::max(s.counter, t.mention_index);
      s.global.mention(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("session schema error: ") + e.what());
  }
  return s;
}

void discourse_session::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw format_error("cannot write session file " + path.string());
  out << to_json().dump(2) << "\n";
}

discourse_session discourse_session::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (ss.str().find_first_not_of(" \t\r\n") == std::string::npos) return {};
  try {
    return from_json(nlohmann::json::parse(ss.str()));
  } catch (const nlohmann::json::parse_error& e) {
    throw format_error(path.string() + ": " + e.what());
  }
}

namespace {

bool is_topic_marker(const derivation_node& n, const grammar& g) {
  if (n.op != attach_op::adjunction) return false;
  const elementary_tree* t = g.find_tree(n.tree);
  if (!t || t->kind != tree_kind::auxiliary) return false;
  auto it = t->root.top.find("topic");
  return it != t->root.top.end() && it->second.text == "+";
}

void find_topics(const derivation_node& n, const grammar& g, std::vector<const derivation_node*>& out) {
  for (const auto& c : n.children)
    if (is_topic_marker(c, g)) {
      out.push_back(&n);
      break;
    }
  for (const auto& c : n.children) find_topics(c, g, out);
}

}  // namespace

topic_list register_topics(const derivation_node& d, discourse_session& session, const grammar& g) {
  std::vector<const derivation_node*> hosts;
  find_topics(d, g, hosts);
  std::stable_sort(hosts.begin(), hosts.end(),
                   [](const derivation_node* a, const derivation_node* b) { return a->anchor_pos < b->anchor_pos; });
  topic_list local;
  for (const derivation_node* h : hosts) {
    const lex_entry* e = g.find_entry(h->lemma, h->tree);
    if (!e) continue;
    auto wh = e->semantic_features.find("wh");
    if (wh != e->semantic_features.end() && wh->second.text == "+") continue;
    topic_entry t{h->lemma, e->semantic_features, ++session.counter};
    local.mention(t);
    session.global.mention(std::move(t));
  }
  return local;
}

std::string to_string(slot_outcome o) {
  switch (o) {
    case slot_outcome::filled: return "filled";
    case slot_outcome::controlled: return "controlled";
    case slot_outcome::placeholder: return "placeholder";
    case slot_outcome::unresolved: return "unresolved";
  }
  return "unresolved";
}

bool recovery_report::complete() const {
  return std::none_of(slots.begin(), slots.end(),
                      [](const slot_resolution& s) { return s.outcome == slot_outcome::unresolved; });
}

namespace {

void mark_recovered(derivation_node& n) {
  n.recovered = true;
  n.anchor_pos = -1;
  for (auto& c : n.children) mark_recovered(c);
}

/// An NP for `lemma` fitting the slot, with the case particle the slot asks for.
std::optional<derivation_node> make_filler(const std::string& lemma, const empty_slot& slot, const grammar& g) {
  const std::string& label = node_at(g.tree(slot.tree), slot.address).label;
  derivation_node np;
  for (const auto& e : g.entries) {
    if (e.lemma != lemma) continue;
    for (const auto& tn : e.tree_names) {
      const elementary_tree& t = g.tree(tn);
      if (t.kind == tree_kind::initial && t.root.label == label) {
        np.tree = tn;
        break;
      }
    }
    if (!np.tree.empty()) break;
  }
  if (np.tree.empty()) return std::nullopt;
  np.lemma = lemma;
  np.site = slot.address;

  auto c = slot.slot_features.find("case");
  if (c != slot.slot_features.end() && c->second.is_atom()) {
    for (const auto& e : g.entries) {
      auto ec = e.anchor_features.find("case");
      if (ec == e.anchor_features.end() || ec->second.text != c->second.text) continue;
      for (const auto& tn : e.tree_names) {
        const elementary_tree& t = g.tree(tn);
        if (t.kind == tree_kind::auxiliary && t.root.label == label) {
          derivation_node p;
          p.tree = tn;
          p.lemma = e.lemma;
          p.op = attach_op::adjunction;
          np.children.push_back(std::move(p));
          break;
        }
      }
      if (!np.children.empty()) break;
    }
  }
  mark_recovered(np);
  return np;
}

std::string describe(const empty_slot& s) { return s.tree + "[" + s.lemma + "]"; }

}  // namespace

recovery_result recover(const derivation_node& d, const topic_list& local, const discourse_session& session,
                        const grammar& g, const recovery_options& opts) {
  recovery_result out{d, {}};
  // Children are only appended below, so paths into `d` stay valid.
  for (const empty_slot& slot : empty_slots(d, g)) {
    slot_resolution r;
    r.verb = describe(slot);
    r.slot = slot.slot;
    r.restriction = slot.restriction;
    derivation_node& verb = node_at(out.derivation, slot.path);

    std::optional<derivation_node> filler;
    bool pro = false;
    if (!slot.path.empty() && slot.slot == "NP0" && verb.op == attach_op::substitution) {
      derivation_path pp(slot.path.begin(), slot.path.end() - 1);
      const derivation_node& matrix = node_at(out.derivation, pp);
      const lex_entry* me = g.find_entry(matrix.lemma, matrix.tree);
      if (me && me->control_verb) {
        pro = true;
        auto subj = g.tree(matrix.tree).arg_slots.find("NP0");
        const derivation_node* ms =
            subj == g.tree(matrix.tree).arg_slots.end() ? nullptr
                                                        : matrix.child_at(attach_op::substitution, subj->second);
        if (ms) {
          derivation_node copy = *ms;
          mark_recovered(copy);
          copy.controlled = true;
          copy.site = slot.address;
          r.filler = copy.lemma;
          r.outcome = slot_outcome::controlled;
          filler = std::move(copy);
        }
      }
    }

    if (!pro) {
      std::set<std::string> seen;
      auto scan = [&](const topic_list& list, const char* name) {
        for (const auto& t : list.entries()) {
          if (filler || !seen.insert(t.lemma).second) continue;
          bool ok = unify(slot.restriction, t.semantic_features).has_value();
          r.checks.push_back({t.lemma, name, t.semantic_features, ok});
          if (!ok) continue;
          if (auto f = make_filler(t.lemma, slot, g)) {
            filler = std::move(f);
            r.filler = t.lemma;
            r.outcome = slot_outcome::filled;
          }
        }
      };
      scan(local, "local");
      scan(session.global, "global");
      if (!filler && opts.placeholder) {
        for (const auto& e : g.entries) {
          if (!e.placeholder || !unify(slot.restriction, e.semantic_features)) continue;
          if (auto f = make_filler(e.lemma, slot, g)) {
            filler = std::move(f);
            r.filler = e.lemma;
            r.outcome = slot_outcome::placeholder;
            break;
          }
        }
      }
    }

    if (filler) verb.children.push_back(std::move(*filler));
    out.report.slots.push_back(std::move(r));
  }
  canonicalize(out.derivation);
  return out;
}

nlohmann::json to_json(const recovery_report& r) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : r.slots) {
    nlohmann::json j{{"verb", s.verb},
                     {"slot", s.slot},
                     {"restriction", to_json(s.restriction)},
                     {"outcome", to_string(s.outcome)}};
    if (!s.filler.empty()) j["filler"] = s.filler;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : s.checks)
      j["checks"].push_back({{"lemma", c.lemma},
                             {"list", c.list},
                             {"semantic_features", to_json(c.semantic_features)},
                             {"accepted", c.accepted}});
    out.push_back(j);
  }
  return out;
}

std::string to_text(const recovery_report& r) {
  std::string out;
  for (const auto& s : r.slots) {
    out += s.slot + " of " + s.verb + " needs " + to_string(s.restriction) + "\n";
    for (const auto& c : s.checks) {
      out += "  " + c.list + " " + c.lemma + " " + to_string(c.semantic_features);
      out += c.accepted ? " accepted\n" : " rejected: clash with " + to_string(s.restriction) + "\n";
    }
    switch (s.outcome) {
      case slot_outcome::filled: out += "  -> filled by " + s.filler + "\n"; break;
      case slot_outcome::controlled: out += "  -> PRO, controlled by matrix subject " + s.filler + "\n"; break;
      case slot_outcome::placeholder: out += "  -> placeholder " + s.filler + "\n"; break;
      case slot_outcome::unresolved: out += "  -> unresolved\n"; break;
    }
  }
  return out;
}

}  // namespace stag
