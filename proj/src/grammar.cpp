#include <stag/grammar.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <stag/error.hpp>

namespace stag {

std::string to_string(language l) { return l == language::ko ? "ko" : "en"; }

language language_from_string(const std::string& s) {
  if (s == "ko") return language::ko;
  if (s == "en") return language::en;
  throw format_error("unknown language '" + s + "'");
}

const surface_form* lex_entry::find_form(const std::string& surface) const {
  for (const auto& f : surface_forms)
    if (f.form == surface) return &f;
  return nullptr;
}

const elementary_tree* grammar::find_tree(const std::string& name) const {
  auto it = tree_index_.find(name);
  return it == tree_index_.end() ? nullptr : &trees[it->second];
}

const elementary_tree& grammar::tree(const std::string& name) const {
  const elementary_tree* t = find_tree(name);
  if (!t) throw precondition_error("no tree named '" + name + "'");
  return *t;
}

std::vector<const lex_entry*> grammar::lookup(const std::string& token) const {
  std::vector<std::size_t> idx;
  auto [lo, hi] = surface_index_.equal_range(token);
  for (auto it = lo; it != hi; ++it) idx.push_back(it->second);
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  std::vector<const lex_entry*> out;
  for (auto i : idx) out.push_back(&entries[i]);
  return out;
}

const lex_entry* grammar::find_entry(const std::string& lemma,
                                     const std::string& tree_name) const {
  for (const auto& e : entries)
    if (e.lemma == lemma &&
        std::find(e.tree_names.begin(), e.tree_names.end(), tree_name) != e.tree_names.end())
      return &e;
  return nullptr;
}

void grammar::reindex() {
  tree_index_.clear();
  surface_index_.clear();
  for (std::size_t i = 0; i < trees.size(); ++i) {
    index_tree(trees[i]);
    tree_index_.emplace(trees[i].name, i);
  }
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (const auto& f : entries[i].surface_forms) surface_index_.emplace(f.form, i);
}

std::vector<std::string> validate_grammar(const grammar& g) {
  std::vector<std::string> out;
  std::set<std::string> names;
  for (const auto& t : g.trees) {
    if (!names.insert(t.name).second) out.push_back("duplicate tree name " + t.name);
    for (const auto& v : validate_tree(t))
      out.push_back("tree " + t.name + " at " + v.address.display() + ": " + v.rule);
  }
  std::set<std::pair<std::string, std::string>> lemma_tree;
  for (const auto& e : g.entries) {
    std::string who = "lexeme " + e.lemma;
    if (e.lang != g.lang) out.push_back(who + ": language differs from grammar");
    if (e.surface_forms.empty()) out.push_back(who + ": no surface forms");
    if (e.tree_names.empty()) out.push_back(who + ": anchors no trees");
    for (const auto& tn : e.tree_names) {
      const elementary_tree* t = g.find_tree(tn);
      if (!t) {
        out.push_back(who + ": unknown tree " + tn);
        continue;
      }
      if (!lemma_tree.insert({e.lemma, tn}).second)
        out.push_back(who + ": anchors tree " + tn + " more than once");
      for (const auto& [slot, fs] : e.selectional_restrictions)
        if (!t->arg_slots.contains(slot))
          out.push_back(who + ": restriction on " + slot + " which tree " + tn + " lacks");
    }
  }
  if (g.start_symbol.empty()) out.push_back("grammar has no start symbol");
  return out;
}

namespace {

elementary_tree tree_from_json(const nlohmann::json& j) {
  elementary_tree t;
  t.name = j.at("name").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "initial") t.kind = tree_kind::initial;
  else if (kind == "auxiliary") t.kind = tree_kind::auxiliary;
  else throw format_error("tree " + t.name + ": unknown kind '" + kind + "'");
  t.root = tree_node_from_json(j.at("root"));
  t.semantic_node = node_address::parse(j.value("semantic_node", std::string{}));
  return t;
}

lex_entry entry_from_json(const nlohmann::json& j, language lang) {
  lex_entry e;
  e.lemma = j.at("lemma").get<std::string>();
  e.lang = j.contains("language") ? language_from_string(j.at("language").get<std::string>()) : lang;
  if (j.contains("surface_forms")) {
    for (const auto& f : j.at("surface_forms")) {
      if (f.is_string()) {
        e.surface_forms.push_back({f.get<std::string>(), {}});
      } else {
        e.surface_forms.push_back({f.at("form").get<std::string>(),
                                   feature_structure_from_json(f.value("features", nlohmann::json::object()))});
      }
    }
  } else {
    e.surface_forms.push_back({e.lemma, {}});
  }
  e.tree_names = j.at("trees").get<std::vector<std::string>>();
  e.anchor_features = feature_structure_from_json(j.value("anchor_features", nlohmann::json::object()));
  e.semantic_features = feature_structure_from_json(j.value("semantic_features", nlohmann::json::object()));
  const nlohmann::json restrictions = j.value("selectional_restrictions", nlohmann::json::object());
  for (const auto& [slot, fs] : restrictions.items())
    e.selectional_restrictions.emplace(slot, feature_structure_from_json(fs));
  e.control_verb = j.value("control_verb", false);
  e.placeholder = j.value("placeholder", false);
  return e;
}

/// Maps a JSON parser byte offset to "line L, column C".
std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

grammar parse_grammar(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw format_error("grammar parse error at " + locate(text, e.byte) + ": " + e.what());
  }
  grammar g;
  try {
    if (!doc.is_object()) throw format_error("grammar document must be a JSON object");
    g.lang = language_from_string(doc.at("language").get<std::string>());
    g.start_symbol = doc.at("start_symbol").get<std::string>();
    for (const auto& t : doc.at("trees")) g.trees.push_back(tree_from_json(t));
    for (const auto& e : doc.at("lexicon")) g.entries.push_back(entry_from_json(e, g.lang));
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("grammar schema error: ") + e.what());
  }
  g.reindex();
  auto problems = validate_grammar(g);
  if (!problems.empty()) {
    std::string msg = "grammar validation failed:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw validation_error(msg);
  }
  return g;
}

grammar load_grammar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot read grammar file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_grammar(ss.str());
  } catch (const format_error& e) {
    throw format_error(path.string() + ": " + e.what());
  } catch (const validation_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
}

nlohmann::json to_json(const grammar& g) {
  nlohmann::json j;
  j["language"] = to_string(g.lang);
  j["start_symbol"] = g.start_symbol;
  j["trees"] = nlohmann::json::array();
  for (const auto& t : g.trees) {
    nlohmann::json tj;
    tj["name"] = t.name;
    tj["kind"] = t.kind == tree_kind::initial ? "initial" : "auxiliary";
    if (!t.semantic_node.is_root()) tj["semantic_node"] = t.semantic_node.str();
    tj["root"] = to_json(t.root);
    j["trees"].push_back(tj);
  }
  j["lexicon"] = nlohmann::json::array();
  for (const auto& e : g.entries) {
    nlohmann::json ej;
    ej["lemma"] = e.lemma;
    ej["surface_forms"] = nlohmann::json::array();
    for (const auto& f : e.surface_forms)
      ej["surface_forms"].push_back({{"form", f.form}, {"features", to_json(f.features)}});
    ej["trees"] = e.tree_names;
    if (!e.anchor_features.empty()) ej["anchor_features"] = to_json(e.anchor_features);
    if (!e.semantic_features.empty()) ej["semantic_features"] = to_json(e.semantic_features);
    if (!e.selectional_restrictions.empty()) {
      for (const auto& [slot, fs] : e.selectional_restrictions)
        ej["selectional_restrictions"][slot] = to_json(fs);
    }
    if (e.control_verb) ej["control_verb"] = true;
    if (e.placeholder) ej["placeholder"] = true;
    j["lexicon"].push_back(ej);
  }
  return j;
}

anchored_tree anchor_tree(const elementary_tree& tmpl, const lex_entry& entry,
                          const std::string& surface) {
  if (std::find(entry.tree_names.begin(), entry.tree_names.end(), tmpl.name) == entry.tree_names.end())
    throw precondition_error("lexeme " + entry.lemma + " does not anchor tree " + tmpl.name);
  const surface_form* form = nullptr;
  if (!surface.empty()) {
    form = entry.find_form(surface);
    if (!form) throw precondition_error("'" + surface + "' is not a surface form of " + entry.lemma);
  }
  if (tmpl.anchor_addresses.size() != 1)
    throw precondition_error("tree " + tmpl.name + " must have exactly one anchor");

  anchored_tree out{tmpl, &entry, surface};
  bindings env;
  auto merge_into = [&](feature_structure& target, const feature_structure& extra,
                        const std::string& where) {
    auto r = unify(target, extra, env);
    if (!r)
      throw composition_error("lexeme " + entry.lemma + " clashes with tree " + tmpl.name + " at " + where);
    target = std::move(r->fs);
    env = std::move(r->env);
  };

  tree_node& anchor = node_at(out.tree.root, tmpl.anchor_addresses.front());
  anchor.word = surface;
  if (!anchor.bottom) anchor.bottom = feature_structure{};
  merge_into(*anchor.bottom, entry.anchor_features, "anchor");
  if (form) merge_into(*anchor.bottom, form->features, "anchor");

  tree_node& sem = node_at(out.tree.root, tmpl.semantic_node);
  if (!entry.semantic_features.empty()) {
    if (sem.bottom) merge_into(*sem.bottom, entry.semantic_features, tmpl.semantic_node.display());
    else merge_into(sem.top, entry.semantic_features, tmpl.semantic_node.display());
  }

  for (const auto& [slot, fs] : entry.selectional_restrictions) {
    auto it = tmpl.arg_slots.find(slot);
    if (it == tmpl.arg_slots.end())
      throw precondition_error("tree " + tmpl.name + " has no slot " + slot);
    merge_into(node_at(out.tree.root, it->second).top, fs, slot);
  }

  // Variables shared between nodes pick up bindings made at any one of them.
  for (const auto& a : preorder_addresses(out.tree.root)) {
    tree_node& n = node_at(out.tree.root, a);
    n.top = resolve(n.top, env);
    if (n.bottom) n.bottom = resolve(*n.bottom, env);
  }
  return out;
}

}  // namespace stag
