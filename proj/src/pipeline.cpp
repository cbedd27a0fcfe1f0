#include <stag/pipeline.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <stag/compose.hpp>
#include <stag/error.hpp>

#ifndef STAG_GRAMMAR_DIR
#define STAG_GRAMMAR_DIR "grammars"
#endif

namespace stag {

std::filesystem::path default_grammar_dir() { return STAG_GRAMMAR_DIR; }

grammar_bundle load_bundle(const std::filesystem::path& dir) {
  grammar_bundle b;
  b.ko = load_grammar(dir / "ko.json");
  b.en = load_grammar(dir / "en.json");
  if (b.ko.lang != language::ko) throw validation_error((dir / "ko.json").string() + ": not a Korean grammar");
  if (b.en.lang != language::en) throw validation_error((dir / "en.json").string() + ": not an English grammar");
  b.lexicon = load_transfer_lexicon(dir / "ko-en.json");
  auto problems = validate_transfer_lexicon(b.lexicon, b.ko, b.en);
  if (!problems.empty()) {
    std::string msg = (dir / "ko-en.json").string() + ": transfer lexicon validation failed:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw validation_error(msg);
  }
  return b;
}

std::vector<std::string> validate_bundle_dir(const std::filesystem::path& dir) {
  std::vector<std::string> out;
  std::optional<grammar> ko, en;
  auto load = [&](const char* file, std::optional<grammar>& g) {
    try {
      g = load_grammar(dir / file);
    } catch (const std::runtime_error& e) {
      out.push_back(e.what());
    }
  };
  load("ko.json", ko);
  load("en.json", en);
  try {
    transfer_lexicon lex = load_transfer_lexicon(dir / "ko-en.json");
    if (ko && en)
      for (auto& p : validate_transfer_lexicon(lex, *ko, *en)) out.push_back("ko-en.json: " + p);
  } catch (const std::runtime_error& e) {
    out.push_back(e.what());
  }
  return out;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

/// Replaces recovered subjects that are controlled or repeat an earlier
/// recovered subject by the lexeme's `pron` feature.
bool pronominalize(derivation_node& n, const grammar& g, std::set<std::string>& seen) {
  bool changed = false;
  const elementary_tree* t = g.find_tree(n.tree);
  for (auto& c : n.children) {
    if (t && c.op == attach_op::substitution && c.recovered && node_at(*t, c.site).slot == "NP0") {
      const bool repeat = seen.contains(c.lemma);
      seen.insert(c.lemma);
      const lex_entry* e = g.find_entry(c.lemma, c.tree);
      if (e && (c.controlled || repeat)) {
        auto p = e->semantic_features.find("pron");
        if (p != e->semantic_features.end() && p->second.is_atom() && g.find_entry(p->second.text, c.tree)) {
          c.lemma = p->second.text;
          c.surface.clear();
          changed = true;
        }
      }
    }
    changed |= pronominalize(c, g, seen);
  }
  return changed;
}

void indent_into(std::vector<std::string>& trace, const std::string& block, const std::string& pad) {
  std::istringstream in(block);
  std::string line;
  while (std::getline(in, line)) trace.push_back(pad + line);
}

}  // namespace

translation_result translate(const std::vector<std::string>& tokens, direction dir, const grammar_bundle& bundle,
                             discourse_session& session, const translate_options& opts) {
  translation_result res;
  res.source = tokens;
  res.dir = dir;
  const grammar& sg = bundle.of(source_language(dir));
  const grammar& tg = bundle.of(target_language(dir));
  auto& trace = res.trace;

  parse_result pr = parse(tokens, sg, opts.parse);
  trace.push_back("parse: " + std::to_string(pr.derivations.size()) + " derivation(s), " +
                  std::to_string(pr.chart_items) + " chart items");
  for (std::size_t i = 0; i < pr.derivations.size(); ++i)
    trace.push_back("  [" + std::to_string(i) + "] " + to_text(pr.derivations[i]));
  if (pr.truncated) {
    res.truncated = true;
    res.diagnostics.push_back("parse: derivation list truncated at " + std::to_string(opts.parse.limit));
  }
  if (pr.derivations.empty()) {
    res.diagnostics.push_back("no parse for '" + join(tokens) + "'");
    return res;
  }

  topic_list local;
  if (dir == direction::ko_en) {
    local = register_topics(pr.derivations.front(), session, sg);
    std::string names;
    for (const auto& t : local.entries()) names += (names.empty() ? "" : ", ") + t.lemma + " " + to_string(t.semantic_features);
    trace.push_back("topics: {" + names + "}");
  }

  std::set<std::vector<std::string>> seen_targets;
  for (std::size_t i = 0; i < pr.derivations.size(); ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    derivation_node src = pr.derivations[i];
    recovery_report report;
    if (dir == direction::ko_en) {
      recovery_result rr = recover(src, local, session, sg, {opts.placeholder});
      report = rr.report;
      if (!report.slots.empty()) {
        trace.push_back("recover " + tag + ":");
        indent_into(trace, to_text(report), "  ");
      }
      if (!report.complete()) {
        for (const auto& s : report.slots)
          if (s.outcome == slot_outcome::unresolved)
            res.diagnostics.push_back(tag + " unresolved argument " + s.slot + " of " + s.verb);
        continue;
      }
      src = std::move(rr.derivation);
      if (!report.slots.empty()) trace.push_back("  augmented: " + to_text(src));
    }

    std::string why;
    auto composed = try_compose(src, sg, &why);
    if (!composed) {
      res.diagnostics.push_back(tag + " source does not compose: " + why);
      continue;
    }

    transfer_output to = transfer(src, *composed, bundle.lexicon, tg, dir, opts.transfer_limit);
    trace.push_back("transfer " + tag + ":");
    for (const auto& s : to.steps) {
      std::string line = "  " + s.source_node + " ->";
      if (s.selected.empty()) line += " (none)";
      for (const auto& n : s.selected) line += " " + n;
      trace.push_back(line);
      for (const auto& r : s.rejected) trace.push_back("    rejected " + r);
    }
    for (const auto& g : to.gaps) res.diagnostics.push_back(tag + " no transfer entry for " + g);
    if (to.truncated) {
      res.truncated = true;
      res.diagnostics.push_back(tag + " transfer candidates truncated at " + std::to_string(opts.transfer_limit));
    }

    filter_result fr = filter_by_composition(to.candidates, tg);
    trace.push_back("candidates " + tag + ": " + std::to_string(to.candidates.size()) + " generated, " +
                    std::to_string(fr.rejected.size()) + " rejected");
    for (const auto& [c, reason] : fr.rejected) trace.push_back("  reject " + to_text(c) + ": " + reason);
    for (auto& [c, derived] : fr.accepted) {
      derivation_node target = derived.source_derivation;
      derived_tree final_tree = derived;
      if (opts.pronominalize_subjects && dir == direction::ko_en) {
        std::set<std::string> seen;
        derivation_node p = target;
        if (pronominalize(p, tg, seen)) {
          if (auto t = try_compose(p, tg)) {
            final_tree = std::move(*t);
            target = final_tree.source_derivation;
          }
        }
      }
      std::vector<std::string> words = yield_of(final_tree);
      if (target_language(dir) == language::en)
        for (auto& w : words) w = lower(w);
      trace.push_back("  accept " + to_text(target) + " => " + join(words));
      if (!seen_targets.insert(words).second) continue;
      res.translations.push_back({std::move(words), src, std::move(target), report});
    }
  }
  if (res.translations.empty()) res.diagnostics.push_back("no translation");
  return res;
}

nlohmann::json to_json(const translation_result& r) {
  nlohmann::json j;
  j["source"] = r.source;
  j["direction"] = to_string(r.dir);
  j["translations"] = nlohmann::json::array();
  for (const auto& t : r.translations) {
    j["translations"].push_back({{"target", t.target},
                                 {"text", join(t.target)},
                                 {"source_derivation", to_json(t.source_derivation)},
                                 {"target_derivation", to_json(t.target_derivation)},
                                 {"recovery", to_json(t.recovery)}});
  }
  j["diagnostics"] = r.diagnostics;
  j["truncated"] = r.truncated;
  return j;
}

}  // namespace stag
