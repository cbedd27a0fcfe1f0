#include <stag/cli.hpp>

#include <algorithm>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include <stag/compose.hpp>
#include <stag/discourse.hpp>
#include <stag/dot.hpp>
#include <stag/error.hpp>
#include <stag/pipeline.hpp>

namespace stag {

namespace {

struct common_args {
  std::string grammar_dir = default_grammar_dir().string();
  std::string format = "text";
  std::size_t limit = 64;
  bool all = false;
  bool deferred = false;
  std::vector<std::string> words;
};

void add_common(CLI::App* cmd, common_args& a) {
  cmd->add_option("--grammar", a.grammar_dir, "Grammar directory (ko.json, en.json, ko-en.json)");
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "dot", "json"}));
  cmd->add_option("--limit", a.limit, "Maximum number of derivations")->check(CLI::PositiveNumber);
  cmd->add_flag("--all", a.all, "Show every result, not just the top-ranked one");
  cmd->add_flag("--deferred", a.deferred, "Check features on complete derivations only");
  cmd->add_option("sentence", a.words, "Whitespace-separated tokens")->required();
}

std::vector<std::string> tokens_of(const common_args& a) { return tokenize(join(a.words)); }

parse_options parse_opts(const common_args& a) {
  parse_options o;
  o.eager = !a.deferred;
  o.limit = a.limit;
  return o;
}

int do_parse(const common_args& a, const std::string& lang, std::ostream& out) {
  grammar_bundle b = load_bundle(a.grammar_dir);
  const grammar& g = b.of(language_from_string(lang));
  parse_result r = parse(tokens_of(a), g, parse_opts(a));
  std::size_t shown = a.all ? r.derivations.size() : std::min<std::size_t>(1, r.derivations.size());
  if (a.format == "json") {
    nlohmann::json j;
    j["derivations"] = nlohmann::json::array();
    for (std::size_t i = 0; i < shown; ++i) j["derivations"].push_back(to_json(r.derivations[i]));
    j["total"] = r.derivations.size();
    j["truncated"] = r.truncated;
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < shown; ++i) {
      const derived_tree t = compose(r.derivations[i], g);
      if (a.format == "dot") {
        out << derivation_to_dot(t.source_derivation, "derivation_" + std::to_string(i));
        out << derived_to_dot(t.root, "derived_" + std::to_string(i));
      } else {
        out << to_pretty(t.source_derivation);
        out << "yield: " << join(yield_of(t)) << "\n";
      }
    }
  }
  return r.derivations.empty() ? 1 : 0;
}

int do_translate(const common_args& a, const std::string& dir, bool trace, const std::string& session_file,
                 bool pron, bool placeholder, std::ostream& out, std::ostream& err) {
  grammar_bundle b = load_bundle(a.grammar_dir);
  discourse_session session = session_file.empty() ? discourse_session{} : discourse_session::load(session_file);
  translate_options o;
  o.parse = parse_opts(a);
  o.pronominalize_subjects = pron;
  o.placeholder = placeholder;
  translation_result r = translate(tokens_of(a), direction_from_string(dir), b, session, o);
  if (!session_file.empty()) session.save(session_file);

  std::size_t shown = a.all ? r.translations.size() : std::min<std::size_t>(1, r.translations.size());
  if (a.format == "json") {
    nlohmann::json j = to_json(r);
    auto& list = j["translations"];
    if (!a.all && list.size() > 1) list.erase(list.begin() + 1, list.end());
    if (trace) j["trace"] = r.trace;
    out << j.dump(2) << "\n";
  } else {
    if (trace)
      for (const auto& l : r.trace) out << l << "\n";
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& t = r.translations[i];
      if (a.format == "dot") {
        const grammar& tg = b.of(target_language(r.dir));
        out << derivation_to_dot(t.source_derivation, "source_" + std::to_string(i));
        out << derivation_to_dot(t.target_derivation, "target_" + std::to_string(i));
        out << derived_to_dot(compose(t.target_derivation, tg).root, "target_derived_" + std::to_string(i));
      } else {
        out << join(t.target) << "\n";
      }
    }
    for (const auto& d : r.diagnostics) err << "note: " << d << "\n";
  }
  return r.translations.empty() ? 1 : 0;
}

int do_recover(const common_args& a, const std::string& session_file, bool placeholder, std::ostream& out) {
  grammar_bundle b = load_bundle(a.grammar_dir);
  discourse_session session = session_file.empty() ? discourse_session{} : discourse_session::load(session_file);
  parse_result r = parse(tokens_of(a), b.ko, parse_opts(a));
  if (r.derivations.empty()) {
    out << "no parse\n";
    return 1;
  }
  topic_list local = register_topics(r.derivations.front(), session, b.ko);
  recovery_result rr = recover(r.derivations.front(), local, session, b.ko, {placeholder});
  if (!session_file.empty()) session.save(session_file);
  if (a.format == "json") {
    out << nlohmann::json{{"report", to_json(rr.report)}, {"derivation", to_json(rr.derivation)}}.dump(2) << "\n";
  } else if (a.format == "dot") {
    out << derivation_to_dot(rr.derivation, "recovered");
  } else {
    out << to_text(rr.report);
    out << "augmented: " << to_text(rr.derivation) << "\n";
    if (auto t = try_compose(rr.derivation, b.ko)) out << "yield: " << join(yield_of(*t)) << "\n";
  }
  return rr.report.complete() ? 0 : 1;
}

int do_validate(const std::string& dir, std::ostream& out) {
  auto problems = validate_bundle_dir(dir);
  for (const auto& p : problems) out << p << "\n";
  if (problems.empty()) out << "ok: " << dir << "\n";
  return problems.empty() ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Korean/English synchronous TAG translator", "stagmt"};
  app.require_subcommand(1);

  common_args tr_args;
  std::string dir = "ko-en", session_file;
  bool trace = false, pron = false, placeholder = false;
  auto* tr = app.add_subcommand("translate", "Translate a sentence");
  add_common(tr, tr_args);
  tr->add_option("--dir", dir, "Direction")->check(CLI::IsMember({"ko-en", "en-ko"}));
  tr->add_flag("--trace", trace, "Dump every pipeline stage");
  tr->add_option("--session", session_file, "Topic list file kept across runs");
  tr->add_flag("--pronominalize-subjects", pron, "Render repeated or controlled recovered subjects as pronouns");
  tr->add_flag("--placeholder", placeholder, "Fill unrecoverable dropped arguments with a placeholder");

  common_args pa_args;
  std::string lang = "ko";
  auto* pa = app.add_subcommand("parse", "Parse a sentence");
  add_common(pa, pa_args);
  pa->add_option("--lang", lang, "Language")->check(CLI::IsMember({"ko", "en"}));

  common_args re_args;
  std::string re_session;
  bool re_placeholder = false;
  auto* re = app.add_subcommand("recover", "Recover dropped Korean arguments");
  add_common(re, re_args);
  re->add_option("--session", re_session, "Topic list file kept across runs");
  re->add_flag("--placeholder", re_placeholder, "Fill unrecoverable dropped arguments with a placeholder");

  std::string va_dir = default_grammar_dir().string();
  auto* va = app.add_subcommand("validate", "Check a grammar directory");
  va->add_option("--grammar", va_dir, "Grammar directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*tr) return do_translate(tr_args, dir, trace, session_file, pron, placeholder, out, err);
    if (*pa) return do_parse(pa_args, lang, out);
    if (*re) return do_recover(re_args, re_session, re_placeholder, out);
    if (*va) return do_validate(va_dir, out);
  } catch (const unknown_token_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const format_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const composition_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace stag
