#ifndef STAG_PIPELINE_HPP
#define STAG_PIPELINE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <stag/discourse.hpp>
#include <stag/grammar.hpp>
#include <stag/parser.hpp>
#include <stag/transfer.hpp>

namespace stag {

struct grammar_bundle {
  grammar ko;
  grammar en;
  transfer_lexicon lexicon;

  const grammar& of(language l) const { return l == language::ko ? ko : en; }
};

/// The grammar directory compiled into the binary.
std::filesystem::path default_grammar_dir();

/// Loads `ko.json`, `en.json` and `ko-en.json` from `dir` and cross-checks
/// them. Throws format_error or validation_error.
grammar_bundle load_bundle(const std::filesystem::path& dir);

/// Every violation across the three files; empty for a sound bundle.
std::vector<std::string> validate_bundle_dir(const std::filesystem::path& dir);

struct translate_options {
  parse_options parse;
  bool pronominalize_subjects = false;
  bool placeholder = false;
  /// Candidate cap for transfer.
  std::size_t transfer_limit = 256;
};

struct translation {
  std::vector<std::string> target;
  /// After argument recovery.
  derivation_node source_derivation;
  derivation_node target_derivation;
  recovery_report recovery;
};

struct translation_result {
  std::vector<std::string> source;
  direction dir = direction::ko_en;
  /// Ranked, distinct target sequences.
  std::vector<translation> translations;
  std::vector<std::string> diagnostics;
  bool truncated = false;
  /// Per-stage dump, deterministic.
  std::vector<std::string> trace;
};

std::vector<std::string> tokenize(const std::string& text);
std::string join(const std::vector<std::string>& tokens);

/// Parses, recovers dropped arguments (ko-en only), transfers, filters by
/// composition in the target grammar and reads off the yields. Throws
/// unknown_token_error for tokens outside the source grammar.
translation_result translate(const std::vector<std::string>& tokens, direction dir, const grammar_bundle& bundle,
                             discourse_session& session, const translate_options& opts = {});

nlohmann::json to_json(const translation_result& r);

}  // namespace stag

#endif
