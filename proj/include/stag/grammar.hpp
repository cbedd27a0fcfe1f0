#ifndef STAG_GRAMMAR_HPP
#define STAG_GRAMMAR_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <stag/feature.hpp>
#include <stag/tree.hpp>

namespace stag {

enum class language { ko, en };

std::string to_string(language l);
language language_from_string(const std::string& s);

struct surface_form {
  std::string form;
  /// Constraints unified into the anchor node when this form is chosen.
  feature_structure features;
};

struct lex_entry {
  std::string lemma;
  std::vector<surface_form> surface_forms;
  language lang = language::ko;
  std::vector<std::string> tree_names;
  /// Unified into the anchor node's bottom.
  feature_structure anchor_features;
  /// Slot label -> restriction unified into that slot's top.
  std::map<std::string, feature_structure> selectional_restrictions;
  /// Unified into the tree's semantic node (bottom).
  feature_structure semantic_features;
  bool control_verb = false;
  /// Lexeme usable as a stand-in for an unrecoverable dropped argument.
  bool placeholder = false;

  const surface_form* find_form(const std::string& surface) const;
};

/// A tree template with its anchor filled. Owns its nodes.
struct anchored_tree {
  elementary_tree tree;
  const lex_entry* entry = nullptr;
  std::string surface;
};

class grammar {
 public:
  language lang = language::ko;
  std::string start_symbol;
  /// Trees in file order.
  std::vector<elementary_tree> trees;
  /// Lexicon in file order.
  std::vector<lex_entry> entries;

  const elementary_tree* find_tree(const std::string& name) const;
  const elementary_tree& tree(const std::string& name) const;

  /// Entries whose surface forms include `token`, in file order.
  std::vector<const lex_entry*> lookup(const std::string& token) const;

  /// The entry with this lemma that anchors `tree_name`.
  const lex_entry* find_entry(const std::string& lemma, const std::string& tree_name) const;

  /// Rebuilds lookup indices; call after editing `trees` or `entries`.
  void reindex();

 private:
  std::map<std::string, std::size_t> tree_index_;
  std::multimap<std::string, std::size_t> surface_index_;
};

/// Cross-reference and tree-shape violations for a whole grammar.
std::vector<std::string> validate_grammar(const grammar& g);

/// Parses and validates a grammar document. Throws format_error for bad
/// JSON or schema and validation_error for well-formedness violations.
grammar parse_grammar(const std::string& text);
grammar load_grammar(const std::filesystem::path& path);

nlohmann::json to_json(const grammar& g);

/// Copies `tmpl` and fills its anchor with `surface`, unifying the entry's
/// anchor, semantic and selectional features into place. An empty `surface`
/// leaves the word open (used when generating; the form is picked after
/// composition). Throws precondition_error or composition_error.
anchored_tree anchor_tree(const elementary_tree& tmpl, const lex_entry& entry,
                          const std::string& surface);

}  // namespace stag

#endif
