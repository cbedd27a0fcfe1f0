#ifndef STAG_TRANSFER_HPP
#define STAG_TRANSFER_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <stag/compose.hpp>
#include <stag/derivation.hpp>
#include <stag/feature.hpp>
#include <stag/grammar.hpp>

namespace stag {

enum class direction { ko_en, en_ko };

std::string to_string(direction d);
direction direction_from_string(const std::string& s);
language source_language(direction d);
language target_language(direction d);

/// One side of a transfer entry. A lemma of "*" matches every lemma.
struct tree_ref {
  language lang = language::ko;
  std::string tree;
  std::string lemma;

  bool matches(language l, const std::string& t, const std::string& lm) const;
};

/// A tree inserted by adjunction on the side that lacks it (case particles
/// and the like). Stacked at the top of the linked child's adjunction chain.
struct adjunct_ref {
  std::string tree;
  std::string lemma;
};

struct node_link {
  node_address source;
  node_address target;
  std::vector<adjunct_ref> source_adjuncts;
  std::vector<adjunct_ref> target_adjuncts;
};

struct feature_ref {
  node_address address;
  std::string feature;
};

struct feature_link {
  feature_ref source;
  feature_ref target;
};

struct transfer_entry {
  std::string name;
  tree_ref source;
  /// Empty when the source tree has no counterpart; its whole subtree is
  /// then dropped.
  std::optional<tree_ref> target;
  std::vector<node_link> node_links;
  std::vector<feature_link> feature_links;
  /// Finalized source features that must unify, by source address. Only
  /// consulted when the entry's source side is being translated.
  std::map<node_address, feature_structure> precondition;
  bool bidirectional = false;
};

struct transfer_lexicon {
  std::vector<transfer_entry> entries;
};

/// An entry viewed in one translation direction.
struct oriented_entry {
  const transfer_entry* entry = nullptr;
  bool reversed = false;

  const tree_ref& from() const;
  std::optional<tree_ref> to() const;
  /// Target-side address linked to `from_address`, if any.
  std::optional<node_address> link_for(const node_address& from_address) const;
  /// Adjuncts to insert on the target side for the link at `to_address`.
  std::vector<adjunct_ref> adjuncts_at(const node_address& to_address) const;
  /// Feature links as (from, to) pairs.
  std::vector<std::pair<feature_ref, feature_ref>> features() const;
};

transfer_lexicon parse_transfer_lexicon(const std::string& text);
transfer_lexicon load_transfer_lexicon(const std::filesystem::path& path);
nlohmann::json to_json(const transfer_lexicon& lex);

/// Cross-checks a lexicon against both grammars.
std::vector<std::string> validate_transfer_lexicon(const transfer_lexicon& lex, const grammar& ko,
                                                   const grammar& en);

/// Entries usable for a source instance, in file order. `features` are the
/// instance's finalized node features, used for preconditions.
std::vector<oriented_entry> lookup(const transfer_lexicon& lex, direction dir,
                                   const std::string& tree, const std::string& lemma,
                                   const std::map<node_address, feature_structure>& features);

/// Copies linked feature values from the source instance onto `target` as
/// imposed features. Returns false when a value clashes with an atom the
/// target template already fixes, or with a value imposed earlier.
bool apply_feature_links(const oriented_entry& e,
                         const std::map<node_address, feature_structure>& source_features,
                         const grammar& target_grammar, derivation_node& target);

struct transfer_step {
  std::string source_node;  ///< tree[lemma] of the source instance
  std::vector<std::string> selected;
  std::vector<std::string> rejected;  ///< "entry: reason"
};

struct transfer_output {
  std::vector<derivation_node> candidates;
  /// Source instances with no usable entry.
  std::vector<std::string> gaps;
  std::vector<transfer_step> steps;
  bool truncated = false;
};

/// Maps a source derivation to candidate target derivations. `composed`
/// must be compose(source). At most `limit` candidates are produced.
transfer_output transfer(const derivation_node& source, const derived_tree& composed,
                         const transfer_lexicon& lex, const grammar& target_grammar,
                         direction dir, std::size_t limit = 256);

struct filter_result {
  std::vector<std::pair<derivation_node, derived_tree>> accepted;
  std::vector<std::pair<derivation_node, std::string>> rejected;
};

/// Keeps the candidates that compose in the target grammar.
filter_result filter_by_composition(const std::vector<derivation_node>& candidates,
                                    const grammar& target_grammar);

}  // namespace stag

#endif
