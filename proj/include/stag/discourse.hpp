#ifndef STAG_DISCOURSE_HPP
#define STAG_DISCOURSE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <stag/compose.hpp>
#include <stag/derivation.hpp>
#include <stag/feature.hpp>
#include <stag/grammar.hpp>

namespace stag {

struct topic_entry {
  std::string lemma;
  feature_structure semantic_features;
  /// Increases with every mention across the session.
  long mention_index = 0;
};

/// Most recent first. Mentioning a lemma again moves it to the front.
class topic_list {
 public:
  void mention(topic_entry e);
  const std::vector<topic_entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  void clear() { entries_.clear(); }

 private:
  std::vector<topic_entry> entries_;
};

/// Topics that persist across sentences.
struct discourse_session {
  topic_list global;
  long counter = 0;

  void reset();
  void save(const std::filesystem::path& path) const;
  /// A missing file yields an empty session.
  static discourse_session load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
  static discourse_session from_json(const nlohmann::json& j);
};

/// Topic-marked NPs of `d` in surface order, pushed onto a fresh local list
/// and onto the session's global list. [wh+] nouns are never topics.
topic_list register_topics(const derivation_node& d, discourse_session& session, const grammar& g);

enum class slot_outcome { filled, controlled, placeholder, unresolved };

std::string to_string(slot_outcome o);

struct candidate_check {
  std::string lemma;
  std::string list;  ///< "local" or "global"
  feature_structure semantic_features;
  bool accepted = false;
};

struct slot_resolution {
  std::string verb;  ///< tree[lemma] of the verb instance
  std::string slot;
  feature_structure restriction;
  slot_outcome outcome = slot_outcome::unresolved;
  std::string filler;
  std::vector<candidate_check> checks;
};

struct recovery_report {
  std::vector<slot_resolution> slots;
  bool complete() const;
};

struct recovery_options {
  /// Fill otherwise unresolvable slots with a placeholder lexeme.
  bool placeholder = false;
};

struct recovery_result {
  derivation_node derivation;
  recovery_report report;
};

/// Fills the empty argument slots of `d` from the local topic list, then the
/// session's global list. The empty subject of a clause substituted under a
/// control verb copies the matrix subject instead.
recovery_result recover(const derivation_node& d, const topic_list& local, const discourse_session& session,
                        const grammar& g, const recovery_options& opts = {});

nlohmann::json to_json(const recovery_report& r);
std::string to_text(const recovery_report& r);

}  // namespace stag

#endif
