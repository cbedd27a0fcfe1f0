#ifndef STAG_FEATURE_HPP
#define STAG_FEATURE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace stag {

/// A feature value: either an atom ("+", "nom", "footwear") or a variable,
/// written with a leading '?'.
struct feature_value {
  std::string text;

  feature_value() = default;
  feature_value(std::string t) : text(std::move(t)) {}
  feature_value(const char* t) : text(t) {}

  bool is_variable() const { return !text.empty() && text.front() == '?'; }
  bool is_atom() const { return !is_variable(); }

  friend bool operator==(const feature_value&, const feature_value&) = default;
  friend auto operator<=>(const feature_value&, const feature_value&) = default;
};

/// Flat attribute-value map. Absence of a feature means unconstrained.
using feature_structure = std::map<std::string, feature_value>;

/// Variable bindings. Each variable maps to an atom or to another variable;
/// chains are acyclic.
using bindings = std::map<std::string, feature_value>;

/// Follows variable bindings until an atom or an unbound variable is reached.
feature_value resolve(const feature_value& v, const bindings& env);

/// Applies `resolve` to every value.
feature_structure resolve(const feature_structure& fs, const bindings& env);

struct unify_result {
  feature_structure fs;
  bindings env;
};

/// Unifies two feature structures under `env`. Neither input nor `env` is
/// modified; failure (two distinct atoms meeting) yields nullopt.
std::optional<unify_result> unify(const feature_structure& a,
                                  const feature_structure& b,
                                  const bindings& env = {});

/// Unifies two single values, extending `env` in place on success. On failure
/// `env` may be partially extended; callers work on a copy.
bool unify_values(const feature_value& a, const feature_value& b, bindings& env,
                  feature_value* out = nullptr);

/// Appends `suffix` to every variable name so that separate tree instances
/// never share variables by accident.
feature_structure rename_apart(const feature_structure& fs, std::string_view suffix);

/// Renders as `[a:b, c:?X]`.
std::string to_string(const feature_structure& fs);

nlohmann::json to_json(const feature_structure& fs);
feature_structure feature_structure_from_json(const nlohmann::json& j);

}  // namespace stag

#endif
