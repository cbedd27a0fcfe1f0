#include <stag/feature.hpp>

#include <stag/error.hpp>

namespace stag {

unknown_token_error::unknown_token_error(std::vector<std::string> toks)
    : std::runtime_error([&] {
        std::string msg = "unknown token(s):";
        for (const auto& t : toks) msg += " " + t;
        return msg;
      }()),
      tokens(std::move(toks)) {}

feature_value resolve(const feature_value& v, const bindings& env) {
  feature_value cur = v;
  while (cur.is_variable()) {
    auto it = env.find(cur.text);
    if (it == env.end()) break;
    cur = it->second;
  }
  return cur;
}

feature_structure resolve(const feature_structure& fs, const bindings& env) {
  feature_structure out;
  for (const auto& [name, value] : fs) out.emplace(name, resolve(value, env));
  return out;
}

bool unify_values(const feature_value& a, const feature_value& b, bindings& env,
                  feature_value* out) {
  feature_value ra = resolve(a, env);
  feature_value rb = resolve(b, env);
  if (ra == rb) {
    if (out) *out = ra;
    return true;
  }
  if (ra.is_variable()) {
    env[ra.text] = rb;
    if (out) *out = rb;
    return true;
  }
  if (rb.is_variable()) {
    env[rb.text] = ra;
    if (out) *out = ra;
    return true;
  }
  return false;
}

std::optional<unify_result> unify(const feature_structure& a,
                                  const feature_structure& b,
                                  const bindings& env) {
  unify_result r{{}, env};
  for (const auto& [name, va] : a) {
    auto it = b.find(name);
    if (it == b.end()) continue;
    if (!unify_values(va, it->second, r.env)) return std::nullopt;
  }
  // Resolve after all bindings are in place so that features linked through
  // a shared variable report the same value.
  for (const auto& [name, va] : a) r.fs.emplace(name, resolve(va, r.env));
  for (const auto& [name, vb] : b)
    if (!r.fs.contains(name)) r.fs.emplace(name, resolve(vb, r.env));
  return r;
}

feature_structure rename_apart(const feature_structure& fs, std::string_view suffix) {
  feature_structure out;
  for (const auto& [name, value] : fs) {
    if (value.is_variable())
      out.emplace(name, feature_value(value.text + std::string(suffix)));
    else
      out.emplace(name, value);
  }
  return out;
}

std::string to_string(const feature_structure& fs) {
  std::string s = "[";
  bool first = true;
  for (const auto& [name, value] : fs) {
    if (!first) s += ", ";
    first = false;
    s += name + ":" + value.text;
  }
  return s + "]";
}

nlohmann::json to_json(const feature_structure& fs) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : fs) j[name] = value.text;
  return j;
}

feature_structure feature_structure_from_json(const nlohmann::json& j) {
  if (j.is_null()) return {};
  if (!j.is_object()) throw format_error("feature structure must be a JSON object");
  feature_structure fs;
  for (const auto& [name, value] : j.items()) {
    if (!value.is_string())
      throw format_error("feature '" + name + "' must have a string value");
    std::string text = value.get<std::string>();
    if (text.empty() || text == "?")
      throw format_error("feature '" + name + "' has an empty value");
    fs.emplace(name, feature_value(std::move(text)));
  }
  return fs;
}

}  // namespace stag
