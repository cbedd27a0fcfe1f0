#include <stag/combine.hpp>

#include <stag/error.hpp>

namespace stag {

std::optional<substitution_result> substitute_features(const tree_node& site,
                                                       const tree_node& sub_root,
                                                       const bindings& env) {
  if (site.mark != node_mark::substitution)
    throw precondition_error("substitution site at '" + site.label + "' is not a substitution node");
  if (site.label != sub_root.label)
    throw precondition_error("cannot substitute " + sub_root.label + " at " + site.label);
  auto top = unify(site.top, sub_root.top, env);
  if (!top) return std::nullopt;
  substitution_result r{sub_root, std::move(top->env)};
  r.node.top = std::move(top->fs);
  r.node.slot = site.slot;
  r.node.droppable = false;
  r.node.origins = site.origins;
  r.node.origins.insert(r.node.origins.end(), sub_root.origins.begin(), sub_root.origins.end());
  return r;
}

std::optional<adjunction_result> adjoin_features(const tree_node& site,
                                                 const tree_node& aux_root,
                                                 const tree_node& aux_foot,
                                                 const bindings& env) {
  if (site.adjoin == adjoin_constraint::forbid)
    throw precondition_error("adjunction is forbidden at node " + site.label);
  if (site.mark != node_mark::internal)
    throw precondition_error("adjunction site " + site.label + " is not an internal node");
  if (site.label != aux_root.label || aux_foot.label != aux_root.label)
    throw precondition_error("cannot adjoin " + aux_root.label + " tree at " + site.label);

  auto upper_top = unify(site.top, aux_root.top, env);
  if (!upper_top) return std::nullopt;
  auto lower_bottom = unify(site.bottom.value_or(feature_structure{}),
                            aux_foot.bottom.value_or(feature_structure{}), upper_top->env);
  if (!lower_bottom) return std::nullopt;

  adjunction_result r{aux_root, site, std::move(lower_bottom->env)};
  r.upper.top = std::move(upper_top->fs);
  r.lower.top = aux_foot.top;
  r.lower.bottom = std::move(lower_bottom->fs);
  r.lower.adjoin = adjoin_constraint::forbid;
  r.lower.origins.insert(r.lower.origins.end(), aux_foot.origins.begin(), aux_foot.origins.end());
  return r;
}

std::optional<unify_result> finalize_node(const tree_node& n, const bindings& env) {
  if (!n.bottom) return unify_result{resolve(n.top, env), env};
  return unify(n.top, *n.bottom, env);
}

}  // namespace stag
