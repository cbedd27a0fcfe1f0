#ifndef STAG_COMBINE_HPP
#define STAG_COMBINE_HPP

#include <optional>
#include <utility>

#include <stag/feature.hpp>
#include <stag/tree.hpp>

namespace stag {

// Feature equations of the two combination operations and of the final
// top/bottom collapse. None of these mutate their arguments; failure is an
// ordinary nullopt result.

struct substitution_result {
  tree_node node;
  bindings env;
};

/// Merges a substitution site with the root of the tree substituted there:
/// top = site.top U root.top, bottom = root.bottom, children from the root.
std::optional<substitution_result> substitute_features(const tree_node& site,
                                                       const tree_node& sub_root,
                                                       const bindings& env);

struct adjunction_result {
  tree_node upper;  ///< takes the auxiliary root's place
  tree_node lower;  ///< takes the foot's place, keeps the site's children
  bindings env;
};

/// Splits `site` for adjunction. upper: top = site.top U root.top,
/// bottom = root.bottom. lower: top = foot.top, bottom = site.bottom U
/// foot.bottom. The returned upper carries `aux_root`'s children unchanged;
/// splicing `lower` in at the foot is left to the caller.
std::optional<adjunction_result> adjoin_features(const tree_node& site,
                                                 const tree_node& aux_root,
                                                 const tree_node& aux_foot,
                                                 const bindings& env);

/// top U bottom (just top for an unfilled substitution node).
std::optional<unify_result> finalize_node(const tree_node& n, const bindings& env);

}  // namespace stag

#endif
