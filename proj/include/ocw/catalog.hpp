#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ocw/finite_group.hpp"

namespace ocw {

/// A built group together with its distinguished normal subgroups.
struct CatalogEntry {
  std::string name;
  GroupPtr group;
  /// Always present: G, trivial, center, derived, derived2, derived3,
  /// gamma2, gamma3. Custom group files may add more.
  std::vector<std::pair<std::string, SubgroupHandle>> labels;

  /// Throws InputError for an unknown label.
  const SubgroupHandle& label(std::string_view name) const;
};

/// Regular-representation families are limited to this order.
inline constexpr std::size_t kMaxRegularOrder = 512;

/// Builds a catalog group from "family:p1,p2,...". Families:
///
///   symmetric:n, alternating:n       natural action on n points
///   dihedral:n                       symmetries of the n-gon (order 2n), n >= 3
///   cyclic:n                         n-cycle
///   dicyclic:n                       order 4n, regular action (dicyclic:2 = Q8)
///   elementary_abelian:p,k           order p^k, regular action
///   heisenberg:p                     unitriangular 3x3 over F_p, regular action
///   direct_product:A*B*...           factors act on disjoint point sets
///
/// Throws InputError for unknown families or bad parameters and CapExceeded
/// when the group is larger than `cap`.
CatalogEntry build(std::string_view spec, std::size_t cap = kDefaultElementCap);

const std::vector<std::string>& catalog_families();
/// Entries shown by `catalog list`.
const std::vector<std::string>& catalog_examples();

/// G = G^(0) > G^(1) > ... up to and including the first repeated term.
std::vector<SubgroupHandle> derived_series(const GroupPtr& g);
/// gamma_1 = G, ..., gamma_k with gamma_{i+1} = [gamma_i, G].
std::vector<SubgroupHandle> lower_central_series(const GroupPtr& g, std::size_t k);

/// Group file:
///   {"name": s, "degree": n, "generators": [[...]], "normal_subgroups": {"label": [[...]]}}
/// Generators are 0-based image arrays. Every labeled subgroup must be normal.
CatalogEntry group_from_json(const nlohmann::json& doc, std::size_t cap = kDefaultElementCap);
CatalogEntry load_group_file(const std::filesystem::path& path, std::size_t cap = kDefaultElementCap);

}  // namespace ocw
