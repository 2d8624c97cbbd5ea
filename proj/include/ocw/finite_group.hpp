#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ocw/permutation.hpp"

namespace ocw {

inline constexpr std::size_t kDefaultElementCap = 20000;

/// Index of an element in its group's sorted element table. Because the
/// table is sorted lexicographically on image arrays, sorted ElemId vectors
/// are the canonical sorted element sets.
using ElemId = std::uint32_t;
using ElemIds = std::vector<ElemId>;

/// Sorted, duplicate-free set of permutations.
using ElementSet = std::vector<Permutation>;

/// Breadth-first closure of `gens` under composition. `degree` is only used
/// when `gens` is empty. Throws CapExceeded once more than `cap` elements
/// have been found.
ElementSet closure(std::span<const Permutation> gens, std::size_t cap, std::size_t degree = 1);

/// A permutation group with all of its elements enumerated. Immutable and
/// shared through std::shared_ptr<const FiniteGroup>.
class FiniteGroup {
 public:
  static std::shared_ptr<const FiniteGroup> generate(std::string name, std::size_t degree,
                                                     std::vector<Permutation> generators,
                                                     std::size_t cap = kDefaultElementCap);

  const std::string& name() const { return name_; }
  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const ElemIds& generator_ids() const { return generator_ids_; }
  const ElementSet& elements() const { return elements_; }
  const Permutation& element(ElemId id) const { return elements_[id]; }
  ElemId identity() const { return identity_; }

  /// Throws InputError if `p` is not in the group.
  ElemId id_of(const Permutation& p) const;
  bool contains(const Permutation& p) const;

  ElemId mul(ElemId a, ElemId b) const {
    return table_.empty() ? mul_slow(a, b) : table_[static_cast<std::size_t>(a) * order() + b];
  }
  ElemId inv(ElemId a) const { return inverse_[a]; }
  ElemId pow(ElemId a, std::int64_t k) const;
  /// g^-1 a g
  ElemId conj(ElemId a, ElemId g) const { return mul(mul(inv(g), a), g); }
  /// a^-1 b^-1 a b
  ElemId comm(ElemId a, ElemId b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  bool has_table() const { return !table_.empty(); }

 private:
  FiniteGroup() = default;
  ElemId mul_slow(ElemId a, ElemId b) const;

  std::string name_;
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  ElemIds generator_ids_;
  ElementSet elements_;
  std::unordered_map<Permutation, ElemId, PermutationHash> index_;
  ElemIds inverse_;
  ElemIds table_;
  ElemId identity_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A subgroup of a FiniteGroup, held as its canonical sorted element set plus
/// a small generating set.
class SubgroupHandle {
 public:
  SubgroupHandle(GroupPtr parent, ElemIds elements, ElemIds generators);

  const GroupPtr& parent() const { return parent_; }
  const FiniteGroup& group() const { return *parent_; }
  const ElemIds& elements() const { return elements_; }
  const ElemIds& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(ElemId g) const { return mask_[g] != 0; }
  bool is_subset_of(const SubgroupHandle& other) const;
  ElementSet permutations() const;

  bool operator==(const SubgroupHandle& other) const { return elements_ == other.elements_; }

 private:
  GroupPtr parent_;
  ElemIds elements_;
  ElemIds generators_;
  std::vector<char> mask_;
};

SubgroupHandle whole_group(const GroupPtr& g);
SubgroupHandle trivial_subgroup(const GroupPtr& g);

/// Subgroup generated by `gens` inside g.
SubgroupHandle generate_subgroup(const GroupPtr& g, std::span<const ElemId> gens);
SubgroupHandle generate_subgroup(const GroupPtr& g, std::span<const Permutation> gens);

/// Smallest normal subgroup of g containing `seeds`.
SubgroupHandle normal_closure(const GroupPtr& g, std::span<const ElemId> seeds);

bool is_normal(const SubgroupHandle& h);
bool is_normal_subset(const FiniteGroup& g, std::span<const ElemId> subset);

/// [A,B] generated by all commutators [a,b], a in A, b in B.
SubgroupHandle commutator_subgroup(const SubgroupHandle& a, const SubgroupHandle& b);

/// [A,B] as the normal closure of the commutators of generator pairs. Valid
/// only when A and B are both normal; throws InputError otherwise.
SubgroupHandle commutator_subgroup_normal(const SubgroupHandle& a, const SubgroupHandle& b);

/// The set AB. Throws InputError unless A or B is normal in the parent.
SubgroupHandle product(const SubgroupHandle& a, const SubgroupHandle& b);

SubgroupHandle center(const GroupPtr& g);

/// { g^n : g in N }. Throws InputError for n = 0.
ElemIds power_subset(const SubgroupHandle& n, std::int64_t exponent);

/// All products of at most k factors from S, S^-1 and the identity.
ElemIds normal_product_set(const FiniteGroup& g, std::span<const ElemId> s, std::size_t k,
                           std::size_t cap = kDefaultElementCap);

/// g h^-1 in V
bool congruent(ElemId g, ElemId h, const SubgroupHandle& v);

/// Sorted, deduplicated copy.
ElemIds canonical(ElemIds ids);

/// G / V for V normal in G, with its own multiplication table on coset ids.
class Quotient {
 public:
  using Coset = std::uint32_t;

  /// Throws InputError unless V is normal.
  explicit Quotient(const SubgroupHandle& v);

  std::size_t order() const { return reps_.size(); }
  Coset coset_of(ElemId g) const { return coset_[g]; }
  Coset identity() const { return coset_[group_->identity()]; }
  Coset mul(Coset a, Coset b) const { return table_[static_cast<std::size_t>(a) * order() + b]; }
  Coset inv(Coset a) const { return inverse_[a]; }
  Coset comm(Coset a, Coset b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  /// Distinct images of `ids`, sorted.
  std::vector<Coset> image(std::span<const ElemId> ids) const;

 private:
  GroupPtr group_;
  std::vector<Coset> coset_;
  ElemIds reps_;
  std::vector<Coset> table_;
  std::vector<Coset> inverse_;
};

}  // namespace ocw
