#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ocw/finite_group.hpp"
#include "ocw/subgroup_expr.hpp"
#include "ocw/words.hpp"

namespace ocw {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;
inline constexpr std::size_t kDefaultSamples = 512;

enum class EnumerationMode { Exhaustive, Sampled };

struct ValueSetOptions {
  EnumerationMode mode = EnumerationMode::Exhaustive;
  std::uint64_t seed = 0;
  std::size_t samples = kDefaultSamples;
  std::size_t cap = kDefaultEnumerationCap;
};

struct ValueSet {
  ElemIds elements;      // sorted
  bool partial = false;  // true for sampled runs
};

/// Commutator evaluation with [a,b] = a^-1 b^-1 a b. Throws InputError if a
/// leaf has no binding.
Permutation evaluate(const ExtendedWord& w, const std::map<Variable, Permutation>& assignment);
Permutation evaluate(const GroupWord& u, const std::map<Variable, Permutation>& assignment);
/// Leaf values given positionally, in leaf order.
ElemId evaluate(const FiniteGroup& g, const ExtendedWord& w, std::span<const ElemId> leaf_values);

/// w{S}: all values of w with the i-th leaf ranging over sets[i].
///
/// Exhaustive mode is exact. Since the leaves of w are distinct variables the
/// values of [L, R] are exactly the commutators of the values of L with the
/// values of R, so the tree is evaluated bottom-up on value sets; `cap`
/// bounds the number of commutators formed at any node. Sampled mode
/// evaluates `samples` pseudo-random leaf tuples and marks the result partial.
ValueSet value_set(const FiniteGroup& g, const ExtendedWord& w, std::span<const ElemIds> sets,
                   const ValueSetOptions& options = {});

/// w{S} by walking the full Cartesian product of leaf tuples. Throws
/// CapExceeded if the product is larger than `cap`.
ElemIds value_set_by_tuples(const FiniteGroup& g, const ExtendedWord& w, std::span<const ElemIds> sets,
                            std::size_t cap = kDefaultEnumerationCap);

/// u{G}: values of a group word with every variable ranging over g.
ElemIds group_word_values(const FiniteGroup& g, const GroupWord& u, std::size_t cap = kDefaultEnumerationCap);

/// w(N): the subgroup generated by w{N}.
SubgroupHandle verbal_subgroup(const ExtendedWord& w, std::span<const SubgroupHandle> subgroups,
                               const ValueSetOptions& options = {});
inline SubgroupHandle verbal_subgroup(const OuterWord& w, std::span<const SubgroupHandle> subgroups,
                                      const ValueSetOptions& options = {}) {
  return verbal_subgroup(w.extended(), subgroups, options);
}

std::vector<ElemIds> element_sets(std::span<const SubgroupHandle> subgroups);

struct EnvironmentOptions {
  bool memoize = true;
  /// Compute every commutator of subgroups both by all pairs and by normal
  /// closure of generator commutators, counting disagreements.
  bool cross_check_commutators = false;
};

/// Bindings N_1..N_r plus the memo table for eval_expr. Cache inserts are
/// atomic per key, so one Environment may be shared between threads.
class Environment {
 public:
  /// Throws InputError if a binding belongs to another group or is not normal.
  Environment(GroupPtr group, std::vector<SubgroupHandle> bindings, EnvironmentOptions options = {});

  const GroupPtr& group() const { return group_; }
  const std::vector<SubgroupHandle>& bindings() const { return bindings_; }
  /// 1-based; throws InputError when unbound.
  const SubgroupHandle& binding(std::size_t index) const;
  const EnvironmentOptions& options() const { return options_; }

  std::optional<SubgroupHandle> cached(const std::string& key) const;
  /// Inserts unless the key is already present; returns the stored value.
  SubgroupHandle insert(const std::string& key, SubgroupHandle value);
  std::size_t cache_size() const;

  void record_cross_check(bool agreed);
  std::size_t cross_checks() const { return cross_checks_; }
  std::size_t cross_check_mismatches() const { return mismatches_; }

 private:
  GroupPtr group_;
  std::vector<SubgroupHandle> bindings_;
  EnvironmentOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, SubgroupHandle> cache_;
  std::atomic<std::size_t> cross_checks_{0};
  std::atomic<std::size_t> mismatches_{0};
};

/// Structural evaluation: Base -> binding, Comm -> commutator_subgroup,
/// Prod -> product, Verbal -> verbal_subgroup; memoized on canonical_key.
SubgroupHandle eval_expr(const SubgroupExpr& e, Environment& env);

}  // namespace ocw
