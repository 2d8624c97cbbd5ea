#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ocw/words.hpp"

namespace ocw {

/// Symbolic subgroup term over a tuple of base normal subgroups N_1..N_r.
///
///   Base(j)          N_j (1-based)
///   Comm(A, B)       [A, B]
///   Prod(A, B, ...)  A B ...
///   Verbal(w, args)  w(args), args positional by the leaf order of w
///
/// Immutable; children are shared.
class SubgroupExpr {
 public:
  enum class Kind { Base, Comm, Prod, Verbal };

  static SubgroupExpr base(std::size_t index);
  static SubgroupExpr comm(const SubgroupExpr& left, const SubgroupExpr& right);
  static SubgroupExpr prod(std::vector<SubgroupExpr> factors);
  /// The word is stored standardized (x1..xr in leaf order).
  static SubgroupExpr verbal(const OuterWord& word, std::vector<SubgroupExpr> args);

  Kind kind() const;
  std::size_t index() const;                   // Base only
  const std::vector<SubgroupExpr>& args() const;  // Comm: {left, right}; Prod: factors; Verbal: arguments
  const OuterWord& word() const;               // Verbal only

  const SubgroupExpr& left() const { return args()[0]; }
  const SubgroupExpr& right() const { return args()[1]; }

  /// Base indices occurring anywhere in the term.
  std::set<std::size_t> bases() const;
  bool has_prod() const;

  std::string render() const;

  bool operator==(const SubgroupExpr& other) const;

 private:
  struct Node;
  explicit SubgroupExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Canonical form: products flattened, deduplicated and sorted by rendering;
/// single-factor products unwrapped; verbal terms expanded into commutator
/// trees of their arguments (Verbal(x1, [e]) becomes e). Idempotent.
SubgroupExpr simplify_expr(const SubgroupExpr& e);

/// Key used for memoization: rendering of the canonical form.
std::string canonical_key(const SubgroupExpr& e);

/// w(args) written as a commutator tree: leaves replaced by the matching
/// argument. This is the form the synthesizer emits.
SubgroupExpr verbal_tree(const OuterWord& w, std::span<const SubgroupExpr> args);

/// Base(1..r)
std::vector<SubgroupExpr> base_tuple(std::size_t r);

nlohmann::json expr_to_json(const SubgroupExpr& e);
/// Throws InputError naming the JSON path of the first schema violation.
SubgroupExpr expr_from_json(const nlohmann::json& j, const std::string& path = "");

}  // namespace ocw
