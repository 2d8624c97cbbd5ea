#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "ocw/subgroup_expr.hpp"
#include "ocw/words.hpp"

namespace ocw {

/// One term V_i of the series together with the data describing its section
/// V_i / V_{i-1}: the extended word v, the tuple M it is evaluated on (one
/// entry per leaf of v, in leaf order) and the 1-based position of M in
/// which v is linear modulo V_{i-1}.
struct PlanStep {
  std::size_t index = 0;
  SubgroupExpr V;
  ExtendedWord v;
  std::vector<SubgroupExpr> M;
  std::size_t linear_pos = 0;
  unsigned degree = 0;

  bool operator==(const PlanStep&) const = default;
};

/// [w(N),w(N)] = V_0 <= V_1 <= ... <= V_t = w(N) for a fixed outer commutator
/// word, expressed over the symbolic tuple N_1..N_r (r = leaf count of word,
/// positional in leaf order). Depends on the word alone.
struct SeriesPlan {
  OuterWord word;
  unsigned h = 0;
  std::size_t t = 0;
  SubgroupExpr V0;
  std::vector<PlanStep> steps;

  bool operator==(const SeriesPlan&) const = default;
};

/// Largest series length the construction may produce for height h:
/// 1 for h = 0, 2^h + 2^(h-1) - 1 otherwise.
std::size_t max_series_length(unsigned h);

/// Runs the inductive construction on w.
///
/// h = 0 and h = 1 are the two base cases. For w = [alpha, beta] of height at
/// least 2 the series is assembled from the series of alpha and beta: the
/// first t_beta + 1 terms come from commuting alpha(N) with the beta series
/// (shifted by [w(N), beta(N)]) and multiplying by V_0; the last t_alpha
/// terms come from commuting the alpha series with beta(N) and multiplying by
/// [alpha(N), w(N)]. Auxiliary Y-variables are numbered by one counter per
/// call, in construction order.
SeriesPlan synthesize(const OuterWord& w);

/// Same construction, also returning a line-by-line account of every
/// recursive step.
SeriesPlan synthesize(const OuterWord& w, std::vector<std::string>& transcript);

struct PlanViolation {
  std::size_t step = 0;  // 0 for plan-level clauses
  std::string clause;
  std::string message;
};

struct PlanValidation {
  std::vector<PlanViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Group-free checks of a plan: series length bound, degree bound, tuple
/// arity, linear position range, outer-commutator-extension shape of every
/// M component, X-leaf alignment, and the two endpoint terms.
PlanValidation validate_plan_static(const SeriesPlan& plan);

nlohmann::json plan_to_json(const SeriesPlan& plan);
/// Throws InputError with the JSON path of the first schema violation.
SeriesPlan plan_from_json(const nlohmann::json& doc);

}  // namespace ocw
