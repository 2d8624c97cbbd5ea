#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ocw/catalog.hpp"
#include "ocw/evaluation.hpp"
#include "ocw/series.hpp"

namespace ocw {

enum class CheckStatus { Pass, Fail, Skipped };

/// "pass", "fail", "skipped(cap)"
std::string to_string(CheckStatus s);

/// Folds statuses: any Fail gives Fail, otherwise any Pass gives Pass, otherwise Skipped.
CheckStatus combine(std::initializer_list<CheckStatus> statuses);

struct VerifyOptions {
  /// Largest tuple space walked exhaustively; beyond it checks are sampled.
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  EnumerationMode mode = EnumerationMode::Exhaustive;
  std::uint64_t seed = 0;
  std::size_t samples = kDefaultSamples;
  bool include_timing = false;
};

enum class Orientation { LeftToRight, RightToLeft };
std::string to_string(Orientation o);

/// Positions p (1-based) of a step's tuple M for which
///   v(..., gh, ...) == v(..., g, ...) v(..., h, ...)   (or v(h) v(g))
/// holds modulo V_{i-1} for every tested tuple.
struct LinearityResult {
  std::vector<std::size_t> positions;
  std::map<std::size_t, Orientation> orientation;
  bool exhaustive = true;
  std::size_t tuples_checked = 0;
  std::uint64_t seed = 0;
};

/// The congruence only depends on the images in G / V_prev, so tuples are
/// walked there. Siblings of the tested leaf enter through their value sets,
/// which is exact because the leaves are distinct variables. Spaces larger
/// than options.enumeration_cap (or mode == Sampled) fall back to
/// options.samples pseudo-random tuples.
LinearityResult detect_linear_positions(Environment& env, const PlanStep& step, const SubgroupHandle& v_prev,
                                        const VerifyOptions& options);

/// Same question answered by walking the full tuple space in G itself. Used as
/// an oracle in tests; throws CapExceeded above `cap`.
std::vector<std::size_t> detect_linear_positions_by_tuples(Environment& env, const PlanStep& step,
                                                           const SubgroupHandle& v_prev, std::size_t cap);

struct StepReport {
  std::size_t index = 0;
  std::size_t order = 0;          // |V_i|
  std::size_t section_order = 0;  // |V_i / V_{i-1}|
  CheckStatus inclusion = CheckStatus::Skipped;  // V_{i-1} <= V_i
  CheckStatus normal = CheckStatus::Skipped;     // V_i normal in G
  CheckStatus generation = CheckStatus::Skipped; // V_i = <v_i{M_i}, V_{i-1}>
  CheckStatus linearity = CheckStatus::Skipped;  // declared position is linear
  std::size_t declared_linear_pos = 0;
  std::optional<LinearityResult> linear;

  bool declared_linear_ok() const { return linearity == CheckStatus::Pass; }
};

struct ThreeSubgroupCheck {
  std::string node;  // rendered subword
  CheckStatus status = CheckStatus::Skipped;
};

struct PlanReport {
  std::string group;
  std::size_t group_order = 0;
  std::string word;
  std::vector<std::string> bindings;
  unsigned h = 0;
  std::size_t t = 0;
  std::size_t order_wN = 0;
  std::size_t order_V0 = 0;
  CheckStatus endpoints = CheckStatus::Skipped;
  CheckStatus normality = CheckStatus::Skipped;
  CheckStatus chain = CheckStatus::Skipped;
  CheckStatus generation = CheckStatus::Skipped;
  CheckStatus linearity = CheckStatus::Skipped;
  CheckStatus t_bound = CheckStatus::Skipped;
  CheckStatus three_subgroup = CheckStatus::Skipped;
  CheckStatus commutator_cross_check = CheckStatus::Skipped;
  std::size_t cross_checks = 0;
  std::size_t cross_check_mismatches = 0;
  std::vector<ThreeSubgroupCheck> three_subgroup_nodes;
  std::vector<StepReport> steps;
  VerifyOptions options;
  double seconds = 0;

  bool pass() const;
  /// True if at least one check ran to completion.
  bool any_completed() const;
};

/// Checks, on the concrete tuple bound in `env`:
///   (a) V_0 = [w(N), w(N)] and V_t = w(N), against w(N) computed from its value set
///   (b) V_{i-1} <= V_i, each V_i normal in G
///   (c) V_i = <v_i{M_i}, V_{i-1}>
///   (d) v_i linear modulo V_{i-1} at the declared position
///   (e) t = 1 for h = 0, t <= 2^h + 2^(h-1) - 1 otherwise
///   (f) [[alpha(N), alpha(N)], beta(N)] <= [alpha(N), w(N)] at every subword of height >= 2
/// A CapExceeded inside one check marks it skipped and the rest still run.
PlanReport verify_series(Environment& env, const SeriesPlan& plan, const VerifyOptions& options = {},
                         std::vector<std::string> binding_labels = {});

nlohmann::json report_to_json(const PlanReport& report);

struct TheoremBRecord {
  std::string group;
  std::string word;
  std::size_t r = 0;
  std::size_t m = 0;         // |w{N}|
  std::size_t order_wN = 0;  // |w(N)|
  std::size_t group_order = 0;

  /// m <= |w(N)| <= |G| and (m = 1 iff |w(N)| = 1)
  bool invariants_hold() const;
};

TheoremBRecord theorem_b_record(const Environment& env, const OuterWord& w, const VerifyOptions& options = {});

struct ConcisenessRecord {
  std::string group;
  std::string word;
  std::vector<std::int64_t> exponents;
  std::string composed_word;
  std::size_t m = 0;         // |w{S}|, S_i = n_i-th powers
  std::size_t order_wS = 0;  // |w(S)|
  std::size_t composed_values = 0;
  bool identity_ok = false;  // w(x1^n1, ...){G} == w{S}
  std::vector<bool> normal_subset_ok;
  std::vector<bool> power_containment_ok;

  bool pass() const;
};

/// Throws InputError for a zero exponent or an exponent list of the wrong length.
ConcisenessRecord theorem_a_record(const GroupPtr& g, const OuterWord& w, const std::vector<std::int64_t>& exponents,
                                   const VerifyOptions& options = {});

nlohmann::json record_to_json(const TheoremBRecord& r);
nlohmann::json record_to_json(const ConcisenessRecord& r);

struct CountingBound {
  std::size_t size = 0;   // |S^{*k}|
  std::uint64_t bound = 0;  // (2|S| + 1)^k, saturating
  bool ok() const { return size <= bound; }
};

CountingBound counting_bound_check(const FiniteGroup& g, std::span<const ElemId> s, std::size_t k,
                                   std::size_t cap = kDefaultElementCap);

// ------------------------------------------------------------------ survey

struct SurveyCell {
  const CatalogEntry* entry = nullptr;
  OuterWord word;
  std::string tuple_name;
  std::vector<std::string> labels;  // one per leaf
};

struct SurveyResult {
  PlanReport report;
  TheoremBRecord theorem_b;
};

/// Tuples used by the default survey: "G" (all G), "derived" (all G'),
/// "mixed" (G at odd positions, G' at even ones).
std::vector<std::pair<std::string, std::vector<std::string>>> standard_tuples(std::size_t r);

/// Runs every cell; results come back in cell order whatever the schedule.
std::vector<SurveyResult> run_survey(const std::vector<SurveyCell>& cells, const VerifyOptions& options,
                                     unsigned threads = 0);

/// group,order,word,tuple,r,h,m,order_wN,t,pass
std::string survey_csv(const std::vector<SurveyCell>& cells, const std::vector<SurveyResult>& results);

}  // namespace ocw
