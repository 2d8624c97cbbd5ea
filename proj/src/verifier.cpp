#include "ocw/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <thread>

#include "ocw/errors.hpp"
#include "ocw/tuples.hpp"

namespace ocw {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped(cap)";
  }
  return "?";
}

std::string to_string(Orientation o) { return o == Orientation::LeftToRight ? "ltr" : "rtl"; }

CheckStatus combine(std::initializer_list<CheckStatus> statuses) {
  bool any_pass = false;
  for (CheckStatus s : statuses) {
    if (s == CheckStatus::Fail) return CheckStatus::Fail;
    any_pass = any_pass || s == CheckStatus::Pass;
  }
  return any_pass ? CheckStatus::Pass : CheckStatus::Skipped;
}

namespace {

CheckStatus status_of(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

CheckStatus fold(const std::vector<CheckStatus>& all) {
  bool any_pass = false;
  for (CheckStatus s : all) {
    if (s == CheckStatus::Fail) return CheckStatus::Fail;
    any_pass = any_pass || s == CheckStatus::Pass;
  }
  return any_pass || all.empty() ? CheckStatus::Pass : CheckStatus::Skipped;
}

using Coset = Quotient::Coset;

std::vector<Coset> quotient_values(const Quotient& q, const ExtendedWord& w, std::span<const std::vector<Coset>> sets,
                                   std::size_t cap) {
  if (w.is_leaf()) return sets[0];
  const std::size_t split = w.left().leaf_count();
  std::vector<Coset> left = quotient_values(q, w.left(), sets.first(split), cap);
  std::vector<Coset> right = quotient_values(q, w.right(), sets.subspan(split), cap);
  if (tuple_count(std::array{left.size(), right.size()}) > cap)
    throw CapExceeded("quotient value set", left.size() * right.size());
  std::vector<char> seen(q.order(), 0);
  std::vector<Coset> out;
  for (Coset a : left)
    for (Coset b : right) {
      Coset c = q.comm(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        out.push_back(c);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubgroupHandle> evaluate_tuple(const std::vector<SubgroupExpr>& M, Environment& env) {
  std::vector<SubgroupHandle> out;
  for (const SubgroupExpr& m : M) out.push_back(eval_expr(m, env));
  return out;
}

struct PathStep {
  std::vector<Coset> sibling_values;
  bool tested_on_left = true;
};

}  // namespace

LinearityResult detect_linear_positions(Environment& env, const PlanStep& step, const SubgroupHandle& v_prev,
                                        const VerifyOptions& options) {
  const Quotient q(v_prev);
  const std::vector<SubgroupHandle> M = evaluate_tuple(step.M, env);
  if (M.size() != step.v.leaf_count()) throw InputError("step tuple does not match its word");
  std::vector<std::vector<Coset>> images;
  for (const SubgroupHandle& h : M) images.push_back(q.image(h.elements()));

  LinearityResult result;
  result.seed = options.seed;
  for (std::size_t p = 0; p < M.size(); ++p) {
    // root-to-leaf path to position p, with the value sets hanging off it
    std::vector<PathStep> path;
    ExtendedWord node = step.v;
    std::size_t offset = 0;
    while (!node.is_leaf()) {
      const std::size_t split = node.left().leaf_count();
      const bool left = p < offset + split;
      const ExtendedWord sibling = left ? node.right() : node.left();
      const std::size_t sib_offset = left ? offset + split : offset;
      path.push_back({quotient_values(q, sibling, std::span(images).subspan(sib_offset, sibling.leaf_count()),
                                      options.enumeration_cap),
                      left});
      if (!left) offset += split;
      node = left ? node.left() : node.right();
    }
    std::reverse(path.begin(), path.end());

    const std::vector<Coset>& slot = images[p];
    std::vector<std::size_t> sizes;
    for (const PathStep& s : path) sizes.push_back(s.sibling_values.size());
    sizes.push_back(slot.size());
    sizes.push_back(slot.size());

    std::vector<Coset> siblings(path.size());
    auto value_at = [&](Coset x) {
      for (std::size_t k = 0; k < path.size(); ++k)
        x = path[k].tested_on_left ? q.comm(x, siblings[k]) : q.comm(siblings[k], x);
      return x;
    };
    bool ltr = true, rtl = true;
    auto check = [&](Coset g, Coset h) {
      const Coset a = value_at(g), b = value_at(h), c = value_at(q.mul(g, h));
      ltr = ltr && c == q.mul(a, b);
      rtl = rtl && c == q.mul(b, a);
      ++result.tuples_checked;
      return ltr || rtl;
    };

    const std::size_t total = tuple_count(sizes);
    if (options.mode == EnumerationMode::Exhaustive && total <= options.enumeration_cap) {
      for_each_tuple(sizes, options.enumeration_cap, [&](std::span<const std::size_t> idx) {
        for (std::size_t k = 0; k < path.size(); ++k) siblings[k] = path[k].sibling_values[idx[k]];
        return check(slot[idx[path.size()]], slot[idx[path.size() + 1]]);
      });
    } else {
      result.exhaustive = false;
      Sampler rng(options.seed ^ (static_cast<std::uint64_t>(step.index) << 32) ^ p);
      for (std::size_t n = 0; n < options.samples && (ltr || rtl); ++n) {
        for (std::size_t k = 0; k < path.size(); ++k) siblings[k] = path[k].sibling_values[rng.below(sizes[k])];
        check(slot[rng.below(slot.size())], slot[rng.below(slot.size())]);
      }
    }
    if (ltr || rtl) {
      result.positions.push_back(p + 1);
      result.orientation[p + 1] = ltr ? Orientation::LeftToRight : Orientation::RightToLeft;
    }
  }
  return result;
}

std::vector<std::size_t> detect_linear_positions_by_tuples(Environment& env, const PlanStep& step,
                                                           const SubgroupHandle& v_prev, std::size_t cap) {
  const FiniteGroup& g = *env.group();
  const std::vector<SubgroupHandle> M = evaluate_tuple(step.M, env);
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < M.size(); ++p) {
    std::vector<std::size_t> sizes;
    for (const SubgroupHandle& h : M) sizes.push_back(h.order());
    sizes.push_back(M[p].order());  // second factor at position p
    std::vector<ElemId> tuple(M.size());
    bool ltr = true, rtl = true;
    for_each_tuple(sizes, cap, [&](std::span<const std::size_t> idx) {
      for (std::size_t i = 0; i < M.size(); ++i) tuple[i] = M[i].elements()[idx[i]];
      const ElemId x = tuple[p], y = M[p].elements()[idx.back()];
      const ElemId a = evaluate(g, step.v, tuple);
      tuple[p] = y;
      const ElemId b = evaluate(g, step.v, tuple);
      tuple[p] = g.mul(x, y);
      const ElemId c = evaluate(g, step.v, tuple);
      ltr = ltr && congruent(c, g.mul(a, b), v_prev);
      rtl = rtl && congruent(c, g.mul(b, a), v_prev);
      return ltr || rtl;
    });
    if (ltr || rtl) out.push_back(p + 1);
  }
  return out;
}

// ------------------------------------------------------------- PlanReport

bool PlanReport::pass() const {
  for (CheckStatus s : {endpoints, normality, chain, generation, linearity, t_bound, three_subgroup, commutator_cross_check})
    if (s == CheckStatus::Fail) return false;
  return true;
}

bool PlanReport::any_completed() const {
  for (CheckStatus s : {endpoints, normality, chain, generation, linearity, three_subgroup, commutator_cross_check})
    if (s != CheckStatus::Skipped) return true;
  return false;
}

namespace {

// Runs `f`, turning CapExceeded into Skipped.
CheckStatus guarded(const std::function<CheckStatus()>& f) {
  try {
    return f();
  } catch (const CapExceeded&) {
    return CheckStatus::Skipped;
  }
}

void collect_three_subgroup(const OuterWord& w, std::span<const SubgroupExpr> tuple, Environment& env,
                            std::vector<ThreeSubgroupCheck>& out) {
  if (w.height() < 2) return;
  const std::size_t q = w.left().leaf_count();
  collect_three_subgroup(w.left(), tuple.first(q), env, out);
  collect_three_subgroup(w.right(), tuple.subspan(q), env, out);
  const SubgroupExpr alphaN = verbal_tree(w.left(), tuple.first(q));
  const SubgroupExpr betaN = verbal_tree(w.right(), tuple.subspan(q));
  const SubgroupExpr wN = SubgroupExpr::comm(alphaN, betaN);
  const SubgroupExpr lhs = SubgroupExpr::comm(SubgroupExpr::comm(alphaN, alphaN), betaN);
  const SubgroupExpr rhs = SubgroupExpr::comm(alphaN, wN);
  out.push_back({w.render(), guarded([&] { return status_of(eval_expr(lhs, env).is_subset_of(eval_expr(rhs, env))); })});
}

}  // namespace

PlanReport verify_series(Environment& env, const SeriesPlan& plan, const VerifyOptions& options,
                         std::vector<std::string> binding_labels) {
  const auto started = std::chrono::steady_clock::now();
  const GroupPtr& G = env.group();
  const std::size_t r = plan.word.leaf_count();
  if (env.bindings().size() != r)
    throw InputError(plan.word.render() + " needs " + std::to_string(r) + " bindings, got " +
                     std::to_string(env.bindings().size()));

  PlanReport rep;
  rep.group = G->name();
  rep.group_order = G->order();
  rep.word = plan.word.render();
  rep.bindings = std::move(binding_labels);
  rep.h = plan.h;
  rep.t = plan.t;
  rep.options = options;

  // (e)
  const std::size_t t = plan.steps.size();
  rep.t_bound = status_of(t == plan.t && (plan.h == 0 ? t == 1 : t <= max_series_length(plan.h)));

  // every term of the series, V[0] .. V[t]
  std::vector<std::optional<SubgroupHandle>> V(t + 1);
  auto term = [&](std::size_t i) -> const SubgroupExpr& { return i == 0 ? plan.V0 : plan.steps[i - 1].V; };
  for (std::size_t i = 0; i <= t; ++i) {
    try {
      V[i] = eval_expr(term(i), env);
    } catch (const CapExceeded&) {
    }
  }

  // (a) against w(N) built from its value set
  rep.endpoints = guarded([&] {
    const ValueSetOptions vs{EnumerationMode::Exhaustive, options.seed, options.samples, options.enumeration_cap};
    const SubgroupHandle wN = verbal_subgroup(plan.word, env.bindings(), vs);
    const SubgroupHandle V0 = commutator_subgroup(wN, wN);
    rep.order_wN = wN.order();
    rep.order_V0 = V0.order();
    if (!V[0] || !V[t]) return CheckStatus::Skipped;
    return status_of(*V[0] == V0 && *V[t] == wN);
  });

  // (b), (c), (d) per step
  std::vector<CheckStatus> normal_all, chain_all, gen_all, lin_all;
  normal_all.push_back(V[0] ? status_of(is_normal(*V[0])) : CheckStatus::Skipped);
  for (std::size_t i = 1; i <= t; ++i) {
    const PlanStep& step = plan.steps[i - 1];
    StepReport s;
    s.index = i;
    s.declared_linear_pos = step.linear_pos;
    if (V[i]) {
      s.order = V[i]->order();
      s.normal = status_of(is_normal(*V[i]));
    }
    if (V[i] && V[i - 1]) {
      const SubgroupHandle& cur = *V[i];
      const SubgroupHandle& prev = *V[i - 1];
      s.inclusion = status_of(prev.is_subset_of(cur));
      s.section_order = prev.order() ? cur.order() / prev.order() : 0;
      s.generation = guarded([&] {
        const std::vector<SubgroupHandle> M = evaluate_tuple(step.M, env);
        const std::vector<ElemIds> sets = element_sets(M);
        ElemIds gens = value_set(*G, step.v, sets, {EnumerationMode::Exhaustive, 0, 0, options.enumeration_cap}).elements;
        gens.insert(gens.end(), prev.generators().begin(), prev.generators().end());
        return status_of(generate_subgroup(G, gens) == cur);
      });
      s.linearity = guarded([&] {
        if (s.inclusion != CheckStatus::Pass || s.normal == CheckStatus::Fail || !is_normal(prev)) return CheckStatus::Fail;
        s.linear = detect_linear_positions(env, step, prev, options);
        return status_of(std::ranges::find(s.linear->positions, step.linear_pos) != s.linear->positions.end());
      });
    }
    normal_all.push_back(s.normal);
    chain_all.push_back(s.inclusion);
    gen_all.push_back(s.generation);
    lin_all.push_back(s.linearity);
    rep.steps.push_back(std::move(s));
  }
  rep.normality = fold(normal_all);
  rep.chain = fold(chain_all);
  rep.generation = fold(gen_all);
  rep.linearity = fold(lin_all);

  // (f)
  collect_three_subgroup(plan.word, base_tuple(r), env, rep.three_subgroup_nodes);
  std::vector<CheckStatus> tsl;
  for (const auto& n : rep.three_subgroup_nodes) tsl.push_back(n.status);
  rep.three_subgroup = fold(tsl);

  rep.cross_checks = env.cross_checks();
  rep.cross_check_mismatches = env.cross_check_mismatches();
  rep.commutator_cross_check = env.options().cross_check_commutators
                                   ? status_of(rep.cross_check_mismatches == 0)
                                   : CheckStatus::Skipped;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rep;
}

nlohmann::json report_to_json(const PlanReport& rep) {
  nlohmann::json j;
  j["group"] = rep.group;
  j["group_order"] = rep.group_order;
  j["word"] = rep.word;
  j["bindings"] = rep.bindings;
  j["height"] = rep.h;
  j["t"] = rep.t;
  j["order_wN"] = rep.order_wN;
  j["order_V0"] = rep.order_V0;
  j["checks"] = {{"endpoints", to_string(rep.endpoints)},
                 {"normality", to_string(rep.normality)},
                 {"chain", to_string(rep.chain)},
                 {"generation", to_string(rep.generation)},
                 {"linearity", to_string(rep.linearity)},
                 {"t_bound", to_string(rep.t_bound)},
                 {"three_subgroup", to_string(rep.three_subgroup)},
                 {"commutator_cross_check", to_string(rep.commutator_cross_check)}};
  j["commutator_cross_checks"] = rep.cross_checks;
  j["commutator_cross_check_mismatches"] = rep.cross_check_mismatches;
  nlohmann::json tsl = nlohmann::json::array();
  for (const auto& n : rep.three_subgroup_nodes) tsl.push_back({{"node", n.node}, {"status", to_string(n.status)}});
  j["three_subgroup_nodes"] = std::move(tsl);
  nlohmann::json steps = nlohmann::json::array();
  for (const StepReport& s : rep.steps) {
    nlohmann::json js;
    js["index"] = s.index;
    js["order"] = s.order;
    js["section_order"] = s.section_order;
    js["inclusion"] = to_string(s.inclusion);
    js["normal"] = to_string(s.normal);
    js["generation"] = to_string(s.generation);
    js["declared_linear_pos"] = s.declared_linear_pos;
    js["declared_linear_ok"] = s.declared_linear_ok();
    js["linearity"] = to_string(s.linearity);
    if (s.linear) {
      js["linear_positions"] = s.linear->positions;
      nlohmann::json orient = nlohmann::json::object();
      for (const auto& [p, o] : s.linear->orientation) orient[std::to_string(p)] = to_string(o);
      js["orientation"] = std::move(orient);
      js["linearity_mode"] = s.linear->exhaustive ? "exhaustive" : "sampled";
      js["tuples_checked"] = s.linear->tuples_checked;
    }
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  j["seed"] = rep.options.seed;
  j["enumeration_cap"] = rep.options.enumeration_cap;
  j["samples"] = rep.options.samples;
  j["mode"] = rep.options.mode == EnumerationMode::Exhaustive ? "exhaustive" : "sampled";
  if (rep.options.include_timing) j["seconds"] = rep.seconds;
  j["pass"] = rep.pass();
  return j;
}

// ---------------------------------------------------------------- records

bool TheoremBRecord::invariants_hold() const {
  return m <= order_wN && order_wN <= group_order && ((m == 1) == (order_wN == 1));
}

TheoremBRecord theorem_b_record(const Environment& env, const OuterWord& w, const VerifyOptions& options) {
  const ValueSetOptions vs{EnumerationMode::Exhaustive, options.seed, options.samples, options.enumeration_cap};
  const std::vector<ElemIds> sets = element_sets(env.bindings());
  const ElemIds values = value_set(*env.group(), w.extended(), sets, vs).elements;
  TheoremBRecord rec;
  rec.group = env.group()->name();
  rec.word = w.render();
  rec.r = w.leaf_count();
  rec.m = values.size();
  rec.order_wN = generate_subgroup(env.group(), values).order();
  rec.group_order = env.group()->order();
  return rec;
}

bool ConcisenessRecord::pass() const {
  return identity_ok && std::ranges::all_of(normal_subset_ok, std::identity{}) &&
         std::ranges::all_of(power_containment_ok, std::identity{});
}

ConcisenessRecord theorem_a_record(const GroupPtr& g, const OuterWord& w, const std::vector<std::int64_t>& exponents,
                                   const VerifyOptions& options) {
  const std::size_t r = w.leaf_count();
  if (exponents.size() != r)
    throw InputError(w.render() + " needs " + std::to_string(r) + " exponents, got " + std::to_string(exponents.size()));
  if (std::ranges::find(exponents, 0) != exponents.end()) throw InputError("exponents must be non-zero");

  ConcisenessRecord rec;
  rec.group = g->name();
  rec.word = w.render();
  rec.exponents = exponents;

  const SubgroupHandle all = whole_group(g);
  std::vector<ElemIds> S;
  std::vector<GroupWord> us;
  for (std::size_t i = 0; i < r; ++i) {
    S.push_back(power_subset(all, exponents[i]));
    us.push_back(GroupWord::of(Variable::x(static_cast<std::uint32_t>(i + 1)), exponents[i]));
  }
  const GroupWord composed = compose(w, us);
  rec.composed_word = composed.render();

  const ElemIds lhs = group_word_values(*g, composed, options.enumeration_cap);
  const ValueSetOptions vs{EnumerationMode::Exhaustive, options.seed, options.samples, options.enumeration_cap};
  const ElemIds rhs = value_set(*g, w.extended(), S, vs).elements;
  rec.composed_values = lhs.size();
  rec.identity_ok = lhs == rhs;
  rec.m = rhs.size();
  rec.order_wS = generate_subgroup(g, rhs).order();

  for (std::size_t i = 0; i < r; ++i) {
    rec.normal_subset_ok.push_back(is_normal_subset(*g, S[i]));
    const SubgroupHandle n = generate_subgroup(g, S[i]);
    const ElemIds powers = power_subset(n, exponents[i]);
    rec.power_containment_ok.push_back(std::ranges::includes(S[i], powers));
  }
  return rec;
}

nlohmann::json record_to_json(const TheoremBRecord& r) {
  return {{"group", r.group}, {"word", r.word},       {"r", r.r},
          {"m", r.m},         {"order_wN", r.order_wN}, {"group_order", r.group_order},
          {"invariants_hold", r.invariants_hold()}};
}

nlohmann::json record_to_json(const ConcisenessRecord& r) {
  return {{"group", r.group},
          {"word", r.word},
          {"exponents", r.exponents},
          {"composed_word", r.composed_word},
          {"m", r.m},
          {"order_wS", r.order_wS},
          {"composed_values", r.composed_values},
          {"identity_ok", r.identity_ok},
          {"normal_subset_ok", r.normal_subset_ok},
          {"power_containment_ok", r.power_containment_ok},
          {"pass", r.pass()}};
}

CountingBound counting_bound_check(const FiniteGroup& g, std::span<const ElemId> s, std::size_t k, std::size_t cap) {
  CountingBound out;
  out.size = normal_product_set(g, s, k, cap).size();
  const std::uint64_t base = 2 * static_cast<std::uint64_t>(s.size()) + 1;
  out.bound = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (out.bound > std::numeric_limits<std::uint64_t>::max() / base) {
      out.bound = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    out.bound *= base;
  }
  return out;
}

// ------------------------------------------------------------------ survey

std::vector<std::pair<std::string, std::vector<std::string>>> standard_tuples(std::size_t r) {
  std::vector<std::string> all(r, "G"), derived(r, "derived"), mixed;
  for (std::size_t i = 0; i < r; ++i) mixed.push_back(i % 2 == 0 ? "G" : "derived");
  return {{"G", all}, {"derived", derived}, {"mixed", mixed}};
}

std::vector<SurveyResult> run_survey(const std::vector<SurveyCell>& cells, const VerifyOptions& options,
                                     unsigned threads) {
  std::vector<std::optional<SurveyResult>> slots(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const SurveyCell& c = cells[i];
        std::vector<SubgroupHandle> bindings;
        for (const std::string& l : c.labels) bindings.push_back(c.entry->label(l));
        Environment env(c.entry->group, std::move(bindings), {true, true});
        PlanReport rep = verify_series(env, synthesize(c.word), options, c.labels);
        slots[i] = SurveyResult{std::move(rep), theorem_b_record(env, c.word, options)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  pool.clear();
  std::vector<SurveyResult> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

std::string survey_csv(const std::vector<SurveyCell>& cells, const std::vector<SurveyResult>& results) {
  std::ostringstream out;
  out << "group,order,word,tuple,r,h,m,order_wN,t,pass\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const SurveyResult& res = results[i];
    out << cells[i].entry->name << ',' << res.report.group_order << ",\"" << cells[i].word.render() << "\","
        << cells[i].tuple_name << ',' << res.theorem_b.r << ',' << res.report.h << ',' << res.theorem_b.m << ','
        << res.theorem_b.order_wN << ',' << res.report.t << ','
        << (res.report.pass() && res.theorem_b.invariants_hold() ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace ocw
