#include "ocw/evaluation.hpp"

#include <functional>

#include "ocw/errors.hpp"
#include "ocw/tuples.hpp"

namespace ocw {

Permutation evaluate(const ExtendedWord& w, const std::map<Variable, Permutation>& assignment) {
  if (w.is_leaf()) {
    auto it = assignment.find(w.variable());
    if (it == assignment.end()) throw InputError("no value bound to " + w.variable().name());
    return it->second;
  }
  return commutator(evaluate(w.left(), assignment), evaluate(w.right(), assignment));
}

Permutation evaluate(const GroupWord& u, const std::map<Variable, Permutation>& assignment) {
  if (u.empty()) {
    if (assignment.empty()) throw InputError("cannot infer the degree of an empty word");
    return Permutation::identity(assignment.begin()->second.degree());
  }
  std::optional<Permutation> out;
  for (const Letter& l : u.letters()) {
    auto it = assignment.find(l.var);
    if (it == assignment.end()) throw InputError("no value bound to " + l.var.name());
    Permutation p = it->second.pow(l.exponent);
    out = out ? *out * p : p;
  }
  return *out;
}

namespace {

ElemId eval_positional(const FiniteGroup& g, const ExtendedWord& w, std::span<const ElemId> values) {
  if (w.is_leaf()) return values[0];
  const std::size_t split = w.left().leaf_count();
  return g.comm(eval_positional(g, w.left(), values.first(split)), eval_positional(g, w.right(), values.subspan(split)));
}

void check_arity(const ExtendedWord& w, std::size_t n) {
  if (n != w.leaf_count())
    throw InputError(w.render() + " has " + std::to_string(w.leaf_count()) + " leaves but " + std::to_string(n) +
                     " sets were given");
}

ElemIds factored_values(const FiniteGroup& g, const ExtendedWord& w, std::span<const ElemIds> sets, std::size_t cap) {
  if (w.is_leaf()) return canonical(sets[0]);
  const std::size_t split = w.left().leaf_count();
  ElemIds left = factored_values(g, w.left(), sets.first(split), cap);
  ElemIds right = factored_values(g, w.right(), sets.subspan(split), cap);
  const std::size_t pairs = tuple_count(std::array{left.size(), right.size()});
  if (pairs > cap) throw CapExceeded("value set of " + w.render(), pairs);
  std::vector<char> seen(g.order(), 0);
  ElemIds out;
  for (ElemId a : left)
    for (ElemId b : right) {
      ElemId c = g.comm(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        out.push_back(c);
      }
    }
  return canonical(std::move(out));
}

}  // namespace

ElemId evaluate(const FiniteGroup& g, const ExtendedWord& w, std::span<const ElemId> leaf_values) {
  check_arity(w, leaf_values.size());
  return eval_positional(g, w, leaf_values);
}

ValueSet value_set(const FiniteGroup& g, const ExtendedWord& w, std::span<const ElemIds> sets,
                   const ValueSetOptions& options) {
  check_arity(w, sets.size());
  if (options.mode == EnumerationMode::Exhaustive) return {factored_values(g, w, sets, options.cap), false};

  ValueSet out{{}, true};
  if (std::ranges::any_of(sets, [](const ElemIds& s) { return s.empty(); })) return out;
  Sampler rng(options.seed);
  std::vector<ElemId> tuple(sets.size());
  for (std::size_t n = 0; n < options.samples; ++n) {
    for (std::size_t i = 0; i < sets.size(); ++i) tuple[i] = sets[i][rng.below(sets[i].size())];
    out.elements.push_back(eval_positional(g, w, tuple));
  }
  out.elements = canonical(std::move(out.elements));
  return out;
}

ElemIds value_set_by_tuples(const FiniteGroup& g, const ExtendedWord& w, std::span<const ElemIds> sets,
                            std::size_t cap) {
  check_arity(w, sets.size());
  std::vector<std::size_t> sizes;
  for (const ElemIds& s : sets) sizes.push_back(s.size());
  std::vector<char> seen(g.order(), 0);
  ElemIds out;
  std::vector<ElemId> tuple(sets.size());
  for_each_tuple(sizes, cap, [&](std::span<const std::size_t> idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) tuple[i] = sets[i][idx[i]];
    ElemId v = eval_positional(g, w, tuple);
    if (!seen[v]) {
      seen[v] = 1;
      out.push_back(v);
    }
    return true;
  });
  return canonical(std::move(out));
}

ElemIds group_word_values(const FiniteGroup& g, const GroupWord& u, std::size_t cap) {
  const std::vector<Variable> vars = u.variables();
  std::vector<std::size_t> sizes(vars.size(), g.order());
  std::map<Variable, std::size_t> slot;
  for (std::size_t i = 0; i < vars.size(); ++i) slot[vars[i]] = i;
  std::vector<char> seen(g.order(), 0);
  ElemIds out;
  for_each_tuple(sizes, cap, [&](std::span<const std::size_t> idx) {
    ElemId value = g.identity();
    for (const Letter& l : u.letters())
      value = g.mul(value, g.pow(static_cast<ElemId>(idx[slot.at(l.var)]), l.exponent));
    if (!seen[value]) {
      seen[value] = 1;
      out.push_back(value);
    }
    return true;
  });
  return canonical(std::move(out));
}

std::vector<ElemIds> element_sets(std::span<const SubgroupHandle> subgroups) {
  std::vector<ElemIds> out;
  for (const SubgroupHandle& h : subgroups) out.push_back(h.elements());
  return out;
}

SubgroupHandle verbal_subgroup(const ExtendedWord& w, std::span<const SubgroupHandle> subgroups,
                               const ValueSetOptions& options) {
  check_arity(w, subgroups.size());
  if (subgroups.empty()) throw InputError("verbal subgroup of an empty tuple");
  const GroupPtr& g = subgroups.front().parent();
  for (const SubgroupHandle& h : subgroups)
    if (h.parent() != g) throw InputError("verbal subgroup over subgroups of different groups");
  const std::vector<ElemIds> sets = element_sets(subgroups);
  return generate_subgroup(g, value_set(*g, w, sets, options).elements);
}

// -------------------------------------------------------------- Environment

Environment::Environment(GroupPtr group, std::vector<SubgroupHandle> bindings, EnvironmentOptions options)
    : group_(std::move(group)), bindings_(std::move(bindings)), options_(options) {
  for (std::size_t i = 0; i < bindings_.size(); ++i) {
    if (bindings_[i].parent() != group_) throw InputError("N" + std::to_string(i + 1) + " is not a subgroup of " + group_->name());
    if (!is_normal(bindings_[i])) throw InputError("N" + std::to_string(i + 1) + " is not normal in " + group_->name());
  }
}

const SubgroupHandle& Environment::binding(std::size_t index) const {
  if (index == 0 || index > bindings_.size()) throw InputError("N" + std::to_string(index) + " is unbound");
  return bindings_[index - 1];
}

std::optional<SubgroupHandle> Environment::cached(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = cache_.find(key);
  if (it == cache_.end()) return std::nullopt;
  return it->second;
}

SubgroupHandle Environment::insert(const std::string& key, SubgroupHandle value) {
  std::lock_guard lock(mutex_);
  return cache_.try_emplace(key, std::move(value)).first->second;
}

std::size_t Environment::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

void Environment::record_cross_check(bool agreed) {
  ++cross_checks_;
  if (!agreed) ++mismatches_;
}

SubgroupHandle eval_expr(const SubgroupExpr& e, Environment& env) {
  using Kind = SubgroupExpr::Kind;
  std::string key;
  if (env.options().memoize) {
    key = canonical_key(e);
    if (auto hit = env.cached(key)) return *hit;
  }
  std::optional<SubgroupHandle> result;
  switch (e.kind()) {
    case Kind::Base:
      result = env.binding(e.index());
      break;
    case Kind::Comm: {
      SubgroupHandle a = eval_expr(e.left(), env);
      SubgroupHandle b = eval_expr(e.right(), env);
      result = commutator_subgroup(a, b);
      if (env.options().cross_check_commutators) env.record_cross_check(commutator_subgroup_normal(a, b) == *result);
      break;
    }
    case Kind::Prod: {
      result = eval_expr(e.args()[0], env);
      for (std::size_t i = 1; i < e.args().size(); ++i) result = product(*result, eval_expr(e.args()[i], env));
      break;
    }
    case Kind::Verbal: {
      std::vector<SubgroupHandle> args;
      for (const SubgroupExpr& a : e.args()) args.push_back(eval_expr(a, env));
      result = verbal_subgroup(e.word(), args);
      break;
    }
  }
  if (env.options().memoize) return env.insert(key, std::move(*result));
  return std::move(*result);
}

}  // namespace ocw
