#include <doctest.h>

#include "ocw/catalog.hpp"
#include "ocw/errors.hpp"
#include "ocw/evaluation.hpp"
#include "ocw/series.hpp"
#include "ocw/tuples.hpp"

using namespace ocw;

namespace {

Permutation cyc(std::size_t degree, std::vector<std::vector<Permutation::Point>> cycles) {
  return Permutation::from_cycles(degree, cycles);
}

std::size_t tuple_count_of(const std::vector<ElemIds>& sets) {
  std::vector<std::size_t> sizes;
  for (const ElemIds& s : sets) sizes.push_back(s.size());
  return tuple_count(sizes);
}

std::vector<SubgroupHandle> repeat(const SubgroupHandle& h, std::size_t r) { return std::vector<SubgroupHandle>(r, h); }

}  // namespace

TEST_CASE("evaluate on permutations") {
  const Permutation a = cyc(4, {{0, 1}}), b = cyc(4, {{2, 3}});
  const OuterWord c = parse_outer("[x1,x2]");
  CHECK(evaluate(c.extended(), {{Variable::x(1), a}, {Variable::x(2), b}}).is_identity());
  const Permutation r = evaluate(c.extended(), {{Variable::x(1), cyc(3, {{0, 1, 2}})}, {Variable::x(2), cyc(3, {{0, 1}})}});
  CHECK(r == cyc(3, {{0, 1, 2}}));
  CHECK(evaluate(parse_outer("x1").extended(), {{Variable::x(1), a}}) == a);
  CHECK_THROWS_AS(evaluate(c.extended(), {{Variable::x(1), a}}), InputError);
  CHECK(evaluate(parse_group_word("x1^2 x2"), {{Variable::x(1), a}, {Variable::x(2), b}}) == b);
}

TEST_CASE("value sets") {
  const CatalogEntry q8 = build("dicyclic:2");
  const FiniteGroup& g = *q8.group;
  const std::vector<ElemIds> sets(2, q8.label("G").elements());
  const ElemIds values = value_set(g, parse_outer("[x1,x2]").extended(), sets).elements;
  CHECK(values.size() == 2);
  CHECK(values == q8.label("center").elements());

  const CatalogEntry s4 = build("symmetric:4");
  const std::vector<ElemIds> all(2, s4.label("G").elements());
  CHECK(value_set(*s4.group, parse_outer("[x1,x2]").extended(), all).elements.size() == 12);
  const std::vector<ElemIds> a4(2, s4.label("derived").elements());
  CHECK(value_set(*s4.group, parse_outer("[x1,x2]").extended(), a4).elements.size() == 4);

  const CatalogEntry c6 = build("cyclic:6");
  const std::vector<ElemIds> ab(3, c6.label("G").elements());
  CHECK(value_set(*c6.group, lower_central_word(3).extended(), ab).elements == ElemIds{c6.group->identity()});

  const std::vector<ElemIds> one{s4.label("derived").elements()};
  CHECK(value_set(*s4.group, parse_outer("x1").extended(), one).elements == s4.label("derived").elements());
  CHECK_THROWS_AS(value_set(*s4.group, parse_outer("x1").extended(), all), InputError);
}

TEST_CASE("property: factored value sets agree with tuple enumeration") {
  for (const std::string spec : {"symmetric:4", "dicyclic:2", "dihedral:8", "heisenberg:3"}) {
    const CatalogEntry e = build(spec);
    for (const OuterWord& w : {parse_outer("[x1,x2]"), lower_central_word(3), lower_central_word(4), derived_word(2)}) {
      for (const auto& [name, labels] : std::vector<std::pair<std::string, std::vector<std::string>>>{
               {"G", std::vector<std::string>(w.leaf_count(), "G")},
               {"derived", std::vector<std::string>(w.leaf_count(), "derived")},
               {"center", std::vector<std::string>(w.leaf_count(), "center")}}) {
        CAPTURE(spec);
        CAPTURE(w.render());
        CAPTURE(name);
        std::vector<ElemIds> sets;
        for (const std::string& l : labels) sets.push_back(e.label(l).elements());
        if (tuple_count_of(sets) > 2'000'000) continue;
        CHECK(value_set(*e.group, w.extended(), sets).elements == value_set_by_tuples(*e.group, w.extended(), sets, 2'000'000));
      }
    }
  }
}

TEST_CASE("sampled value sets are deterministic subsets") {
  const CatalogEntry s4 = build("symmetric:4");
  const std::vector<ElemIds> sets(3, s4.label("G").elements());
  const ExtendedWord w = lower_central_word(3).extended();
  const ValueSetOptions opts{EnumerationMode::Sampled, 7, 64, 10};
  const ValueSet a = value_set(*s4.group, w, sets, opts);
  const ValueSet b = value_set(*s4.group, w, sets, opts);
  CHECK(a.partial);
  CHECK(a.elements == b.elements);
  const ElemIds full = value_set(*s4.group, w, sets).elements;
  CHECK(std::ranges::includes(full, a.elements));
}

TEST_CASE("caps") {
  const CatalogEntry s4 = build("symmetric:4");
  const std::vector<ElemIds> sets(2, s4.label("G").elements());
  const ExtendedWord w = parse_outer("[x1,x2]").extended();
  CHECK_THROWS_AS(value_set(*s4.group, w, sets, {EnumerationMode::Exhaustive, 0, 0, 100}), CapExceeded);
  CHECK_THROWS_AS(value_set_by_tuples(*s4.group, w, sets, 100), CapExceeded);
  CHECK_THROWS_AS(group_word_values(*s4.group, parse_group_word("x1 x2 x3 x4 x5"), 1000), CapExceeded);
}

TEST_CASE("verbal subgroups") {
  const CatalogEntry s4 = build("symmetric:4");
  const SubgroupHandle G = s4.label("G");
  CHECK(verbal_subgroup(parse_outer("[x1,x2]"), repeat(G, 2)) == s4.label("derived"));
  CHECK(verbal_subgroup(parse_outer("x1"), repeat(s4.label("derived"), 1)) == s4.label("derived"));
  const CatalogEntry c6 = build("cyclic:6");
  CHECK(verbal_subgroup(parse_outer("[x1,x2]"), repeat(c6.label("G"), 2)).order() == 1);
  const SubgroupHandle a4 = s4.label("derived");
  CHECK(verbal_subgroup(parse_outer("[x1,x2]"), repeat(a4, 2)).order() == 4);
}

TEST_CASE("group word values") {
  const CatalogEntry s4 = build("symmetric:4");
  CHECK(group_word_values(*s4.group, parse_group_word("x1^2")).size() == 12);
  CHECK(group_word_values(*s4.group, parse_group_word("x1^3")).size() == 16);
  CHECK(group_word_values(*s4.group, parse_group_word("x1^-1 x2^-1 x1 x2")).size() == 12);
  CHECK(group_word_values(*s4.group, GroupWord()) == ElemIds{s4.group->identity()});
}

TEST_CASE("eval_expr") {
  const CatalogEntry s4 = build("symmetric:4");
  const SubgroupHandle G = s4.label("G");
  Environment env(s4.group, repeat(G, 2));
  const SubgroupExpr n1 = SubgroupExpr::base(1), n2 = SubgroupExpr::base(2);
  CHECK(eval_expr(n1, env) == G);
  CHECK(eval_expr(SubgroupExpr::comm(n1, n2), env) == s4.label("derived"));
  CHECK(eval_expr(SubgroupExpr::verbal(parse_outer("x1"), {n1}), env) == G);
  CHECK(eval_expr(SubgroupExpr::verbal(parse_outer("[x1,x2]"), {n1, n2}), env) == s4.label("derived"));
  CHECK_THROWS_AS(eval_expr(SubgroupExpr::base(3), env), InputError);
}

TEST_CASE("environment rejects bad bindings") {
  const CatalogEntry s4 = build("symmetric:4");
  const SubgroupHandle t = generate_subgroup(s4.group, std::vector<Permutation>{cyc(4, {{0, 1}})});
  CHECK_THROWS_AS(Environment(s4.group, {t}), InputError);
  const CatalogEntry s3 = build("symmetric:3");
  CHECK_THROWS_AS(Environment(s4.group, {s3.label("G")}), InputError);
}

TEST_CASE("property: memoized and plain evaluation agree; plan terms increase") {
  for (const std::string spec : {"symmetric:4", "dihedral:8", "direct_product:cyclic:2*symmetric:4"}) {
    const CatalogEntry e = build(spec);
    for (const OuterWord& w : {lower_central_word(3), derived_word(2)}) {
      const SeriesPlan plan = synthesize(w);
      std::vector<SubgroupHandle> mixed;
      for (std::size_t i = 0; i < w.leaf_count(); ++i) mixed.push_back(e.label(i % 2 ? "derived" : "G"));
      Environment cached(e.group, mixed, {true, true});
      Environment plain(e.group, mixed, {false, false});
      std::optional<SubgroupHandle> prev = eval_expr(plan.V0, cached);
      CHECK(*prev == eval_expr(plan.V0, plain));
      for (const PlanStep& s : plan.steps) {
        const SubgroupHandle a = eval_expr(s.V, cached);
        CHECK(a == eval_expr(s.V, plain));
        CHECK(a == eval_expr(s.V, cached));
        CHECK(prev->is_subset_of(a));
        prev = a;
      }
      CHECK(cached.cache_size() > 0);
      CHECK(plain.cache_size() == 0);
      CHECK(cached.cross_check_mismatches() == 0);
      CHECK(cached.cross_checks() > 0);
    }
  }
}

TEST_CASE("property: eval_expr is monotone in the bindings") {
  const CatalogEntry e = build("symmetric:4");
  const SeriesPlan plan = synthesize(lower_central_word(3));
  Environment big(e.group, repeat(e.label("G"), 3));
  Environment small(e.group, {e.label("derived"), e.label("G"), e.label("derived2")});
  CHECK(eval_expr(plan.V0, small).is_subset_of(eval_expr(plan.V0, big)));
  for (const PlanStep& s : plan.steps) CHECK(eval_expr(s.V, small).is_subset_of(eval_expr(s.V, big)));
}
