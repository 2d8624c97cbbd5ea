#include <doctest.h>

#include "ocw/errors.hpp"
#include "ocw/words.hpp"

using namespace ocw;

namespace {

GroupWord x(std::uint32_t k, std::int64_t e = 1) { return GroupWord::of(Variable::x(k), e); }

}  // namespace

TEST_CASE("parse_outer builds trees and heights") {
  const OuterWord c = parse_outer("[x1,x2]");
  CHECK_FALSE(c.is_leaf());
  CHECK(c.height() == 1);
  CHECK(c.left().variable() == Variable::x(1));
  CHECK(c.right().variable() == Variable::x(2));

  const OuterWord leaf = parse_outer("x1");
  CHECK(leaf.is_leaf());
  CHECK(leaf.height() == 0);

  const OuterWord d2 = parse_outer("[[x1,x2],[x3,x4]]");
  CHECK(d2.height() == 2);
  CHECK(d2.leaf_count() == 4);
  CHECK(parse_outer("[[x1,x2],x3]").height() == 2);
  CHECK(parse_outer("  [ [x1 , x2] ,x3 ]  ") == parse_outer("[[x1,x2],x3]"));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_outer(""), ParseError);
  CHECK_THROWS_AS(parse_outer("[x1,x2"), ParseError);
  CHECK_THROWS_AS(parse_outer("[x1 x2]"), ParseError);
  CHECK_THROWS_AS(parse_outer("[x1,x2]]"), ParseError);
  CHECK_THROWS_AS(parse_outer("[x0,x2]"), ParseError);
  CHECK_THROWS_AS(parse_outer("[x1,y2]"), ParseError);
  try {
    parse_outer("[x1,z2]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("repeated variables are rejected") {
  CHECK_THROWS_AS(parse_outer("[x1,x1]"), InputError);
  CHECK_THROWS_AS(parse_outer("[[x1,x2],[x3,x1]]"), InputError);
  CHECK_THROWS_AS(parse_extended("[y1,[x1,y1]]"), InputError);
}

TEST_CASE("rendering") {
  CHECK(parse_outer("[x1,x2]").render() == "[x1,x2]");
  CHECK(parse_extended("y1").render() == "y1");
  CHECK(derived_word(2).render() == "[[x1,x2],[x3,x4]]");
  CHECK(lower_central_word(3).render() == "[[x1,x2],x3]");
  CHECK(lower_central_word(1).render() == "x1");
  CHECK(derived_word(0).render() == "x1");
  CHECK(derived_word(3).height() == 3);
  CHECK(derived_word(3).leaf_count() == 8);
  CHECK(GroupWord().render() == "1");
  CHECK((x(1, 2) * x(2, -1)).render() == "x1^2 x2^-1");
}

TEST_CASE("standardized relabels leaves in order") {
  CHECK(parse_outer("[x3,[x7,x2]]").standardized().render() == "[x1,[x2,x3]]");
}

TEST_CASE("free reduction") {
  CHECK((x(1) * x(1).inverse()).empty());
  CHECK((x(1, 2) * x(1, -2)).empty());
  CHECK((x(1) * x(2) * x(2, -1) * x(1, 2)) == x(1, 3));
  CHECK(parse_group_word("x1 x2 x2^-1 x1^-1").empty());
  CHECK(parse_group_word("1").empty());
  CHECK(parse_group_word("x1^2 x2^-1 x1") == x(1, 2) * x(2, -1) * x(1));
}

TEST_CASE("exponent sums") {
  CHECK(exponent_sum(x(1, 3), Variable::x(1)) == 3);
  CHECK(exponent_sum(x(1) * x(2) * x(1, -1), Variable::x(1)) == 0);
  CHECK(exponent_sum(parse_group_word("x1^2 x2^-1 x1"), Variable::x(1)) == 3);
  CHECK(exponent_sum(x(1, 3), Variable::x(2)) == 0);
}

TEST_CASE("non-commutator words") {
  CHECK(is_non_commutator(x(1, 5)));
  CHECK_FALSE(is_non_commutator(parse_group_word("x1 x2 x1^-1 x2^-1")));
  CHECK_FALSE(is_non_commutator(GroupWord()));
  CHECK(is_non_commutator(parse_group_word("x1 x2 x1^-1")));
}

TEST_CASE("compose substitutes and expands") {
  const OuterWord c = parse_outer("[x1,x2]");
  const std::vector<GroupWord> identity{x(1), x(2)};
  CHECK(compose(c, identity).render() == "x1^-1 x2^-1 x1 x2");

  const std::vector<GroupWord> powers{x(1, 2), x(2, 3)};
  CHECK(compose(c, powers).render() == "x1^-2 x2^-3 x1^2 x2^3");

  const std::vector<GroupWord> single{x(1) * x(2)};
  CHECK(compose(parse_outer("x1"), single).render() == "x1 x2");

  // u_i are moved onto disjoint variables before substitution
  const std::vector<GroupWord> same{x(1), x(1)};
  CHECK(compose(c, same).render() == "x1^-1 x2^-1 x1 x2");

  const std::vector<GroupWord> wrong{x(1)};
  CHECK_THROWS_AS(compose(c, wrong), InputError);
}

TEST_CASE("extended word expansion matches the commutator convention") {
  CHECK(parse_extended("[x1,x2]").expand() == commutator(x(1), x(2)));
  CHECK(commutator(x(1), x(2)).render() == "x1^-1 x2^-1 x1 x2");
  const GroupWord c3 = parse_outer("[[x1,x2],x3]").extended().expand();
  CHECK(c3 == commutator(commutator(x(1), x(2)), x(3)));
  CHECK_FALSE(is_non_commutator(c3));
}

TEST_CASE("degree counts maximal Y-pure subtrees") {
  CHECK(degree(parse_extended("[[x1,x2],[[y1,y2],[x3,x4]]]")) == 1);
  CHECK(degree(parse_extended("[x1,[y1,x2]]")) == 1);
  CHECK(degree(parse_extended("[[x1,x2],[y1,[x3,x4]]]")) == 1);
  CHECK(degree(parse_extended("[y1,[y2,y3]]")) == 1);
  CHECK(degree(parse_extended("[[y1,x1],[y2,x2]]")) == 2);
  CHECK(degree(parse_extended("y1")) == 1);
  CHECK(degree(parse_outer("[[x1,x2],[x3,x4]]").extended()) == 0);
  CHECK(degree(parse_outer("x1").extended()) == 0);
}

TEST_CASE("OuterWord rejects Y leaves") {
  CHECK_THROWS_AS(OuterWord(parse_extended("[x1,y1]")), InputError);
}

TEST_CASE("property: every lower central and derived word has the right height and arity") {
  for (unsigned k = 1; k <= 6; ++k) {
    CHECK(lower_central_word(k).height() == k - 1);
    CHECK(lower_central_word(k).leaf_count() == k);
  }
  for (unsigned k = 0; k <= 4; ++k) {
    CHECK(derived_word(k).height() == k);
    CHECK(derived_word(k).leaf_count() == (1u << k));
    CHECK(parse_outer(derived_word(k).render()) == derived_word(k));
  }
}
