#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ocw/catalog.hpp"
#include "ocw/errors.hpp"
#include "ocw/evaluation.hpp"

using namespace ocw;

TEST_CASE("symmetric and alternating groups") {
  const CatalogEntry s4 = build("symmetric:4");
  CHECK(s4.group->order() == 24);
  CHECK(s4.group->degree() == 4);
  CHECK(s4.label("derived").order() == 12);
  CHECK(s4.label("center").order() == 1);
  CHECK(s4.label("derived2").order() == 4);
  CHECK(s4.label("derived3").order() == 1);
  CHECK(build("alternating:4").group->order() == 12);
  const CatalogEntry a5 = build("alternating:5");
  CHECK(a5.group->order() == 60);
  CHECK(a5.label("derived") == a5.label("G"));
}

TEST_CASE("regular representations") {
  const CatalogEntry h = build("heisenberg:3");
  CHECK(h.group->order() == 27);
  CHECK(h.group->degree() == 27);
  CHECK(h.label("center").order() == 3);
  CHECK(h.label("derived") == h.label("center"));

  const CatalogEntry q8 = build("dicyclic:2");
  CHECK(q8.group->order() == 8);
  CHECK(q8.group->degree() == 8);
  CHECK(q8.label("center").order() == 2);
  CHECK(q8.label("gamma2").order() == 2);
  CHECK(q8.label("gamma3").order() == 1);

  CHECK(build("dicyclic:3").group->order() == 12);
  const CatalogEntry e8 = build("elementary_abelian:2,3");
  CHECK(e8.group->order() == 8);
  CHECK(e8.label("derived").order() == 1);
  CHECK(e8.label("center") == e8.label("G"));
}

TEST_CASE("regular representations are faithful: only the identity fixes a point") {
  for (const std::string spec : {"heisenberg:3", "dicyclic:2", "elementary_abelian:3,2"}) {
    const CatalogEntry e = build(spec);
    CHECK(e.group->degree() == e.group->order());
    for (const Permutation& p : e.group->elements()) {
      if (p.is_identity()) continue;
      for (Permutation::Point i = 0; i < p.degree(); ++i) CHECK(p[i] != i);
    }
  }
}

TEST_CASE("dihedral and products") {
  const CatalogEntry d = build("dihedral:8");
  CHECK(d.group->order() == 16);
  CHECK(d.label("derived").order() == 4);
  CHECK(d.label("gamma3").order() == 2);
  CHECK(d.label("derived2").order() == 1);
  const CatalogEntry p = build("direct_product:cyclic:2*symmetric:4");
  CHECK(p.group->order() == 48);
  CHECK(p.group->degree() == 6);
  CHECK(p.label("derived").order() == 12);
  CHECK(p.label("center").order() == 2);
}

TEST_CASE("trivial group") {
  const CatalogEntry c1 = build("cyclic:1");
  CHECK(c1.group->order() == 1);
  for (const auto& [name, h] : c1.labels) CHECK(h.order() == 1);
}

TEST_CASE("bad specs") {
  CHECK_THROWS_AS(build("nosuch:3"), InputError);
  CHECK_THROWS_AS(build("symmetric"), InputError);
  CHECK_THROWS_AS(build("symmetric:x"), InputError);
  CHECK_THROWS_AS(build("symmetric:0"), InputError);
  CHECK_THROWS_AS(build("dihedral:2"), InputError);
  CHECK_THROWS_AS(build("elementary_abelian:4,2"), InputError);
  CHECK_THROWS_AS(build("heisenberg:9"), InputError);
  CHECK_THROWS_AS(build("dicyclic:200"), InputError);
  CHECK_THROWS_AS(build("cyclic:0"), InputError);
  CHECK_THROWS_AS(build("symmetric:8", 1000), CapExceeded);
  CHECK_THROWS_AS(build("symmetric:4").label("nosuch"), InputError);
}

TEST_CASE("derived and lower central series") {
  const CatalogEntry s4 = build("symmetric:4");
  const std::vector<SubgroupHandle> d = derived_series(s4.group);
  std::vector<std::size_t> orders;
  for (const SubgroupHandle& h : d) orders.push_back(h.order());
  CHECK(orders == std::vector<std::size_t>{24, 12, 4, 1, 1});

  const CatalogEntry c6 = build("cyclic:6");
  const std::vector<SubgroupHandle> dc = derived_series(c6.group);
  CHECK(dc.size() == 3);
  CHECK(dc[1].order() == 1);

  const CatalogEntry q8 = build("dicyclic:2");
  std::vector<std::size_t> lcs;
  for (const SubgroupHandle& h : lower_central_series(q8.group, 3)) lcs.push_back(h.order());
  CHECK(lcs == std::vector<std::size_t>{8, 2, 1});
}

TEST_CASE("property: word evaluation matches series iteration on every catalog group") {
  for (const std::string& spec : catalog_examples()) {
    CAPTURE(spec);
    const CatalogEntry e = build(spec);
    const SubgroupHandle G = e.label("G");
    const std::vector<SubgroupHandle> d = derived_series(e.group);
    const std::vector<SubgroupHandle> g = lower_central_series(e.group, 3);
    for (unsigned k = 1; k <= 3; ++k) {
      const OuterWord gamma = lower_central_word(k);
      const std::vector<SubgroupHandle> gs(gamma.leaf_count(), G);
      CHECK(verbal_subgroup(gamma, gs) == g[k - 1]);
      if (k <= 2 || e.group->order() <= 60) {
        const OuterWord delta = derived_word(k);
        const std::vector<SubgroupHandle> ds(delta.leaf_count(), G);
        CHECK(verbal_subgroup(delta, ds) == d[std::min<std::size_t>(k, d.size() - 1)]);
      }
    }
  }
}

TEST_CASE("group files") {
  const nlohmann::json doc = {{"name", "S3"},
                              {"degree", 3},
                              {"generators", {{1, 0, 2}, {1, 2, 0}}},
                              {"normal_subgroups", {{"rot", {{1, 2, 0}}}}}};
  const CatalogEntry e = group_from_json(doc);
  CHECK(e.name == "S3");
  CHECK(e.group->order() == 6);
  CHECK(e.label("rot").order() == 3);
  CHECK(e.label("derived") == e.label("rot"));

  SUBCASE("non-normal label") {
    nlohmann::json bad = doc;
    bad["normal_subgroups"] = {{"t", {{1, 0, 2}}}};
    CHECK_THROWS_AS(group_from_json(bad), InputError);
  }
  SUBCASE("bad permutation") {
    nlohmann::json bad = doc;
    bad["generators"] = {{1, 1, 2}};
    CHECK_THROWS_AS(group_from_json(bad), InputError);
  }
  SUBCASE("wrong degree") {
    nlohmann::json bad = doc;
    bad["generators"] = {{1, 0}};
    CHECK_THROWS_AS(group_from_json(bad), InputError);
  }
  SUBCASE("missing field") {
    nlohmann::json bad = doc;
    bad.erase("degree");
    CHECK_THROWS_AS(group_from_json(bad), InputError);
  }
  SUBCASE("file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "ocw_test_group.json";
    std::ofstream(path) << doc.dump();
    CHECK(load_group_file(path).group->order() == 6);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_group_file(path), InputError);
  }
}
