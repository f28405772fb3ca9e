#include "doctest.h"
#include "jrcat/errors.hpp"
#include "jrcat/fixtures.hpp"
#include "jrcat/restriction.hpp"
#include "oracles.hpp"

using namespace jrcat;

TEST_CASE("FinSet_p sizes") {
  auto zero = build_finset_p(0);
  CHECK(zero.category.base().object_count() == 1);
  CHECK(zero.category.base().morphism_count() == 1);
  auto two = build_finset_p(2);
  CHECK(two.category.base().morphism_count() == 23);
  CHECK(two.category.base().hom(2, 2).size() == 9);
  CHECK(build_finset_p(3).category.base().morphism_count() == 144);
  CHECK_THROWS_AS(build_finset_p(-1), InvalidArgument);
}

TEST_CASE("restriction axioms hold where they should") {
  CHECK(check_restriction_axioms(trivial_restriction(
                                     build_finset_mcat(2, MonicClass::Injections).mc.base()))
            .ok());
  CHECK(check_restriction_axioms(build_finset_p(2).category).ok());
  CHECK(check_restriction_axioms(build_finset_p(3).category).ok());
  CHECK(check_restriction_axioms(build_subset_monoid(2)).ok());
  CHECK(check_restriction_axioms(build_nojoin_fixture().category).ok());
}

TEST_CASE("FinSet_p bar is the partial identity on the domain") {
  auto fx = build_finset_p(2);
  const RestrictionCategory& x = fx.category;
  for (MorId f = 0; f < x.base().morphism_count(); ++f) {
    const Graph& bar = fx.graphs[x.bar(f)];
    for (int i = 0; i < static_cast<int>(bar.size()); ++i)
      CHECK(bar[i] == (fx.graphs[f][i] >= 0 ? i : -1));
  }
}

TEST_CASE("a redirected bar entry is caught") {
  auto fx = build_finset_p(2);
  const FinCategory& c = fx.category.base();
  MorId f = *c.find_morphism("2->2:0-");
  MorId swap = *c.find_morphism("2->2:10");
  std::vector<MorId> bar = fx.category.bar_table();
  bar[f] = swap;
  LawReport r = check_restriction_axioms(RestrictionCategory(c, bar));
  CHECK_FALSE(r.ok());
  bool cited = r.cites("R1", {f});
  for (MorId g : c.out_of(c.src(f))) cited = cited || r.cites("R3", {g, f});
  CHECK(cited);
}

TEST_CASE("restriction order and compatibility match graphs") {
  auto fx = build_finset_p(2);
  const RestrictionCategory& x = fx.category;
  const FinCategory& c = x.base();
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    CHECK(leq(x, f, f));
    CHECK(is_restriction_idempotent(x, x.bar(f)));
    CHECK(is_total(x, f) == (oracle::domain(fx.graphs[f]).size() == fx.graphs[f].size()));
    for (MorId g : c.hom(c.src(f), c.tgt(f))) {
      CHECK(leq(x, f, g) == oracle::included(fx.graphs[f], fx.graphs[g]));
      CHECK(compatible(x, f, g) == oracle::agree(fx.graphs[f], fx.graphs[g]));
      if (leq(x, f, g)) CHECK(compatible(x, f, g));
      if (compatible(x, f, g) && x.bar(f) == x.bar(g)) CHECK(f == g);
      if (leq(x, f, g) && leq(x, g, f)) CHECK(f == g);
      for (MorId h : c.hom(c.src(f), c.tgt(f)))
        if (leq(x, f, g) && leq(x, g, h)) CHECK(leq(x, f, h));
    }
  }
  MorId a = *c.find_morphism("2->2:0-");
  MorId b = *c.find_morphism("2->2:1-");
  CHECK_FALSE(compatible(x, a, b));
  CHECK_THROWS_AS(leq(x, a, c.identity(1)), InvalidArgument);
  CHECK_THROWS_AS(compatible(x, a, c.identity(1)), InvalidArgument);
}

TEST_CASE("total subcategory") {
  auto fx = build_finset_p(2);
  TotalSubcategory t = total_subcategory(fx.category);
  FinCategory finset = build_finset_mcat(2, MonicClass::Injections).mc.base();
  CHECK(t.category.morphism_count() == finset.morphism_count());
  CHECK(find_isomorphism(t.category, finset));
  for (ObjId a = 1; a <= 2; ++a) {
    Graph empty(a, -1);
    for (ObjId b = 0; b <= 2; ++b) CHECK(t.index[oracle::find(fx.category.base(), fx.graphs, a, b, empty)] == kNone);
  }
  FinCategory c = finset;
  CHECK(total_subcategory(trivial_restriction(c)).category.morphism_count() == c.morphism_count());
}

TEST_CASE("restriction functors and splittings") {
  auto fx = build_finset_p(2);
  const RestrictionCategory& x = fx.category;
  CHECK(check_restriction_functor(x, x, identity_functor(x.base())).ok());
  Functor bad = identity_functor(x.base());
  MorId f = *x.base().find_morphism("2->2:0-");
  bad.on_morphisms[x.bar(f)] = x.base().identity(2);
  CHECK_FALSE(check_restriction_functor(x, x, bad).ok());

  auto s = find_splitting(x.base(), f);
  REQUIRE(s);
  CHECK(s->object == 1);
  CHECK(x.base().compose(s->retraction, s->section) == x.base().identity(1));
  CHECK(x.base().compose(s->section, s->retraction) == x.bar(f));
  CHECK(unsplit_restriction_idempotents(x).empty());
  CHECK(unsplit_restriction_idempotents(build_subset_monoid(1)).size() == 1);
}
