#include <set>

#include "doctest.h"
#include "jrcat/errors.hpp"
#include "jrcat/fixtures.hpp"
#include "jrcat/join.hpp"
#include "oracles.hpp"

using namespace jrcat;

TEST_CASE("joins in FinSet_p are unions of graphs") {
  auto fx = build_finset_p(2);
  const RestrictionCategory& x = fx.category;
  const FinCategory& c = x.base();
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (ObjId b = 0; b < c.object_count(); ++b) {
      std::set<std::vector<MorId>> seen;
      for_each_compatible_family(x, a, b, -1, [&](const std::vector<MorId>& s) {
        seen.insert(s);
        std::vector<Graph> graphs;
        for (MorId f : s) graphs.push_back(fx.graphs[f]);
        auto j = join(x, CompatibleFamily::make(x, a, b, s));
        REQUIRE(j);
        CHECK(fx.graphs[*j] == oracle::graph_union(graphs, a));
      });
      // Every pairwise agreeing subset appears once.
      auto hom = c.hom(a, b);
      std::size_t expected = 0;
      for (std::size_t mask = 0; mask < (std::size_t{1} << hom.size()); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < hom.size(); ++i)
          for (std::size_t k = i + 1; k < hom.size(); ++k)
            if ((mask >> i & 1) && (mask >> k & 1) && !oracle::agree(fx.graphs[hom[i]], fx.graphs[hom[k]]))
              ok = false;
        expected += ok;
      }
      CHECK(seen.size() == expected);
    }
  }
}

TEST_CASE("join examples") {
  auto fx = build_finset_p(2);
  const RestrictionCategory& x = fx.category;
  const FinCategory& c = x.base();
  MorId f = *c.find_morphism("2->2:0-");
  MorId g = *c.find_morphism("2->2:-1");
  CHECK(*join(x, CompatibleFamily::make(x, 2, 2, {f})) == f);
  CHECK(*join(x, CompatibleFamily::make(x, 2, 2, {f, g})) == c.identity(2));
  MorId empty = *c.find_morphism("2->2:--");
  CHECK(*join(x, CompatibleFamily::make(x, 2, 2, {})) == empty);
  CHECK(x.bar(empty) == empty);
  CHECK_THROWS_AS(CompatibleFamily::make(x, 2, 2, {f, *c.find_morphism("2->2:1-")}),
                  IncompatibleFamily);
  CHECK_THROWS_AS(CompatibleFamily::make(x, 2, 2, {c.identity(1)}), InvalidArgument);
}

TEST_CASE("join axioms and monotonicity on FinSet_p") {
  auto fx = build_finset_p(2);
  const RestrictionCategory& x = fx.category;
  CHECK(check_join_axioms(x).ok());
  std::vector<std::pair<std::vector<MorId>, MorId>> joins;
  for_each_compatible_family(x, 2, 2, -1, [&](const std::vector<MorId>& s) {
    joins.push_back({s, *join(x, CompatibleFamily::make(x, 2, 2, s))});
  });
  for (const auto& [s, js] : joins)
    for (const auto& [t, jt] : joins)
      if (std::includes(t.begin(), t.end(), s.begin(), s.end())) CHECK(leq(x, js, jt));
}

TEST_CASE("the no-join fixture") {
  NoJoinFixture fx = build_nojoin_fixture();
  const RestrictionCategory& x = fx.category;
  const FinCategory& c = x.base();
  CHECK(validate_category(c).ok());
  CHECK(check_restriction_axioms(x).ok());
  CHECK(compatible(x, fx.f, fx.g));
  CompatibleFamily pair = CompatibleFamily::make(x, 0, 1, {fx.f, fx.g});
  CHECK(upper_bounds(x, pair).empty());
  CHECK_FALSE(join(x, pair));
  LawReport r = check_join_axioms(x);
  CHECK(r.cites("JOIN-MISSING", {std::min(fx.f, fx.g), std::max(fx.f, fx.g)}));
  // Any other compatible family has a join.
  for (ObjId a = 0; a < 2; ++a) {
    for (ObjId b = 0; b < 2; ++b) {
      for_each_compatible_family(x, a, b, -1, [&](const std::vector<MorId>& s) {
        bool both = std::count(s.begin(), s.end(), fx.f) && std::count(s.begin(), s.end(), fx.g);
        CHECK(join(x, CompatibleFamily::make(x, a, b, s)).has_value() == !both);
      });
    }
  }
  CHECK(r.count("JOIN-MISSING") == 2);
}

TEST_CASE("join restriction functors") {
  auto fx = build_finset_p(2);
  const RestrictionCategory& x = fx.category;
  CHECK(is_join_restriction_functor(x, x, identity_functor(x.base())));

  TotalSubcategory t = total_subcategory(x);
  RestrictionCategory total = trivial_restriction(t.category);
  Functor incl{identity_functor(x.base()).on_objects, t.inclusion};
  CHECK(is_join_restriction_functor(total, x, incl));

  // P({0,1}) → P({0}): only the full set goes to the top.
  RestrictionCategory big = build_subset_monoid(2);
  RestrictionCategory small = build_subset_monoid(1);
  Functor collapse{{0}, {0, 0, 0, 1}};
  CHECK(check_restriction_functor(big, small, collapse).ok());
  CHECK_FALSE(is_join_restriction_functor(big, small, collapse));

  Functor not_functor{{0}, {0, 1, 1, 1}};
  CHECK_THROWS_AS(is_join_restriction_functor(big, small, not_functor), NotAFunctor);
  RestrictionCategory all_total = trivial_restriction(x.base());
  CHECK_THROWS_AS(is_join_restriction_functor(all_total, x, identity_functor(x.base())),
                  NotARestrictionFunctor);
}
