#include <set>

#include "doctest.h"
#include "jrcat/errors.hpp"
#include "jrcat/fixtures.hpp"
#include "jrcat/mcat.hpp"
#include "oracles.hpp"

using namespace jrcat;

namespace {

FinCategory one_object() { return build_trivial().base(); }

// A, B with two parallel maps f, g: A → B.
FinCategory parallel_pair(bool broken) {
  CategoryBuilder b;
  ObjId a = b.add_object("A");
  ObjId t = b.add_object("B");
  MorId ia = b.add_morphism("1A", a, a);
  MorId ib = b.add_morphism("1B", t, t);
  MorId f = b.add_morphism("f", a, t);
  MorId g = b.add_morphism("g", a, t);
  b.set_identity(a, ia);
  b.set_identity(t, ib);
  b.set_comp(ia, ia, ia);
  b.set_comp(ib, ib, ib);
  for (MorId h : {f, g}) {
    b.set_comp(h, ia, h);
    b.set_comp(ib, h, h);
  }
  if (broken) b.set_comp(ib, f, g);
  return b.build();
}

Diagram empty_diagram() { return {CategoryBuilder().build(), Functor{}}; }

}  // namespace

TEST_CASE("validate_category on small fixtures") {
  CHECK(validate_category(one_object()).ok());
  CHECK(validate_category(parallel_pair(false)).ok());
  LawReport r = validate_category(parallel_pair(true));
  CHECK(r.cites("ID-LEFT", {2}));
  CHECK(validate_category(build_finset_mcat(2, MonicClass::Injections).mc.base()).ok());
}

TEST_CASE("FinSet tables agree with function composition") {
  auto fx = build_finset_mcat(3, MonicClass::Injections);
  const FinCategory& c = fx.mc.base();
  CHECK(c.morphism_count() == 60);
  CHECK(build_finset_mcat(2, MonicClass::Injections).mc.base().morphism_count() == 11);
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (MorId g : c.out_of(c.tgt(f)))
      REQUIRE(fx.graphs[c.compose(g, f)] == oracle::compose(fx.graphs[g], fx.graphs[f]));
  }
}

TEST_CASE("is_mono is injectivity on FinSet") {
  auto fx = build_finset_mcat(3, MonicClass::Injections);
  const FinCategory& c = fx.mc.base();
  for (MorId f = 0; f < c.morphism_count(); ++f)
    CHECK(is_mono(c, f) == oracle::injective(fx.graphs[f]));
  auto two = build_finset_mcat(2, MonicClass::Injections);
  CHECK_FALSE(is_mono(two.mc.base(), *two.mc.base().find_morphism("2->1:00")));
  CHECK(is_mono(two.mc.base(), *two.mc.base().find_morphism("1->2:1")));
}

TEST_CASE("pullback along an identity") {
  auto fx = build_finset_mcat(2, MonicClass::Injections);
  const FinCategory& c = fx.mc.base();
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    auto cone = pullback(c, f, c.identity(c.tgt(f)));
    REQUIRE(cone);
    CHECK(cone->apex == c.src(f));
    CHECK(cone->legs[0] == c.identity(c.src(f)));
    CHECK(cone->legs[1] == f);
  }
}

TEST_CASE("pullback of subset inclusions is the intersection") {
  auto fx = build_finset_mcat(3, MonicClass::Injections);
  const FinCategory& c = fx.mc.base();
  for (MorId m : c.into(3)) {
    if (!oracle::injective(fx.graphs[m])) continue;
    for (MorId n : c.into(3)) {
      if (!oracle::injective(fx.graphs[n])) continue;
      auto cone = pullback(c, m, n);
      REQUIRE(cone);
      std::set<int> meet;
      for (int v : oracle::image(fx.graphs[m]))
        if (oracle::image(fx.graphs[n]).count(v)) meet.insert(v);
      MorId diag = c.compose(m, cone->legs[0]);
      CHECK(diag == c.compose(n, cone->legs[1]));
      CHECK(oracle::image(fx.graphs[diag]) == meet);
      CHECK(oracle::size(c, cone->apex) == static_cast<int>(meet.size()));
    }
  }
}

TEST_CASE("pullback missing in a poset without meets") {
  CategoryBuilder b;
  ObjId a = b.add_object("a");
  ObjId x = b.add_object("b");
  ObjId t = b.add_object("t");
  std::vector<MorId> ids{b.add_morphism("1a", a, a), b.add_morphism("1b", x, x),
                         b.add_morphism("1t", t, t)};
  MorId at = b.add_morphism("a<t", a, t);
  MorId bt = b.add_morphism("b<t", x, t);
  for (ObjId o : {a, x, t}) {
    b.set_identity(o, ids[o]);
    b.set_comp(ids[o], ids[o], ids[o]);
  }
  b.set_comp(at, ids[a], at);
  b.set_comp(ids[t], at, at);
  b.set_comp(bt, ids[x], bt);
  b.set_comp(ids[t], bt, bt);
  FinCategory c = b.build();
  REQUIRE(validate_category(c).ok());
  CHECK_FALSE(pullback(c, at, bt));
  CHECK(pullback(c, at, at));
}

TEST_CASE("colimits by exhaustive search") {
  auto fx = build_finset_mcat(2, MonicClass::Injections);
  const FinCategory& c = fx.mc.base();

  auto initial = colimit(c, empty_diagram());
  REQUIRE(initial);
  CHECK(initial->apex == 0);

  for (ObjId a = 0; a < c.object_count(); ++a) {
    CategoryBuilder sb;
    sb.add_object("i");
    sb.set_identity(0, sb.add_morphism("1", 0, 0));
    sb.set_comp(0, 0, 0);
    Diagram d{sb.build(), Functor{{a}, {c.identity(a)}}};
    auto col = colimit(c, d);
    REQUIRE(col);
    CHECK(col->apex == a);
    CHECK(col->legs == std::vector<MorId>{c.identity(a)});
  }
}

TEST_CASE("colimit of a matching diagram of subsets is the union") {
  auto fx = build_finset_mcat(3, MonicClass::Injections);
  const MCategory& mc = fx.mc;
  const FinCategory& c = mc.base();
  const auto& subs = mc.subobjects(3);
  for (MorId m : subs) {
    for (MorId n : subs) {
      if (n <= m) continue;
      Diagram d = matching_diagram(mc, 3, {m, n});
      auto col = colimit(c, d);
      REQUIRE(col);
      std::set<int> join = oracle::image(fx.graphs[m]);
      for (int v : oracle::image(fx.graphs[n])) join.insert(v);
      CHECK(oracle::size(c, col->apex) == static_cast<int>(join.size()));
      for (ObjId apex = 0; apex < c.object_count(); ++apex)
        for (const Cocone& k : cocones_at(c, d, apex)) CHECK(count_mediators(c, *col, k) == 1);
    }
  }
}

TEST_CASE("compose throws on non-composable input") {
  FinCategory c = parallel_pair(false);
  CHECK_THROWS_AS(c.compose(2, 3), InvalidArgument);
}

TEST_CASE("isomorphism search") {
  FinCategory a = build_finset_mcat(2, MonicClass::Injections).mc.base();
  auto iso = find_isomorphism(a, a);
  REQUIRE(iso);
  CHECK(check_functor(a, a, *iso).ok());
  CHECK_FALSE(find_isomorphism(a, build_finset_p(2).category.base()));
}
