#include "doctest.h"
#include "jrcat/errors.hpp"
#include "jrcat/fixtures.hpp"
#include "jrcat/join.hpp"
#include "jrcat/par.hpp"
#include "jrcat/rpsh.hpp"
#include "oracles.hpp"

using namespace jrcat;

namespace {

struct Case {
  RestrictionCategory x;
  RestrictionPresheaf p;
};

bool presheaf_side(const Case& k) {
  return check_presheaf(k.x.base(), k.p.base).ok() && check_rp_axioms(k.x, k.p).ok();
}

bool collage_side(const Case& k) {
  RestrictionCategory col = collage(k.x, k.p);
  return validate_category(col.base()).ok() && check_restriction_axioms(col).ok();
}

// Bars all equal to the least restriction idempotent of each object.
RestrictionPresheaf terminal_rp(const RestrictionCategory& x, MorId (*least)(const RestrictionCategory&, ObjId)) {
  RestrictionPresheaf p{terminal_presheaf(x.base()), {}};
  for (ObjId a = 0; a < x.base().object_count(); ++a) p.bar.push_back({least(x, a)});
  return p;
}

MorId least_idempotent(const RestrictionCategory& x, ObjId a) {
  return *join(x, CompatibleFamily::make(x, a, a, {}));
}

RestrictionPresheaf all_identity_bars(const FinCategory& c, Presheaf p) {
  RestrictionPresheaf out{std::move(p), {}};
  for (ObjId a = 0; a < c.object_count(); ++a) out.bar.push_back(std::vector<MorId>(out.base.size(a), c.identity(a)));
  return out;
}

std::vector<Case> positive_cases() {
  std::vector<Case> out;
  RestrictionCategory p2 = build_finset_p(2).category;
  for (ObjId a = 0; a < 3; ++a) out.push_back({p2, yoneda_jr(p2, a).rp});
  out.push_back({p2, terminal_rp(p2, least_idempotent)});
  RestrictionCategory nj = build_nojoin_fixture().category;
  for (ObjId a = 0; a < 2; ++a) out.push_back({nj, yoneda_jr(nj, a).rp});
  RestrictionCategory monoid = build_subset_monoid(2);
  out.push_back({monoid, yoneda_jr(monoid, 0).rp});
  out.push_back({monoid, terminal_rp(monoid, least_idempotent)});
  ParCategory pc = par(build_finset_mcat(2, MonicClass::Injections).mc);
  for (ObjId a = 0; a < 3; ++a) out.push_back({pc.category(), yoneda_jr(pc.category(), a).rp});
  RestrictionCategory total = trivial_restriction(build_finset_mcat(2, MonicClass::Injections).mc.base());
  out.push_back({total, all_identity_bars(total.base(), constant_presheaf(total.base(), 2))});
  out.push_back({total, all_identity_bars(total.base(), representable(total.base(), 2))});
  return out;
}

}  // namespace

TEST_CASE("restriction presheaf axioms") {
  RestrictionCategory x = build_finset_p(2).category;
  for (ObjId a = 0; a < 3; ++a) CHECK(check_rp_axioms(x, yoneda_jr(x, a).rp).ok());
  RestrictionCategory total = trivial_restriction(build_finset_mcat(2, MonicClass::Injections).mc.base());
  CHECK(check_rp_axioms(total, all_identity_bars(total.base(), constant_presheaf(total.base(), 3))).ok());

  RestrictionPresheaf y = yoneda_jr(x, 2).rp;
  MorId swap = *x.base().find_morphism("2->2:10");
  y.bar[2][representable_section(x.base(), 2, x.base().identity(2))] = swap;
  LawReport r = check_rp_axioms(x, y);
  CHECK(r.has("RP0"));
  CHECK(r.has("RP1"));
}

TEST_CASE("element order and compatibility") {
  RestrictionCategory x = build_finset_p(2).category;
  const FinCategory& c = x.base();
  RestrictionPresheaf y = yoneda_jr(x, 2).rp;
  for (SecId s = 0; s < y.base.size(2); ++s) {
    CHECK(element_leq(x, y, {2, s}, {2, s}));
    MorId f = c.hom(2, 2)[s];
    for (SecId t = 0; t < y.base.size(2); ++t) {
      MorId g = c.hom(2, 2)[t];
      CHECK(element_leq(x, y, {2, s}, {2, t}) == leq(x, f, g));
      CHECK(element_compatible(x, y, {2, s}, {2, t}) == compatible(x, f, g));
    }
  }
  SecId a = representable_section(c, 2, *c.find_morphism("2->2:0-"));
  SecId b = representable_section(c, 2, *c.find_morphism("2->2:1-"));
  CHECK_FALSE(element_compatible(x, y, {2, a}, {2, b}));
  CHECK_THROWS_AS(element_leq(x, y, {2, a}, {1, 0}), InvalidArgument);
}

TEST_CASE("join restriction presheaves") {
  RestrictionCategory x = build_finset_p(2).category;
  const FinCategory& c = x.base();
  for (ObjId a = 0; a < 3; ++a) {
    JoinRestrictionPresheaf y = yoneda_jr(x, a);
    CHECK(check_jrp_axioms(x, y).ok());
    for (ObjId b = 0; b < 3; ++b) {
      for (SecId s = 0; s < y.rp.base.size(b); ++s) CHECK(*y.join(b, {s}) == s);
      SecId least = *y.join(b, {});
      MorId least_map = c.hom(b, a)[least];
      CHECK(oracle::domain(build_finset_p(2).graphs[least_map]).empty());
      CHECK(y.rp.bar[b][least] == least_idempotent(x, b));
    }
  }
  CHECK(check_jrp_axioms(x, with_searched_joins(x, yoneda_jr(x, 2).rp)).ok());

  RestrictionCategory nj = build_nojoin_fixture().category;
  CHECK(check_jrp_axioms(nj, with_searched_joins(nj, yoneda_jr(nj, 1).rp)).has("JRP-MISSING"));
}

TEST_CASE("collage iff restriction presheaf") {
  std::vector<Case> positives = positive_cases();
  CHECK(positives.size() >= 10);
  int discordant = 0;
  for (const Case& k : positives) {
    CHECK(presheaf_side(k));
    discordant += presheaf_side(k) != collage_side(k);
  }

  // Single-field mutants: one bar entry or one action entry changed.
  int mutants = 0;
  int failing = 0;
  for (const Case& k : positives) {
    const FinCategory& c = k.x.base();
    for (ObjId a = 0; a < c.object_count(); ++a) {
      for (SecId s = 0; s < k.p.base.size(a); ++s) {
        for (MorId e : c.hom(a, a)) {
          if (e == k.p.bar[a][s]) continue;
          Case m = k;
          m.p.bar[a][s] = e;
          ++mutants;
          failing += !presheaf_side(m);
          discordant += presheaf_side(m) != collage_side(m);
        }
      }
    }
    for (MorId f = 0; f < c.morphism_count() && f < 6; ++f) {
      for (SecId y = 0; y < k.p.base.size(c.tgt(f)); ++y) {
        if (k.p.base.size(c.src(f)) < 2) continue;
        Case m = k;
        m.p.base.action[f][y] = (m.p.base.action[f][y] + 1) % k.p.base.size(c.src(f));
        ++mutants;
        failing += !presheaf_side(m);
        discordant += presheaf_side(m) != collage_side(m);
      }
    }
  }
  CHECK(mutants >= 10);
  CHECK(failing >= 10);
  CHECK(discordant == 0);

  RestrictionCategory x = build_finset_p(2).category;
  RestrictionPresheaf empty{constant_presheaf(x.base(), 0), std::vector<std::vector<MorId>>(3)};
  RestrictionCategory col = collage(x, empty);
  CHECK(col.base().object_count() == 4);
  CHECK(col.base().morphism_count() == x.base().morphism_count() + 1);
  CHECK(check_restriction_axioms(col).ok());
}

TEST_CASE("transformations between representables") {
  RestrictionCategory x = build_finset_p(2).category;
  const FinCategory& c = x.base();
  JoinRestrictionPresheaf y1 = yoneda_jr(x, 1);
  JoinRestrictionPresheaf y2 = yoneda_jr(x, 2);
  for (MorId f : c.hom(1, 2)) {
    NatTrans alpha = yoneda_nat(c, f);
    CHECK(hom_restriction(x, y1.rp, y2.rp, alpha) == yoneda_nat(c, x.bar(f)));
  }
  MorId total = *c.find_morphism("1->2:0");
  CHECK(hom_restriction(x, y1.rp, y2.rp, yoneda_nat(c, total)) == identity_nat(y1.rp.base));
  NatTrans broken = yoneda_nat(c, total);
  broken.components[2][0] = (broken.components[2][0] + 1) % y2.rp.base.size(2);
  CHECK_THROWS_AS(hom_restriction(x, y1.rp, y2.rp, broken), NotNatural);

  MorId f = *c.find_morphism("2->2:0-");
  MorId g = *c.find_morphism("2->2:-1");
  NatTrans yf = yoneda_nat(c, f);
  NatTrans yg = yoneda_nat(c, g);
  CHECK(nat_compatible(x, y2.rp, y2.rp, yf, yg));
  CHECK(nat_leq(x, y2.rp, y2.rp, yf, yoneda_nat(c, c.identity(2))));
  CHECK(nat_join(x, y2.rp, y2, {yf}) == yf);
  CHECK(nat_join(x, y2.rp, y2, {yf, yg}) == yoneda_nat(c, c.identity(2)));
  CHECK(nat_join(x, y2.rp, y2, {}) == yoneda_nat(c, *c.find_morphism("2->2:--")));
  CHECK_THROWS_AS(nat_join(x, y2.rp, y2, {yf, yoneda_nat(c, *c.find_morphism("2->2:1-"))}),
                  IncompatibleFamily);
}

TEST_CASE("components of transformations preserve order, compatibility and joins") {
  RestrictionCategory x = build_finset_p(2).category;
  for (ObjId a = 1; a < 3; ++a) {
    JoinRestrictionPresheaf p = yoneda_jr(x, a);
    JoinRestrictionPresheaf q = yoneda_jr(x, 2);
    for (const NatTrans& alpha : enumerate_nat_trans(x.base(), p.rp.base, q.rp.base)) {
      for (ObjId b = 0; b < 3; ++b) {
        for_each_compatible_sections(x, p.rp, b, -1, [&](const std::vector<SecId>& s) {
          std::vector<SecId> image;
          for (SecId v : s) image.push_back(alpha.at(b, v));
          for (SecId u : image)
            for (SecId v : image) CHECK(element_compatible(x, q.rp, {b, u}, {b, v}));
          std::sort(image.begin(), image.end());
          image.erase(std::unique(image.begin(), image.end()), image.end());
          CHECK(alpha.at(b, *p.join(b, s)) == *q.join(b, image));
        });
        for (SecId u = 0; u < p.rp.base.size(b); ++u)
          for (SecId v = 0; v < p.rp.base.size(b); ++v)
            if (element_leq(x, p.rp, {b, u}, {b, v}))
              CHECK(element_leq(x, q.rp, {b, alpha.at(b, u)}, {b, alpha.at(b, v)}));
      }
    }
  }
}

TEST_CASE("Yoneda presheaves") {
  RestrictionCategory trivial = build_trivial();
  CHECK(yoneda_jr(trivial, 0).rp.base.sizes == std::vector<int>{1});
  RestrictionCategory x = build_finset_p(2).category;
  CHECK(yoneda_jr(x, 2).rp.base.sizes == std::vector<int>{1, 3, 9});
}
