#include "doctest.h"
#include "jrcat/bridge.hpp"
#include "jrcat/errors.hpp"
#include "jrcat/fixtures.hpp"
#include "jrcat/sheafify.hpp"
#include "oracles.hpp"

using namespace jrcat;

namespace {

struct Site {
  FunctionFixture fx = build_finset_mcat(2, MonicClass::Injections);
  ParCategory pc = par(fx.mc);
  Topology j = generate_topology(fx.mc);
  const FinCategory& c() const { return fx.mc.base(); }
};

const Site& site() {
  static const Site s;
  return s;
}

std::vector<Presheaf> sheaves(const Site& s) {
  const FinCategory& c = s.c();
  return {representable(c, 0), representable(c, 1), representable(c, 2), terminal_presheaf(c),
          sigma_classifier(s.fx.mc).sigma, sheafify(c, constant_presheaf(c, 2), s.j).sheaf()};
}

// Partial function X ⇀ 2 behind a partial section (m, s) of y(2).
Graph section_graph(const Site& s, const PartialSection& x) {
  const FinCategory& c = s.c();
  MorId f = c.hom(x.apex, 2)[x.s];
  Graph out(oracle::size(c, c.tgt(x.m)), -1);
  for (int k = 0; k < oracle::size(c, x.apex); ++k) out[s.fx.graphs[x.m][k]] = s.fx.graphs[f][k];
  return out;
}

}  // namespace

TEST_CASE("partial sections") {
  const Site& s = site();
  const FinCategory& c = s.c();
  TildePresheaf empty = f_tilde(s.fx.mc, s.pc, constant_presheaf(c, 0));
  for (ObjId a = 0; a < c.object_count(); ++a) CHECK(empty.rp.base.size(a) == 0);

  for (const Presheaf& p : sheaves(s)) {
    TildePresheaf t = f_tilde(s.fx.mc, s.pc, p);
    CHECK(check_presheaf(s.pc.base(), t.rp.base).ok());
    CHECK(check_rp_axioms(s.pc.category(), t.rp).ok());
  }
  CHECK(check_rp_axioms(s.pc.category(), f_tilde(s.fx.mc, s.pc, constant_presheaf(c, 2)).rp).ok());

  for (ObjId d = 0; d < c.object_count(); ++d) {
    TildePresheaf t = f_tilde(s.fx.mc, s.pc, representable(c, d));
    JoinRestrictionPresheaf y = yoneda_jr(s.pc.category(), d);
    NatIsoOptions opt;
    opt.bar_from = &t.rp.bar;
    opt.bar_to = &y.rp.bar;
    CHECK(find_natural_iso(s.pc.base(), t.rp.base, y.rp.base, opt));
  }
}

TEST_CASE("element order of partial sections is the span order") {
  const Site& s = site();
  const FinCategory& c = s.c();
  TildePresheaf t = f_tilde(s.fx.mc, s.pc, representable(c, 2));
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (SecId u = 0; u < t.rp.base.size(a); ++u) {
      const PartialSection& pu = t.sections[a][u];
      MorId p = s.pc.find(c, {pu.apex, pu.m, c.hom(pu.apex, 2)[pu.s]});
      for (SecId v = 0; v < t.rp.base.size(a); ++v) {
        const PartialSection& pv = t.sections[a][v];
        MorId q = s.pc.find(c, {pv.apex, pv.m, c.hom(pv.apex, 2)[pv.s]});
        CHECK(element_leq(s.pc.category(), t.rp, {a, u}, {a, v}) == par_leq_oracle(s.fx.mc, s.pc, p, q));
      }
    }
  }
}

TEST_CASE("total sections") {
  const Site& s = site();
  const FinCategory& c = s.c();
  for (const Presheaf& p : sheaves(s)) {
    DotPresheaf d = g_dot(s.pc, c, f_tilde(s.fx.mc, s.pc, p).rp);
    CHECK(find_natural_iso(c, d.presheaf, p));
  }
  for (ObjId a = 0; a < c.object_count(); ++a) {
    DotPresheaf d = g_dot(s.pc, c, yoneda_jr(s.pc.category(), a).rp);
    CHECK(find_natural_iso(c, d.presheaf, representable(c, a)));
  }
  // With every bar the identity, nothing is dropped.
  RestrictionPresheaf all{constant_presheaf(s.pc.base(), 2), {}};
  for (ObjId a = 0; a < c.object_count(); ++a) all.bar.push_back({s.pc.base().identity(a), s.pc.base().identity(a)});
  Functor embed{{0, 1, 2}, s.pc.embedding()};
  CHECK(g_dot(s.pc, c, all).presheaf.action == restrict_along(c, embed, all.base).action);
}

TEST_CASE("sheaves give join restriction presheaves") {
  const Site& s = site();
  const FinCategory& c = s.c();
  for (const Presheaf& p : sheaves(s)) {
    SheafTransfer t = sheaf_to_jrp(s.fx.mc, s.pc, s.j, p);
    // JRP-LUB compares the stored recipe join with the searched lub.
    CHECK(check_jrp_axioms(s.pc.category(), t.jrp).ok());
    for (ObjId a = 0; a < c.object_count(); ++a) {
      for (SecId x = 0; x < t.jrp.rp.base.size(a); ++x) CHECK(*t.jrp.join(a, {x}) == x);
      SecId least = *t.jrp.join(a, {});
      CHECK(t.tilde.sections[a][least].apex == 0);
    }
  }
  CHECK_THROWS_AS(sheaf_to_jrp(s.fx.mc, s.pc, s.j, constant_presheaf(c, 2)), NotASheaf);

  // Partial maps into 2 glue by union of graphs.
  SheafTransfer t = sheaf_to_jrp(s.fx.mc, s.pc, s.j, representable(c, 2));
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for_each_compatible_sections(s.pc.category(), t.jrp.rp, a, -1, [&](const std::vector<SecId>& family) {
      std::vector<Graph> graphs;
      for (SecId x : family) graphs.push_back(section_graph(s, t.tilde.sections[a][x]));
      CHECK(section_graph(s, t.tilde.sections[a][*t.jrp.join(a, family)]) ==
            oracle::graph_union(graphs, oracle::size(c, a)));
    });
  }
}

TEST_CASE("join restriction presheaves give sheaves") {
  const Site& s = site();
  const FinCategory& c = s.c();
  std::vector<JoinRestrictionPresheaf> inputs;
  for (ObjId a = 0; a < c.object_count(); ++a) inputs.push_back(yoneda_jr(s.pc.category(), a));
  for (const Presheaf& p : sheaves(s)) inputs.push_back(sheaf_to_jrp(s.fx.mc, s.pc, s.j, p).jrp);
  for (const JoinRestrictionPresheaf& r : inputs) {
    SheafCertificate cert = jrp_to_sheaf(s.fx.mc, s.pc, s.j, r);
    CHECK(cert.sheaf);
    CHECK(cert.formula_matches);
    CHECK_FALSE(cert.records.empty());
    CHECK(is_sheaf(c, cert.dot.presheaf, s.j));
    for (const AmalgamationRecord& rec : cert.records) {
      REQUIRE(rec.searched.size() == 1);
      CHECK(rec.formula == rec.searched[0]);
      for (std::size_t i = 0; i < rec.sieve.size(); ++i)
        CHECK(cert.dot.presheaf.act(rec.sieve[i], rec.formula) == rec.family[i]);
      if (rec.sieve == maximal_sieve(c, rec.object)) {
        auto at = std::find(rec.sieve.begin(), rec.sieve.end(), c.identity(rec.object)) - rec.sieve.begin();
        CHECK(rec.formula == rec.family[at]);
      }
    }
  }
}

TEST_CASE("round trips") {
  const Site& s = site();
  const FinCategory& c = s.c();
  for (const Presheaf& p : sheaves(s)) {
    TransferReport r = roundtrip_sheaf(s.fx.mc, s.pc, s.j, p, "p");
    CHECK(r.ok());
    CHECK(r.forward);
    CHECK(r.backward);
    CHECK(r.checks.at("M_PSh subobjects are sheaves"));
  }
  for (ObjId a = 0; a < c.object_count(); ++a) {
    TransferReport r = roundtrip_jrp(s.fx.mc, s.pc, s.j, yoneda_jr(s.pc.category(), a), "y");
    CHECK(r.ok());
    CHECK(r.forward);
  }
  JoinRestrictionPresheaf broken = yoneda_jr(s.pc.category(), 2);
  auto& joins = broken.joins[2];
  for (auto& [family, j] : joins)
    if (family.size() == 2) {
      j = family[0];
      break;
    }
  TransferReport rb = roundtrip_jrp(s.fx.mc, s.pc, s.j, broken, "broken");
  CHECK_FALSE(rb.ok());
  CHECK_FALSE(rb.checks.at("input is a join restriction presheaf"));

  TransferReport bad = roundtrip_sheaf(s.fx.mc, s.pc, s.j, constant_presheaf(c, 2), "const2");
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.checks.at("input is a sheaf"));
}

TEST_CASE("cocompletion unit") {
  UnitReport trivial = cocompletion_unit(build_trivial());
  CHECK(trivial.ok());
  UnitReport r = cocompletion_unit(build_finset_p(2).category);
  CHECK(r.ok());
  REQUIRE(r.objects.size() == 3);
  for (const UnitObjectResult& u : r.objects) {
    CHECK(u.representable_is_sheaf);
    CHECK(u.route_jrp_ok);
    CHECK(u.iso);
    CHECK(u.natural_in_total_maps);
  }
}
