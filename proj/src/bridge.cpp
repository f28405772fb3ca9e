#include "jrcat/bridge.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "jrcat/errors.hpp"
#include "jrcat/karoubi.hpp"

namespace jrcat {

PartialSection canonical_partial_section(const FinCategory& c, const Presheaf& p,
                                         const PartialSection& x) {
  PartialSection best = x;
  for (MorId phi : c.into(x.apex)) {
    if (!c.is_iso(phi)) continue;
    PartialSection candidate{c.src(phi), c.compose(x.m, phi), p.act(phi, x.s)};
    if (candidate < best) best = candidate;
  }
  return best;
}

SecId TildePresheaf::find(ObjId a, const PartialSection& canonical) const {
  const auto& row = sections.at(a);
  auto it = std::lower_bound(row.begin(), row.end(), canonical);
  if (it == row.end() || *it != canonical) throw InvariantError("partial section not enumerated");
  return static_cast<SecId>(it - row.begin());
}

TildePresheaf f_tilde(const MCategory& mc, const ParCategory& pc, const Presheaf& p) {
  const FinCategory& c = mc.base();
  TildePresheaf out;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    std::set<PartialSection> found;
    for (MorId m : c.into(a)) {
      if (!mc.in_m(m)) continue;
      for (SecId s = 0; s < p.size(c.src(m)); ++s)
        found.insert(canonical_partial_section(c, p, {c.src(m), m, s}));
    }
    out.sections.emplace_back(found.begin(), found.end());
    out.rp.base.sizes.push_back(static_cast<int>(found.size()));
    std::vector<std::string> names;
    std::vector<MorId> bars;
    for (const PartialSection& x : found) {
      names.push_back("[" + c.morphism_name(x.m) + "|" + p.label(x.apex, x.s) + "]");
      bars.push_back(pc.find(c, {x.apex, x.m, x.m}));
    }
    out.rp.base.labels.push_back(std::move(names));
    out.rp.bar.push_back(std::move(bars));
  }
  const FinCategory& pb = pc.base();
  for (MorId q = 0; q < pb.morphism_count(); ++q) {
    // q = (n, g): Y ⇀ X acts P̃(X) → P̃(Y).
    const Span& span = pc.span(q);
    const ObjId x = pb.tgt(q);
    const ObjId y = pb.src(q);
    std::vector<SecId> row;
    for (const PartialSection& e : out.sections[x]) {
      const auto& pull = mc.pullback_of(e.m, span.f);
      if (!pull || !mc.in_m(pull->along)) throw InvariantError("f_tilde: missing M-pullback");
      PartialSection moved{pull->apex, c.compose(span.m, pull->along), p.act(pull->over, e.s)};
      row.push_back(out.find(y, canonical_partial_section(c, p, moved)));
    }
    out.rp.base.action.push_back(std::move(row));
  }
  return out;
}

NatTrans tilde_map(const MCategory& mc, const Presheaf& q, const TildePresheaf& from,
                   const TildePresheaf& to, const NatTrans& alpha) {
  const FinCategory& c = mc.base();
  NatTrans out;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    std::vector<SecId> row;
    for (const PartialSection& e : from.sections[a]) {
      PartialSection image{e.apex, e.m, alpha.at(e.apex, e.s)};
      row.push_back(to.find(a, canonical_partial_section(c, q, image)));
    }
    out.components.push_back(std::move(row));
  }
  return out;
}

DotPresheaf g_dot(const ParCategory& pc, const FinCategory& c, const RestrictionPresheaf& p) {
  DotPresheaf out;
  std::vector<std::vector<SecId>> position;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    const MorId one = pc.base().identity(a);
    std::vector<SecId> kept;
    std::vector<SecId> pos(p.base.size(a), kNone);
    std::vector<std::string> names;
    for (SecId s = 0; s < p.base.size(a); ++s) {
      if (p.bar[a][s] != one) continue;
      pos[s] = static_cast<SecId>(kept.size());
      kept.push_back(s);
      names.push_back(p.base.label(a, s));
    }
    out.presheaf.sizes.push_back(static_cast<int>(kept.size()));
    out.presheaf.labels.push_back(std::move(names));
    out.included.push_back(std::move(kept));
    position.push_back(std::move(pos));
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const MorId total = pc.embed(f);
    std::vector<SecId> row;
    for (SecId s : out.included[c.tgt(f)]) {
      SecId v = position[c.src(f)][p.base.act(total, s)];
      if (v == kNone) throw InvariantError("g_dot: a total map moved a total section out");
      row.push_back(v);
    }
    out.presheaf.action.push_back(std::move(row));
  }
  return out;
}

namespace {

std::string describe_failure(const FinCategory& c, const SheafFailure& f) {
  std::ostringstream os;
  os << "not a sheaf: at object " << c.object_name(f.object) << ", sieve {";
  for (std::size_t i = 0; i < f.sieve.size(); ++i) os << (i ? ", " : "") << c.morphism_name(f.sieve[i]);
  os << "}, family (";
  for (std::size_t i = 0; i < f.family.size(); ++i) os << (i ? ", " : "") << f.family[i];
  os << ") has " << f.amalgamations << " amalgamations";
  return os.str();
}

}  // namespace

SheafTransfer sheaf_to_jrp(const MCategory& mc, const ParCategory& pc, const Topology& j,
                           const Presheaf& p, int max_family) {
  const FinCategory& c = mc.base();
  SheafVerdict verdict = check_sheaf(c, p, j);
  if (!verdict.sheaf) throw NotASheaf(describe_failure(c, *verdict.failure));
  SheafTransfer out{f_tilde(mc, pc, p), {}};
  out.jrp.rp = out.tilde.rp;
  out.jrp.joins.resize(c.object_count());
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for_each_compatible_sections(pc.category(), out.tilde.rp, x, max_family,
                                 [&](const std::vector<SecId>& family) {
      std::vector<MorId> ms;
      for (SecId e : family) ms.push_back(out.tilde.sections[x][e].m);
      MatchingJoin mj = matching_join(mc, x, ms);
      if (!mj.colimit || !mj.induced_in_m)
        throw InvariantError("sheaf_to_jrp: matching colimit missing or outside M");
      const ObjId u = mj.colimit->apex;
      SecId gamma = kNone;
      for (SecId g = 0; g < p.size(u); ++g) {
        bool glues = true;
        for (std::size_t i = 0; i < family.size() && glues; ++i)
          glues = p.act(mj.colimit->legs[i], g) == out.tilde.sections[x][family[i]].s;
        if (!glues) continue;
        if (gamma != kNone) throw InvariantError("sheaf_to_jrp: amalgamation is not unique");
        gamma = g;
      }
      if (gamma == kNone) throw InvariantError("sheaf_to_jrp: family has no amalgamation");
      out.jrp.joins[x][family] =
          out.tilde.find(x, canonical_partial_section(c, p, {u, mj.induced, gamma}));
    });
  }
  return out;
}

SheafCertificate jrp_to_sheaf(const MCategory& mc, const ParCategory& pc, const Topology& j,
                              const JoinRestrictionPresheaf& r) {
  const FinCategory& c = mc.base();
  SheafCertificate cert;
  cert.dot = g_dot(pc, c, r.rp);
  cert.formula_matches = true;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const MorId one = pc.base().identity(x);
    for (const Sieve& s : j.covers[x]) {
      for (const MatchingFamily& family : matching_families(c, cert.dot.presheaf, s)) {
        AmalgamationRecord rec{x, s, family, kNone, {}};
        std::vector<SecId> pieces;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (!mc.in_m(s[i])) continue;
          const ObjId a = c.src(s[i]);
          const MorId back = pc.find(c, {a, s[i], c.identity(a)});
          pieces.push_back(r.rp.base.act(back, cert.dot.included[a][family[i]]));
        }
        std::sort(pieces.begin(), pieces.end());
        pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
        if (auto joined = r.join(x, pieces); joined && r.rp.bar[x][*joined] == one) {
          const auto& incl = cert.dot.included[x];
          rec.formula = static_cast<SecId>(std::find(incl.begin(), incl.end(), *joined) - incl.begin());
        }
        rec.searched = amalgamations(c, cert.dot.presheaf, x, s, family);
        if (rec.searched.size() != 1 || rec.searched.front() != rec.formula)
          cert.formula_matches = false;
        cert.records.push_back(std::move(rec));
      }
    }
  }
  cert.sheaf = is_sheaf(c, cert.dot.presheaf, j);
  return cert;
}

bool TransferReport::ok() const {
  if (!laws.ok() || !forward || !backward) return false;
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

namespace {

bool mutually_inverse(const NatTrans& f, const NatTrans& g, const Presheaf& p, const Presheaf& q) {
  return compose_nat(g, f) == identity_nat(p) && compose_nat(f, g) == identity_nat(q);
}

std::vector<std::vector<MorId>> joins_disagreeing(const RestrictionCategory& x,
                                                  const JoinRestrictionPresheaf& p) {
  std::vector<std::vector<MorId>> bad;
  for (ObjId a = 0; a < static_cast<ObjId>(p.joins.size()); ++a) {
    for (const auto& [family, j] : p.joins[a]) {
      auto lub = element_lub(x, p.rp, a, family);
      if (!lub || *lub != j) {
        std::vector<MorId> ids{a};
        ids.insert(ids.end(), family.begin(), family.end());
        bad.push_back(std::move(ids));
      }
    }
  }
  return bad;
}

}  // namespace

TransferReport roundtrip_sheaf(const MCategory& mc, const ParCategory& pc, const Topology& j,
                               const Presheaf& p, const std::string& name) {
  const FinCategory& c = mc.base();
  TransferReport rep;
  rep.direction = "to-jrp";
  rep.input = name;
  rep.checks["input is a sheaf"] = is_sheaf(c, p, j);
  if (!rep.checks["input is a sheaf"]) return rep;
  SheafTransfer t = sheaf_to_jrp(mc, pc, j, p);
  LawReport jrp_laws = check_jrp_axioms(pc.category(), t.jrp);
  rep.laws.merge(check_rp_axioms(pc.category(), t.jrp.rp));
  rep.laws.merge(jrp_laws);
  for (const auto& ids : joins_disagreeing(pc.category(), t.jrp)) rep.laws.add("RECIPE-LUB", ids);
  rep.checks["join restriction presheaf"] = jrp_laws.ok();
  DotPresheaf back = g_dot(pc, c, t.jrp.rp);
  rep.forward = find_natural_iso(c, p, back.presheaf);
  if (rep.forward) rep.backward = inverse_nat(*rep.forward, back.presheaf);
  rep.checks["round trip isomorphic"] =
      rep.forward && mutually_inverse(*rep.forward, *rep.backward, p, back.presheaf) &&
      check_natural(c, p, back.presheaf, *rep.forward).ok();
  bool subs_ok = true;
  if (auto subs = all_subpresheaves(c, p)) {
    for (const SubPresheaf& sub : *subs) {
      if (m_psh_member(mc, sub.presheaf, p, sub.inclusion) && !is_sheaf(c, sub.presheaf, j))
        subs_ok = false;
    }
  } else {
    subs_ok = false;
  }
  rep.checks["M_PSh subobjects are sheaves"] = subs_ok;
  return rep;
}

TransferReport roundtrip_jrp(const MCategory& mc, const ParCategory& pc, const Topology& j,
                             const JoinRestrictionPresheaf& r, const std::string& name) {
  TransferReport rep;
  rep.direction = "to-sheaf";
  rep.input = name;
  LawReport input_laws = check_rp_axioms(pc.category(), r.rp);
  input_laws.merge(check_jrp_axioms(pc.category(), r));
  rep.checks["input is a join restriction presheaf"] = input_laws.ok();
  rep.laws.merge(input_laws);
  if (!input_laws.ok()) return rep;
  SheafCertificate cert = jrp_to_sheaf(mc, pc, j, r);
  rep.checks["total sections form a sheaf"] = cert.sheaf;
  rep.checks["formula amalgamation is the unique one"] = cert.formula_matches;
  if (!cert.sheaf) return rep;
  SheafTransfer back = sheaf_to_jrp(mc, pc, j, cert.dot.presheaf);
  NatIsoOptions opts;
  opts.bar_from = &r.rp.bar;
  opts.bar_to = &back.tilde.rp.bar;
  rep.forward = find_natural_iso(pc.base(), r.rp.base, back.tilde.rp.base, opts);
  if (rep.forward) rep.backward = inverse_nat(*rep.forward, back.tilde.rp.base);
  rep.checks["round trip isomorphic"] =
      rep.forward && mutually_inverse(*rep.forward, *rep.backward, r.rp.base, back.tilde.rp.base) &&
      check_natural(pc.base(), r.rp.base, back.tilde.rp.base, *rep.forward).ok();
  return rep;
}

bool UnitReport::ok() const {
  return !objects.empty() && std::all_of(objects.begin(), objects.end(), [](const UnitObjectResult& o) {
    return o.representable_is_sheaf && o.route_jrp_ok && o.iso && o.natural_in_total_maps;
  });
}

UnitReport cocompletion_unit(const RestrictionCategory& x, int max_family) {
  const FinCategory& base = x.base();
  KaroubiEnvelope k = karoubi_r(x);
  SplitComparison sc = split_comparison(k.category);
  const MCategory& mc = sc.total.mc;
  const FinCategory& c = mc.base();
  const ParCategory& pc = sc.par;
  if (!is_geometric(mc, {max_family}).ok())
    throw InvariantError("cocompletion_unit: total maps of the splitting are not geometric");
  Topology j = generate_topology(mc, max_family);

  const Functor route = compose_functors(sc.functor, k.embedding);
  if (!check_restriction_functor(x, pc.category(), route).ok() ||
      !is_full_and_faithful(base, pc.base(), route))
    throw InvariantError("cocompletion_unit: comparison into Par is not full and faithful");
  // Partial inverse of the route on morphisms, for pulling bars back.
  std::vector<MorId> back(pc.base().morphism_count(), kNone);
  for (MorId f = 0; f < base.morphism_count(); ++f) back[route.on_morphisms[f]] = f;

  UnitReport report;
  std::vector<SheafTransfer> transfers;
  std::vector<Presheaf> reps;
  std::vector<RestrictionPresheaf> routes;
  for (ObjId a = 0; a < base.object_count(); ++a) {
    const ObjId d = k.embedding.on_objects[a];
    UnitObjectResult res;
    res.object = a;
    reps.push_back(representable(c, d));
    res.representable_is_sheaf = is_sheaf(c, reps.back(), j);
    if (!res.representable_is_sheaf) throw InvariantError("cocompletion_unit: representable is not a sheaf");
    transfers.push_back(sheaf_to_jrp(mc, pc, j, reps.back(), max_family));
    const SheafTransfer& t = transfers.back();
    res.route_jrp_ok = check_jrp_axioms(pc.category(), t.jrp, {max_family}).ok();

    RestrictionPresheaf r;
    r.base = restrict_along(base, route, t.tilde.rp.base);
    for (ObjId b = 0; b < base.object_count(); ++b) {
      std::vector<MorId> bars;
      for (MorId e : t.tilde.rp.bar[route.on_objects[b]]) bars.push_back(back[e]);
      r.bar.push_back(std::move(bars));
    }
    routes.push_back(r);

    JoinRestrictionPresheaf direct = yoneda_jr(x, a, max_family);
    NatIsoOptions opts;
    opts.bar_from = &direct.rp.bar;
    opts.bar_to = &r.bar;
    const SecId unit = representable_section(base, a, base.identity(a));
    const SecId route_unit = t.tilde.find(d, {d, c.identity(d), representable_section(c, d, c.identity(d))});
    opts.pins.push_back({a, unit, route_unit});
    res.iso = find_natural_iso(base, direct.rp.base, r.base, opts);
    report.objects.push_back(std::move(res));
  }

  for (auto& res : report.objects) res.natural_in_total_maps = res.iso.has_value();
  for (MorId f = 0; f < base.morphism_count(); ++f) {
    if (!is_total(x, f)) continue;
    const ObjId a = base.src(f);
    const ObjId a2 = base.tgt(f);
    if (!report.objects[a].iso || !report.objects[a2].iso) continue;
    const MorId kf = k.embedding.on_morphisms[f];
    const MorId tf = sc.total.total.index[kf];
    if (tf == kNone) throw InvariantError("cocompletion_unit: total map left Total(K)");
    NatTrans yf = yoneda_nat(c, tf);
    NatTrans on_par = tilde_map(mc, reps[a2], transfers[a].tilde, transfers[a2].tilde, yf);
    NatTrans route_f;
    for (ObjId b = 0; b < base.object_count(); ++b)
      route_f.components.push_back(on_par.components[route.on_objects[b]]);
    NatTrans lhs = compose_nat(*report.objects[a2].iso, yoneda_nat(base, f));
    NatTrans rhs = compose_nat(route_f, *report.objects[a].iso);
    if (lhs != rhs) {
      report.objects[a].natural_in_total_maps = false;
      report.objects[a2].natural_in_total_maps = false;
    }
  }
  return report;
}

}  // namespace jrcat
