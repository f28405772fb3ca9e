#include "jrcat/sheafify.hpp"

#include <algorithm>

#include "jrcat/errors.hpp"

namespace jrcat {

namespace {

SecId family_index(const std::vector<MatchingFamily>& families, const MatchingFamily& x) {
  auto it = std::lower_bound(families.begin(), families.end(), x);
  if (it == families.end() || *it != x) throw InvariantError("plus construction: family not found");
  return static_cast<SecId>(it - families.begin());
}

std::size_t position(const Sieve& s, MorId f) {
  auto it = std::lower_bound(s.begin(), s.end(), f);
  if (it == s.end() || *it != f) throw InvariantError("plus construction: least covers do not nest");
  return static_cast<std::size_t>(it - s.begin());
}

}  // namespace

PlusConstruction plus_construction(const FinCategory& c, const Presheaf& p, const Topology& j) {
  PlusConstruction out;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    out.sieve.push_back(least_covering_sieve(c, j, a));
    out.families.push_back(matching_families(c, p, out.sieve.back()));
    out.presheaf.sizes.push_back(static_cast<int>(out.families.back().size()));
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const ObjId a = c.tgt(f);
    const ObjId b = c.src(f);
    std::vector<SecId> row;
    for (const MatchingFamily& x : out.families[a]) {
      MatchingFamily y;
      for (MorId h : out.sieve[b]) y.push_back(x[position(out.sieve[a], c.compose(f, h))]);
      row.push_back(family_index(out.families[b], y));
    }
    out.presheaf.action.push_back(std::move(row));
  }
  for (ObjId a = 0; a < c.object_count(); ++a) {
    std::vector<SecId> row;
    for (SecId x = 0; x < p.size(a); ++x) {
      MatchingFamily y;
      for (MorId s : out.sieve[a]) y.push_back(p.act(s, x));
      row.push_back(family_index(out.families[a], y));
    }
    out.unit.components.push_back(std::move(row));
  }
  return out;
}

NatTrans plus_map(const FinCategory& c, const PlusConstruction& from, const PlusConstruction& to,
                  const NatTrans& alpha) {
  NatTrans out;
  for (std::size_t a = 0; a < from.families.size(); ++a) {
    if (from.sieve[a] != to.sieve[a]) throw InvalidArgument("plus_map: different topologies");
    const Sieve& s = from.sieve[a];
    std::vector<SecId> row;
    for (const MatchingFamily& x : from.families[a]) {
      MatchingFamily y;
      for (std::size_t i = 0; i < s.size(); ++i) y.push_back(alpha.at(c.src(s[i]), x[i]));
      row.push_back(family_index(to.families[a], y));
    }
    out.components.push_back(std::move(row));
  }
  return out;
}

Sheafification sheafify(const FinCategory& c, const Presheaf& p, const Topology& j) {
  Sheafification out;
  out.first = plus_construction(c, p, j);
  out.second = plus_construction(c, out.first.presheaf, j);
  out.unit = compose_nat(out.second.unit, out.first.unit);
  return out;
}

NatTrans sheafify_map(const FinCategory& c, const Sheafification& from, const Sheafification& to,
                      const NatTrans& alpha) {
  return plus_map(c, from.second, to.second, plus_map(c, from.first, to.first, alpha));
}

bool unit_is_iso(const Sheafification& s) {
  return is_bijective(s.unit, s.sheaf());
}

bool m_sh_member(const MCategory& mc, const Topology& j, const Presheaf& p, const Presheaf& q,
                 const NatTrans& mu) {
  const FinCategory& c = mc.base();
  if (!m_psh_member(mc, p, q, mu)) return false;
  return unit_is_iso(sheafify(c, p, j)) && unit_is_iso(sheafify(c, q, j));
}

}  // namespace jrcat
