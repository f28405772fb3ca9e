#pragma once

#include <vector>

#include "jrcat/site.hpp"

namespace jrcat {

/// P⁺(a) = matching families for P on the least covering sieve of a. In a
/// finite site that sieve refines every other cover, so the colimit over
/// covers is reached there.
struct PlusConstruction {
  Presheaf presheaf;
  /// x ↦ (x·s)_s.
  NatTrans unit;
  std::vector<Sieve> sieve;
  std::vector<std::vector<MatchingFamily>> families;
};

PlusConstruction plus_construction(const FinCategory& c, const Presheaf& p, const Topology& j);
/// α⁺ between two plus constructions over the same topology.
NatTrans plus_map(const FinCategory& c, const PlusConstruction& from, const PlusConstruction& to,
                  const NatTrans& alpha);

struct Sheafification {
  PlusConstruction first;
  PlusConstruction second;
  const Presheaf& sheaf() const { return second.presheaf; }
  /// P → P⁺ → P⁺⁺.
  NatTrans unit;
};

Sheafification sheafify(const FinCategory& c, const Presheaf& p, const Topology& j);
/// a(α): a(P) ⇒ a(Q).
NatTrans sheafify_map(const FinCategory& c, const Sheafification& from, const Sheafification& to,
                      const NatTrans& alpha);
/// True iff the unit P → a(P) is bijective.
bool unit_is_iso(const Sheafification& s);

/// μ ∈ M_Sh: both ends are sheaves (decided through the sheafification
/// unit) and μ ∈ M_PSh.
bool m_sh_member(const MCategory& mc, const Topology& j, const Presheaf& p, const Presheaf& q,
                 const NatTrans& mu);

}  // namespace jrcat
