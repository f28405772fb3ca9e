#pragma once

// Sieves, Grothendieck topologies on finite categories and the sheaf
// condition, plus the two site-level constructions an M-category gives:
// the topology generated by jointly covering M-families and the presheaf
// of M-subobjects.

#include <optional>
#include <set>
#include <vector>

#include "jrcat/mcat.hpp"
#include "jrcat/presheaf.hpp"

namespace jrcat {

/// Morphisms into one object, sorted ascending, closed under precomposition.
using Sieve = std::vector<MorId>;

Sieve maximal_sieve(const FinCategory& c, ObjId a);
/// {f∘h}.
Sieve principal_sieve(const FinCategory& c, MorId f);
Sieve generated_sieve(const FinCategory& c, ObjId a, const std::vector<MorId>& family);
/// f*S = {h | f∘h ∈ S}, a sieve on src f.
Sieve pullback_sieve(const FinCategory& c, const Sieve& s, MorId f);
bool is_sieve(const FinCategory& c, ObjId a, const Sieve& s);
/// Every sieve on `a`, smallest first, then lexicographic.
std::vector<Sieve> all_sieves(const FinCategory& c, ObjId a);

/// Covering sieves stored extensionally.
struct Topology {
  std::vector<std::set<Sieve>> covers;

  bool covers_sieve(ObjId a, const Sieve& s) const { return covers.at(a).count(s) > 0; }
  bool operator==(const Topology&) const = default;
};

/// Closes per-object seed sieves (plus the maximal sieves) under upward
/// closure, pullback and transitivity.
Topology saturate(const FinCategory& c, const std::vector<std::set<Sieve>>& seeds);
/// Only the maximal sieves cover.
Topology minimal_topology(const FinCategory& c);

/// Tags: TOP-MAX a; TOP-UP a; TOP-STABLE f; TOP-TRANS a.
LawReport check_topology(const FinCategory& c, const Topology& j);

/// Intersection of all covering sieves on `a`; in a finite site this is
/// itself covering (checked; InvariantError otherwise).
Sieve least_covering_sieve(const FinCategory& c, const Topology& j, ObjId a);

/// Per object, every family of M-subobject representatives whose join is
/// the top subobject. Throws InvalidArgument when mc is not geometric.
std::vector<std::vector<std::vector<MorId>>> basis_covers(const MCategory& mc, int max_family = -1);

/// Smallest topology in which every sieve generated by a basic cover covers.
Topology generate_topology(const MCategory& mc, int max_family = -1);

/// x_s for s in sieve order.
using MatchingFamily = std::vector<SecId>;

std::vector<MatchingFamily> matching_families(const FinCategory& c, const Presheaf& p,
                                              const Sieve& s);
/// Sections x over `a` with x·s = x_s for all s.
std::vector<SecId> amalgamations(const FinCategory& c, const Presheaf& p, ObjId a,
                                 const Sieve& s, const MatchingFamily& family);

struct SheafFailure {
  ObjId object = kNone;
  Sieve sieve;
  MatchingFamily family;
  int amalgamations = 0;
};

struct SheafVerdict {
  bool separated = true;
  bool sheaf = true;
  /// First family with a number of amalgamations other than one.
  std::optional<SheafFailure> failure;
};

SheafVerdict check_sheaf(const FinCategory& c, const Presheaf& p, const Topology& j);
inline bool is_sheaf(const FinCategory& c, const Presheaf& p, const Topology& j) {
  return check_sheaf(c, p, j).sheaf;
}
inline bool is_separated(const FinCategory& c, const Presheaf& p, const Topology& j) {
  return check_sheaf(c, p, j).separated;
}

/// Σ(a) = Sub_M(a), acting by pullback, with its top elements.
struct SigmaClassifier {
  Presheaf sigma;
  /// subobject[a][x]: the representative monic of section x.
  std::vector<std::vector<MorId>> subobject;
  std::vector<SecId> top;
};

SigmaClassifier sigma_classifier(const MCategory& mc);

/// All χ: Q ⇒ Σ whose pullback of the top is exactly the image of μ.
std::vector<NatTrans> characteristic_maps(const MCategory& mc, const SigmaClassifier& sigma,
                                          const Presheaf& q, const NatTrans& mu);

/// μ: P ↣ Q is in M_PSh when for every q ∈ Q(b) the sieve
/// {f | q·f ∈ im μ} is the image of y(m) for some m ∈ M. Throws
/// InvalidArgument if μ is not natural or not injective.
bool m_psh_member(const MCategory& mc, const Presheaf& p, const Presheaf& q, const NatTrans& mu);

}  // namespace jrcat
