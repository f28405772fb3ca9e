#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "jrcat/presheaf.hpp"
#include "jrcat/restriction.hpp"

namespace jrcat {

/// A presheaf on a restriction category with element restrictions x ↦ x̄.
struct RestrictionPresheaf {
  Presheaf base;
  /// bar[a][x] ∈ hom(a, a).
  std::vector<std::vector<MorId>> bar;
};

/// Tags (ids start with the object and section):
///   RP-SHAPE           bar table has the wrong shape or type
///   RP0 a x            x̄ is not a restriction idempotent
///   RP1 a x            x·x̄ ≠ x
///   RP2 a x f          (x·f̄)‾ ≠ x̄∘f̄
///   RP3 a x g          x̄∘g ≠ g∘(x·g)‾
///   RP-L1 a x g        ḡ∘(x·g)‾ ≠ (x·g)‾   (consequence; a sanity check)
///   RP-L2 a x g        (x̄∘g)‾ ≠ (x·g)‾     (consequence; a sanity check)
LawReport check_rp_axioms(const RestrictionCategory& x, const RestrictionPresheaf& p);

struct Element {
  ObjId object = kNone;
  SecId section = kNone;
};

/// u ≤ v iff u = v·ū. Throws InvalidArgument for elements over different
/// objects.
bool element_leq(const RestrictionCategory& x, const RestrictionPresheaf& p, Element u, Element v);
/// u·v̄ = v·ū.
bool element_compatible(const RestrictionCategory& x, const RestrictionPresheaf& p, Element u,
                        Element v);

/// Every pairwise-compatible subset of P(a), empty set included, with at
/// most `max_size` members (negative = unbounded).
void for_each_compatible_sections(const RestrictionCategory& x, const RestrictionPresheaf& p,
                                  ObjId a, int max_size,
                                  const std::function<void(const std::vector<SecId>&)>& visit);

/// Least upper bound in the element order of P(a), by scan.
std::optional<SecId> element_lub(const RestrictionCategory& x, const RestrictionPresheaf& p,
                                 ObjId a, const std::vector<SecId>& family);

/// A restriction presheaf with a join for each compatible subset (keys are
/// sorted section lists).
struct JoinRestrictionPresheaf {
  RestrictionPresheaf rp;
  std::vector<std::map<std::vector<SecId>, SecId>> joins;

  std::optional<SecId> join(ObjId a, const std::vector<SecId>& family) const;
};

/// Joins located by lub search; families without a lub are left out.
JoinRestrictionPresheaf with_searched_joins(const RestrictionCategory& x,
                                            const RestrictionPresheaf& p, int max_family = -1);

struct JrpCheckOptions {
  int max_family = -1;
};

/// Tags:
///   JRP-MISSING a S     no stored join
///   JRP-LUB a S         stored join is not the least upper bound
///   JRP1 a S            bar of the join ≠ join of the bars
///   JRP2 a g S          (⋁S)·g ≠ ⋁(s·g)
///   JRP-ACT a x T       x·(⋁T) ≠ ⋁(x·t) for compatible maps T into a
LawReport check_jrp_axioms(const RestrictionCategory& x, const JoinRestrictionPresheaf& p,
                           const JrpCheckOptions& options = {});

/// Base category plus a fresh object ⋆ (last id) with hom(a, ⋆) = P(a).
/// Morphism ids: the base's, then each (a, x) in order, then 1_⋆.
RestrictionCategory collage(const RestrictionCategory& x, const RestrictionPresheaf& p);

/// ᾱ_a(x) = x·(α_a(x))‾. Throws NotNatural.
NatTrans hom_restriction(const RestrictionCategory& x, const RestrictionPresheaf& p,
                         const RestrictionPresheaf& q, const NatTrans& alpha);
/// α ≤ β iff α = β∘ᾱ.
bool nat_leq(const RestrictionCategory& x, const RestrictionPresheaf& p,
             const RestrictionPresheaf& q, const NatTrans& alpha, const NatTrans& beta);
bool nat_compatible(const RestrictionCategory& x, const RestrictionPresheaf& p,
                    const RestrictionPresheaf& q, const NatTrans& alpha, const NatTrans& beta);

/// Componentwise join. Throws IncompatibleFamily, or InvariantError when Q
/// lacks a needed join.
NatTrans nat_join(const RestrictionCategory& x, const RestrictionPresheaf& p,
                  const JoinRestrictionPresheaf& q, const std::vector<NatTrans>& family);

/// X(−, a) with bars and joins inherited from x.
JoinRestrictionPresheaf yoneda_jr(const RestrictionCategory& x, ObjId a, int max_family = -1);

}  // namespace jrcat
