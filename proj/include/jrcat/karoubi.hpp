#pragma once

#include <utility>
#include <vector>

#include "jrcat/mcat.hpp"
#include "jrcat/par.hpp"
#include "jrcat/restriction.hpp"

namespace jrcat {

/// Splitting of the restriction idempotents of x.
struct KaroubiEnvelope {
  RestrictionCategory category;
  /// Object id → (A, e).
  std::vector<std::pair<ObjId, MorId>> objects;
  /// Morphism id → the underlying map of x.
  std::vector<MorId> underlying;
  /// A ↦ (A, 1_A); verified full and faithful.
  Functor embedding;
};

/// Objects (A, e) with e a restriction idempotent on A; maps
/// f: (A, e) → (B, e') are f ∈ x(A, B) with f∘e = f and e'∘f = f. The
/// identity on (A, e) is e and restriction is inherited. Throws
/// InvariantError if the result fails to split or the embedding is not
/// full and faithful.
KaroubiEnvelope karoubi_r(const RestrictionCategory& x);

/// Total m with some r such that r∘m = 1 and m∘r = r̄.
bool is_restriction_monic(const RestrictionCategory& x, MorId m);

struct MTotal {
  MCategory mc;
  TotalSubcategory total;
};

/// (Total(x), restriction monics). Throws UnsplitIdempotent naming the
/// first restriction idempotent without a splitting.
MTotal mtotal(const RestrictionCategory& x);

/// The comparison x → Par(MTotal(x)) of a split restriction category:
/// f ↦ (m, f∘m) where m r splits f̄.
struct SplitComparison {
  MTotal total;
  ParCategory par;
  Functor functor;
};

SplitComparison split_comparison(const RestrictionCategory& x);

}  // namespace jrcat
