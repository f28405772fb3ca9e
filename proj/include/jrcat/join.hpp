#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "jrcat/restriction.hpp"

namespace jrcat {

/// A pairwise-compatible set of parallel maps A → B (sorted, no repeats).
class CompatibleFamily {
 public:
  /// Throws IncompatibleFamily if two members are not compatible and
  /// InvalidArgument if a member is not in hom(a, b).
  static CompatibleFamily make(const RestrictionCategory& x, ObjId a, ObjId b,
                               std::vector<MorId> members);

  ObjId source() const { return source_; }
  ObjId target() const { return target_; }
  const std::vector<MorId>& members() const { return members_; }

 private:
  ObjId source_ = kNone;
  ObjId target_ = kNone;
  std::vector<MorId> members_;
};

std::vector<MorId> upper_bounds(const RestrictionCategory& x, const CompatibleFamily& s);

/// Least upper bound in the hom order, found by scanning hom(A, B).
std::optional<MorId> join(const RestrictionCategory& x, const CompatibleFamily& s);

/// Calls `visit` on every compatible subset of hom(a, b) with at most
/// `max_size` members (negative = unbounded), the empty family included.
/// Subsets come out in lexicographic order of their sorted member lists.
void for_each_compatible_family(const RestrictionCategory& x, ObjId a, ObjId b, int max_size,
                                const std::function<void(const std::vector<MorId>&)>& visit);

struct JoinCheckOptions {
  int max_family = -1;
};

/// Tags (ids are the family members, sorted; detail names the hom-set):
///   JOIN-MISSING S     no least upper bound
///   J1 S               bar of the join is not the join of the bars
///   J2 g S             (⋁S)∘g differs from ⋁(s∘g)
///   POSTCOMP f S       f∘(⋁S) differs from ⋁(f∘s); only reported when J1
///                      and J2 pass, since it then points at a bug here
LawReport check_join_axioms(const RestrictionCategory& x, const JoinCheckOptions& options = {});

/// True iff F(⋁S) = ⋁F(S) for every non-empty compatible S whose join
/// exists in the source. The empty family is skipped: in a source that is
/// not itself a join restriction category its lub is an accident of a
/// one-element hom-set. Throws NotAFunctor / NotARestrictionFunctor first if F is not
/// one.
bool is_join_restriction_functor(const RestrictionCategory& from, const RestrictionCategory& to,
                                 const Functor& f, const JoinCheckOptions& options = {});

}  // namespace jrcat
