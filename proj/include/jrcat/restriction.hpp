#pragma once

#include <optional>
#include <vector>

#include "jrcat/core_cat.hpp"
#include "jrcat/report.hpp"

namespace jrcat {

/// A finite category together with a restriction table `f ↦ f̄`.
///
/// The constructor checks that the table is total and well typed
/// (`f̄ : src f → src f`); the axioms themselves are checked by
/// `check_restriction_axioms`, so broken fixtures can still be built.
class RestrictionCategory {
 public:
  RestrictionCategory() = default;
  RestrictionCategory(FinCategory base, std::vector<MorId> bar);

  const FinCategory& base() const { return base_; }
  MorId bar(MorId f) const { return bar_.at(base_.check_morphism(f)); }
  const std::vector<MorId>& bar_table() const { return bar_; }

 private:
  FinCategory base_;
  std::vector<MorId> bar_;
};

/// The trivial restriction structure: every map is total.
RestrictionCategory trivial_restriction(FinCategory c);

/// Exhaustive check of R1–R4 over all composable tuples.
/// Tags: R1 f; R2 f g; R3 g f; R4 h f.
LawReport check_restriction_axioms(const RestrictionCategory& x);

/// `f ≤ g` iff `f = g ∘ f̄`. Throws InvalidArgument on non-parallel input.
bool leq(const RestrictionCategory& x, MorId f, MorId g);
/// `f ⌣ g` iff `f ∘ ḡ = g ∘ f̄`. Throws InvalidArgument on non-parallel input.
bool compatible(const RestrictionCategory& x, MorId f, MorId g);
bool is_total(const RestrictionCategory& x, MorId f);
bool is_restriction_idempotent(const RestrictionCategory& x, MorId e);

/// Wide subcategory of total maps.
struct TotalSubcategory {
  FinCategory category;
  /// Subcategory morphism id → id in the ambient category.
  std::vector<MorId> inclusion;
  /// Ambient id → subcategory id, or kNone for partial maps.
  std::vector<MorId> index;
};

TotalSubcategory total_subcategory(const RestrictionCategory& x);

/// Checks that F is a functor and preserves restrictions.
/// Tags: as check_functor, plus F-BAR f.
LawReport check_restriction_functor(const RestrictionCategory& from,
                                    const RestrictionCategory& to, const Functor& f);

/// A splitting `e = m ∘ r`, `r ∘ m = 1`.
struct Splitting {
  ObjId object = kNone;
  MorId section = kNone;     // m : object → src e
  MorId retraction = kNone;  // r : src e → object
};

/// Smallest-id splitting of an idempotent, if one exists.
std::optional<Splitting> find_splitting(const FinCategory& c, MorId e);

/// Restriction idempotents with no splitting.
std::vector<MorId> unsplit_restriction_idempotents(const RestrictionCategory& x);

}  // namespace jrcat
