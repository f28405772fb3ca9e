#pragma once

// Finite categories stored as explicit tables, plus the handful of
// universal constructions the rest of the library needs. Everything is
// decided by exhaustive search; fixtures have at most a few hundred
// morphisms.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jrcat/report.hpp"

namespace jrcat {

using ObjId = int;
using MorId = int;
inline constexpr int kNone = -1;

struct Arrow {
  ObjId src = kNone;
  ObjId tgt = kNone;
};

/// A finite category given by its composition table.
///
/// Objects and morphisms are dense ids `0..n-1`. `comp(g, f)` is stored for
/// every pair with `tgt(f) == src(g)`; entries may be `kNone` or wrong in
/// deliberately broken fixtures, which `validate_category` reports. The
/// constructor only checks that the tables have the right shape and that
/// every id is in range.
class FinCategory {
 public:
  FinCategory() = default;
  FinCategory(std::vector<std::string> object_names, std::vector<std::string> morphism_names,
              std::vector<Arrow> arrows, std::vector<MorId> identities,
              std::vector<MorId> comp_table);

  int object_count() const { return static_cast<int>(object_names_.size()); }
  int morphism_count() const { return static_cast<int>(arrows_.size()); }

  ObjId src(MorId f) const { return arrows_.at(check_morphism(f)).src; }
  ObjId tgt(MorId f) const { return arrows_.at(check_morphism(f)).tgt; }
  MorId identity(ObjId a) const { return identities_.at(check_object(a)); }
  bool is_identity(MorId f) const { return identity(src(f)) == f; }

  bool composable(MorId g, MorId f) const { return tgt(f) == src(g); }
  /// `g ∘ f`. Throws InvalidArgument if not composable or if the table has
  /// no entry.
  MorId compose(MorId g, MorId f) const;
  /// Raw table entry; `kNone` when not composable or missing.
  MorId comp_entry(MorId g, MorId f) const;

  std::span<const MorId> hom(ObjId a, ObjId b) const;
  std::span<const MorId> into(ObjId b) const;
  std::span<const MorId> out_of(ObjId a) const;

  /// The two-sided inverse of `f`, or `kNone`.
  MorId inverse(MorId f) const { return inverse_.at(check_morphism(f)); }
  bool is_iso(MorId f) const { return inverse(f) != kNone; }

  const std::string& object_name(ObjId a) const { return object_names_.at(check_object(a)); }
  const std::string& morphism_name(MorId f) const { return morphism_names_.at(check_morphism(f)); }
  const std::vector<std::string>& object_names() const { return object_names_; }
  const std::vector<std::string>& morphism_names() const { return morphism_names_; }
  std::optional<ObjId> find_object(const std::string& name) const;
  std::optional<MorId> find_morphism(const std::string& name) const;

  ObjId check_object(ObjId a) const;
  MorId check_morphism(MorId f) const;

 private:
  std::vector<std::string> object_names_;
  std::vector<std::string> morphism_names_;
  std::vector<Arrow> arrows_;
  std::vector<MorId> identities_;
  std::vector<MorId> comp_;
  std::vector<std::vector<MorId>> hom_;
  std::vector<std::vector<MorId>> into_;
  std::vector<std::vector<MorId>> out_of_;
  std::vector<MorId> inverse_;
};

/// Incremental construction of a FinCategory.
class CategoryBuilder {
 public:
  ObjId add_object(std::string name);
  /// Adds a morphism; the first morphism added at an object with
  /// `src == tgt` is *not* automatically its identity, call set_identity.
  MorId add_morphism(std::string name, ObjId src, ObjId tgt);
  void set_identity(ObjId a, MorId f);
  void set_comp(MorId g, MorId f, MorId gf);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(arrows_.size()); }
  Arrow arrow(MorId f) const { return arrows_.at(f); }

  FinCategory build() const;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> morphisms_;
  std::vector<Arrow> arrows_;
  std::vector<MorId> identities_;
  std::vector<std::vector<MorId>> comp_rows_;
};

/// Object and morphism assignment between two finite categories.
struct Functor {
  std::vector<ObjId> on_objects;
  std::vector<MorId> on_morphisms;

  bool operator==(const Functor&) const = default;
};

Functor identity_functor(const FinCategory& c);
/// `g ∘ f` as functors (apply `f` first).
Functor compose_functors(const Functor& g, const Functor& f);
/// Tags: F-SHAPE, F-TYPE, F-ID, F-COMP.
LawReport check_functor(const FinCategory& from, const FinCategory& to, const Functor& f);
bool is_full_and_faithful(const FinCategory& from, const FinCategory& to, const Functor& f);

/// A diagram: a functor out of a (small, finite) shape category.
struct Diagram {
  FinCategory shape;
  Functor map;
};

/// Cone over a cospan (legs to the two feet) or cocone under a diagram
/// (one leg per shape object).
struct Cone {
  ObjId apex = kNone;
  std::vector<MorId> legs;

  bool operator==(const Cone&) const = default;
};
using Cocone = Cone;

/// Identity, associativity and table-shape violations.
/// Tags: COMP-MISSING, COMP-EXTRA, COMP-TYPE, ID-TYPE, ID-LEFT, ID-RIGHT,
/// ASSOC.
LawReport validate_category(const FinCategory& c);

/// Exhaustive left-cancellation test.
bool is_mono(const FinCategory& c, MorId m);

/// Terminal cone over the cospan `f: A → C ← B: g`, legs `{p: P → A,
/// q: P → B}`. Among terminal cones the smallest `(apex, p, q)` is returned.
std::optional<Cone> pullback(const FinCategory& c, MorId f, MorId g);

/// All cocones under `d` with the given apex, in lexicographic leg order.
std::vector<Cocone> cocones_at(const FinCategory& c, const Diagram& d, ObjId apex);

/// Initial cocone under `d`, smallest `(apex, legs)` among the initial
/// ones. Verified against every cocone in `c`.
std::optional<Cocone> colimit(const FinCategory& c, const Diagram& d);

/// Number of `u: apex(from) → apex(to)` with `u ∘ from.legs[i] == to.legs[i]`.
int count_mediators(const FinCategory& c, const Cocone& from, const Cocone& to);

/// Extra structure an isomorphism must respect.
struct IsoConstraints {
  /// Restriction tables; when both are non-empty F must commute with them.
  std::vector<MorId> bar_from;
  std::vector<MorId> bar_to;
  /// Morphism colours (e.g. membership in a class of monics); when both
  /// are non-empty F must preserve them.
  std::vector<int> colour_from;
  std::vector<int> colour_to;
};

/// Searches for an isomorphism of categories respecting `constraints`.
std::optional<Functor> find_isomorphism(const FinCategory& a, const FinCategory& b,
                                        const IsoConstraints& constraints = {});

}  // namespace jrcat
