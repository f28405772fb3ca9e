#pragma once

// M-categories: a finite category with a chosen class of monics, its
// subobject posets and the matching-diagram joins used by the geometric
// criterion.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "jrcat/core_cat.hpp"
#include "jrcat/report.hpp"

namespace jrcat {

/// Pullback of an M-map `m` along an arbitrary `f` with the same target:
///   apex --over--> src m
///    |along          | m
///    v               v
///  src f ----f----> tgt
struct MPullback {
  ObjId apex = kNone;
  MorId along = kNone;
  MorId over = kNone;
};

class MCategory {
 public:
  MCategory() = default;
  /// Builds the class and tabulates M-pullbacks. Nothing is validated here
  /// beyond ids being in range; see check_m_system.
  MCategory(FinCategory base, std::vector<MorId> monics);

  const FinCategory& base() const { return base_; }
  const std::vector<MorId>& monics() const { return monics_; }
  bool in_m(MorId f) const { return in_m_.at(base_.check_morphism(f)) != 0; }

  /// The pullback of `m` along `f`, if one exists. Throws InvalidArgument if
  /// `m` is not in M or the pair is not a cospan.
  const std::optional<MPullback>& pullback_of(MorId m, MorId f) const;

  /// Canonical representative of the subobject `m` names: the smallest M-map
  /// `m∘φ` over isos φ.
  MorId subobject_rep(MorId m) const;
  /// Canonical representatives of the M-subobjects of `c`, ascending.
  const std::vector<MorId>& subobjects(ObjId c) const { return subobjects_.at(base_.check_object(c)); }

 private:
  friend std::optional<MorId> sub_join(const MCategory&, ObjId, const std::vector<MorId>&);

  // sub_join results, shared between copies.
  struct JoinMemo {
    std::mutex mutex;
    std::map<std::pair<ObjId, std::vector<MorId>>, std::optional<MorId>> joins;
  };

  FinCategory base_;
  std::vector<MorId> monics_;
  std::vector<char> in_m_;
  std::vector<MorId> rep_;
  std::vector<std::vector<MorId>> subobjects_;
  // Indexed by [position of m in monics_][f].
  std::vector<std::vector<std::optional<MPullback>>> pullbacks_;
  std::vector<int> m_pos_;
  std::shared_ptr<JoinMemo> join_memo_ = std::make_shared<JoinMemo>();
};

/// Tags: M-NOTMONO m; M-ISO f (iso outside M); M-COMP g f; M-PB m f (no
/// pullback); M-PBLEG m f (the leg opposite m is not in M).
LawReport check_m_system(const MCategory& mc);

/// m ≤ n iff m factors through n.
bool sub_leq(const MCategory& mc, MorId m, MorId n);
/// Meet of two subobjects of a common object, via pullback.
MorId sub_meet(const MCategory& mc, MorId m, MorId n);
/// Representative of f*(m).
MorId pullback_subobject(const MCategory& mc, MorId f, MorId m);

struct SubMPoset {
  ObjId object = kNone;
  std::vector<MorId> elements;
  /// leq[i][j] iff elements[i] ≤ elements[j].
  std::vector<std::vector<char>> leq;
  MorId top = kNone;
};

SubMPoset sub_m(const MCategory& mc, ObjId c);

/// Shape: objects 0..k-1 for the family, then one object per pair i<j
/// with arrows to i and j. The pair object maps to the pullback of m_j
/// along m_i.
Diagram matching_diagram(const MCategory& mc, ObjId c, const std::vector<MorId>& family);

struct MatchingJoin {
  std::optional<Cocone> colimit;
  /// The induced map μ: colimit → c, when the colimit exists.
  MorId induced = kNone;
  bool induced_in_m = false;
  /// Representative of μ as a subobject; kNone unless induced_in_m.
  MorId rep = kNone;
};

MatchingJoin matching_join(const MCategory& mc, ObjId c, const std::vector<MorId>& family);

/// The join in Sub_M(c), when the matching colimit exists and μ ∈ M.
std::optional<MorId> sub_join(const MCategory& mc, ObjId c, const std::vector<MorId>& family);

/// Calls `visit` on every subset of Sub_M(c) with at most `max_size`
/// members (negative = unbounded), smallest sizes first.
void for_each_subobject_family(const MCategory& mc, ObjId c, int max_size,
                               const std::function<void(const std::vector<MorId>&)>& visit);

struct GeometricOptions {
  int max_family = -1;
};

/// Per object, the first family (by size, then lexicographically) failing
/// one of: GEO1 no matching colimit; GEO2 μ not in M; GEO3 f*(⋁m) ≠ ⋁f*(m)
/// for some f. ids = {object, family...}; detail says which f for GEO3.
LawReport is_geometric(const MCategory& mc, const GeometricOptions& options = {});

/// m ∧ ⋁N = ⋁(m ∧ n) for all m and families N in Sub_M(c).
/// Tags: HEYT-JOIN c N (join missing), HEYT-DIST c m N.
LawReport heyting_check(const MCategory& mc, ObjId c, const GeometricOptions& options = {});

/// f*(⋁N) = ⋁f*(N) over all families N of Sub_M(tgt f).
/// Tags: PB-JOIN f N.
LawReport pullback_preserves_joins(const MCategory& mc, MorId f,
                                   const GeometricOptions& options = {});

}  // namespace jrcat
