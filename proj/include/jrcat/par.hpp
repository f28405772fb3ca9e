#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "jrcat/mcat.hpp"
#include "jrcat/restriction.hpp"

namespace jrcat {

/// A partial map X ⇀ Y as a span X <-m- apex -f-> Y with m ∈ M.
struct Span {
  ObjId apex = kNone;
  MorId m = kNone;
  MorId f = kNone;

  auto operator<=>(const Span&) const = default;
};

/// Smallest (apex, m, f) among the spans (m∘φ, f∘φ), φ an iso.
Span canonical_span(const FinCategory& c, const Span& s);

/// Par(C, M) with its restriction structure and the embedding of C as the
/// total maps.
class ParCategory {
 public:
  ParCategory(RestrictionCategory x, std::vector<Span> spans, std::vector<MorId> embedding);

  const RestrictionCategory& category() const { return x_; }
  const FinCategory& base() const { return x_.base(); }
  const Span& span(MorId p) const { return spans_.at(base().check_morphism(p)); }
  /// Id of the class of `s` (canonicalized first), or kNone.
  MorId find(const FinCategory& c, const Span& s) const;
  /// Id of the exact canonical span `s`, or kNone.
  MorId find_canonical(const Span& s) const;
  /// C-morphism f ↦ the total map (1, f).
  MorId embed(MorId f) const { return embedding_.at(f); }
  const std::vector<MorId>& embedding() const { return embedding_; }

 private:
  RestrictionCategory x_;
  std::vector<Span> spans_;
  std::map<Span, MorId> index_;
  std::vector<MorId> embedding_;
};

/// Composition by M-pullback, restriction (m, f) ↦ (m, m). Throws
/// InvariantError if a needed pullback is missing or leaves M.
ParCategory par(const MCategory& mc);

/// Number of φ: apex(p) → apex(q) with n∘φ = m and g∘φ = f, where
/// p = (m, f) and q = (n, g). p ≤ q in the restriction order exactly
/// when this is positive, and it is at most one since n is monic.
int par_leq_mediators(const MCategory& mc, const ParCategory& pc, MorId p, MorId q);
/// Throws InvalidArgument on non-parallel input.
bool par_leq_oracle(const MCategory& mc, const ParCategory& pc, MorId p, MorId q);

/// Join of a compatible family of parallel partial maps built from the
/// matching colimit {a_i} of the domains: (μ, γ) with μ a_i = m_i and
/// γ a_i = f_i. Empty when the colimit, μ ∈ M or γ is unavailable.
std::optional<MorId> par_join_construction(const MCategory& mc, const ParCategory& pc,
                                           ObjId x, ObjId y, const std::vector<MorId>& family);

}  // namespace jrcat
