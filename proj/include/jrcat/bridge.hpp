#pragma once

// Moving between presheaves on C and restriction presheaves on Par(C, M):
// P ↦ P̃ (partial sections) and R ↦ Ṙ (total sections), the join recipe on
// P̃ for a sheaf P, the amalgamation recipe on Ṙ for a join restriction
// presheaf R, round trips, and the unit comparison for a join restriction
// category.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jrcat/par.hpp"
#include "jrcat/rpsh.hpp"
#include "jrcat/site.hpp"

namespace jrcat {

/// A partial section (m, s): m ∈ M into the object, s ∈ P(apex).
struct PartialSection {
  ObjId apex = kNone;
  MorId m = kNone;
  SecId s = kNone;

  auto operator<=>(const PartialSection&) const = default;
};

/// Smallest (apex, m, s) among (m∘φ, s·φ), φ an iso.
PartialSection canonical_partial_section(const FinCategory& c, const Presheaf& p,
                                         const PartialSection& x);

struct TildePresheaf {
  RestrictionPresheaf rp;
  /// sections[a][i]: the canonical pair behind section i over a.
  std::vector<std::vector<PartialSection>> sections;

  SecId find(ObjId a, const PartialSection& canonical) const;
};

/// P̃ over Par(C, M): action along (n, g) pulls m back along g, bar of
/// (m, s) is (m, m).
TildePresheaf f_tilde(const MCategory& mc, const ParCategory& pc, const Presheaf& p);

/// α̃: P̃ ⇒ Q̃, (m, s) ↦ (m, α(s)). `q` is the codomain of α.
NatTrans tilde_map(const MCategory& mc, const Presheaf& q, const TildePresheaf& from,
                   const TildePresheaf& to, const NatTrans& alpha);

struct DotPresheaf {
  Presheaf presheaf;
  /// included[a][i]: the section of the input behind section i.
  std::vector<std::vector<SecId>> included;
};

/// Sections with bar = 1, acted on by the total maps (1, f).
DotPresheaf g_dot(const ParCategory& pc, const FinCategory& c, const RestrictionPresheaf& p);

struct SheafTransfer {
  TildePresheaf tilde;
  JoinRestrictionPresheaf jrp;
};

/// P̃ with joins (μ, γ): μ is induced by the matching colimit {a_i} of the
/// family's domains and γ is the amalgamation of the s_i along the a_i.
/// Throws NotASheaf naming the first failing family if P is not a sheaf.
SheafTransfer sheaf_to_jrp(const MCategory& mc, const ParCategory& pc, const Topology& j,
                           const Presheaf& p, int max_family = -1);

struct AmalgamationRecord {
  ObjId object = kNone;
  Sieve sieve;
  MatchingFamily family;
  /// ⋁ x_s·(s, 1) over the M-maps s in the sieve, as a section of Ṙ, or
  /// kNone if that join is missing or not total.
  SecId formula = kNone;
  std::vector<SecId> searched;
};

struct SheafCertificate {
  DotPresheaf dot;
  bool sheaf = false;
  bool formula_matches = false;
  std::vector<AmalgamationRecord> records;
};

SheafCertificate jrp_to_sheaf(const MCategory& mc, const ParCategory& pc, const Topology& j,
                              const JoinRestrictionPresheaf& p);

struct TransferReport {
  std::string direction;
  std::string input;
  std::map<std::string, bool> checks;
  /// Original → round trip and back; present iff an isomorphism was found.
  std::optional<NatTrans> forward;
  std::optional<NatTrans> backward;
  LawReport laws;

  bool ok() const;
};

/// Sheaf P on C → P̃ → (P̃)˙ ≅ P, plus: every M_PSh-subpresheaf of P is a
/// sheaf.
TransferReport roundtrip_sheaf(const MCategory& mc, const ParCategory& pc, const Topology& j,
                               const Presheaf& p, const std::string& name);
/// Join restriction presheaf R on Par → Ṙ → (Ṙ)~ ≅ R.
TransferReport roundtrip_jrp(const MCategory& mc, const ParCategory& pc, const Topology& j,
                             const JoinRestrictionPresheaf& r, const std::string& name);

struct UnitObjectResult {
  ObjId object = kNone;
  bool representable_is_sheaf = false;
  bool route_jrp_ok = false;
  /// θ: X(−, A) ≅ route(A), bar-preserving, θ(1_A) = (1, 1).
  std::optional<NatTrans> iso;
  bool natural_in_total_maps = false;
};

struct UnitReport {
  std::vector<UnitObjectResult> objects;
  bool ok() const;
};

/// For each object A of x compares X(−, A) with the route through
/// K_r(x), MTotal, the generated topology, the representable sheaf at
/// (A, 1) and its partial sections, restricted back along x → Par.
/// Throws InvariantError if an intermediate stage breaks.
UnitReport cocompletion_unit(const RestrictionCategory& x, int max_family = -1);

}  // namespace jrcat
