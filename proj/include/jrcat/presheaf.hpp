#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "jrcat/core_cat.hpp"
#include "jrcat/report.hpp"

namespace jrcat {

using SecId = int;

/// A finite presheaf. Sections at each object are 0..size-1;
/// `action[f][y]` is y·f for y over tgt f.
struct Presheaf {
  std::vector<int> sizes;
  std::vector<std::vector<SecId>> action;
  /// Optional display names, labels[a][x].
  std::vector<std::vector<std::string>> labels;

  int size(ObjId a) const { return sizes.at(a); }
  SecId act(MorId f, SecId y) const { return action.at(f).at(y); }
  std::string label(ObjId a, SecId x) const;
  int total_size() const;
};

/// Tags: PSH-SHAPE, PSH-RANGE f y, PSH-ID a x, PSH-COMP g f z.
LawReport check_presheaf(const FinCategory& c, const Presheaf& p);

struct NatTrans {
  /// components[a][x] ∈ Q(a) for x ∈ P(a).
  std::vector<std::vector<SecId>> components;

  SecId at(ObjId a, SecId x) const { return components.at(a).at(x); }
  bool operator==(const NatTrans&) const = default;
};

/// Tags: NAT-SHAPE a; NAT f y (α(y)·f ≠ α(y·f)).
LawReport check_natural(const FinCategory& c, const Presheaf& p, const Presheaf& q,
                        const NatTrans& alpha);
NatTrans identity_nat(const Presheaf& p);
/// β∘α.
NatTrans compose_nat(const NatTrans& beta, const NatTrans& alpha);
bool is_componentwise_injective(const NatTrans& alpha);
/// Bijective on every component (given the codomain's sizes).
bool is_bijective(const NatTrans& alpha, const Presheaf& q);
/// Inverse of a bijective transformation; throws InvalidArgument otherwise.
NatTrans inverse_nat(const NatTrans& alpha, const Presheaf& q);

struct NatEnumOptions {
  /// Above this naive count ∏|Q(a)|^|P(a)| the search samples instead.
  double exhaustive_limit = 1e6;
  std::uint64_t seed = 0;
  int samples = 64;
};

/// All natural transformations P ⇒ Q in a deterministic order, or a seeded
/// sample of them when the space is large.
std::vector<NatTrans> enumerate_nat_trans(const FinCategory& c, const Presheaf& p,
                                          const Presheaf& q, const NatEnumOptions& options = {});

struct NatIsoOptions {
  /// When both are set, α must carry each section's bar to the same bar.
  const std::vector<std::vector<MorId>>* bar_from = nullptr;
  const std::vector<std::vector<MorId>>* bar_to = nullptr;
  /// Fixed values (a, x, α_a(x)).
  std::vector<std::tuple<ObjId, SecId, SecId>> pins;
};

/// Backtracking search for a natural isomorphism P ≅ Q.
std::optional<NatTrans> find_natural_iso(const FinCategory& c, const Presheaf& p,
                                         const Presheaf& q, const NatIsoOptions& options = {});

/// X(−, a). Sections at x are hom(x, a) in id order, labelled by name.
Presheaf representable(const FinCategory& c, ObjId a);
/// Position of f in hom(src f, a).
SecId representable_section(const FinCategory& c, ObjId a, MorId f);
/// y(f): X(−, src f) ⇒ X(−, tgt f), postcomposition.
NatTrans yoneda_nat(const FinCategory& c, MorId f);

Presheaf constant_presheaf(const FinCategory& c, int k);
inline Presheaf terminal_presheaf(const FinCategory& c) { return constant_presheaf(c, 1); }

/// P∘F^op for F: from → to.
Presheaf restrict_along(const FinCategory& from, const Functor& f, const Presheaf& p);

struct SubPresheaf {
  Presheaf presheaf;
  NatTrans inclusion;
};

/// The subpresheaf on the kept sections. Throws InvalidArgument if the
/// selection is not closed under the action.
SubPresheaf subpresheaf(const FinCategory& c, const Presheaf& p,
                        const std::vector<std::vector<char>>& keep);

/// Every subpresheaf, or nullopt if there are more than `limit`.
std::optional<std::vector<SubPresheaf>> all_subpresheaves(const FinCategory& c, const Presheaf& p,
                                                          std::size_t limit = 4096);

/// Image of a transformation as a subpresheaf of its codomain.
std::vector<std::vector<char>> image_of(const NatTrans& alpha, const Presheaf& q);

}  // namespace jrcat
