#include "jrcat/par.hpp"

#include <set>
#include <sstream>

#include "jrcat/errors.hpp"

namespace jrcat {

Span canonical_span(const FinCategory& c, const Span& s) {
  Span best = s;
  for (MorId phi : c.into(s.apex)) {
    if (!c.is_iso(phi)) continue;
    Span candidate{c.src(phi), c.compose(s.m, phi), c.compose(s.f, phi)};
    if (candidate < best) best = candidate;
  }
  return best;
}

ParCategory::ParCategory(RestrictionCategory x, std::vector<Span> spans,
                         std::vector<MorId> embedding)
    : x_(std::move(x)), spans_(std::move(spans)), embedding_(std::move(embedding)) {
  for (std::size_t i = 0; i < spans_.size(); ++i) index_[spans_[i]] = static_cast<MorId>(i);
}

MorId ParCategory::find(const FinCategory& c, const Span& s) const {
  return find_canonical(canonical_span(c, s));
}

MorId ParCategory::find_canonical(const Span& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? kNone : it->second;
}

ParCategory par(const MCategory& mc) {
  const FinCategory& c = mc.base();
  std::vector<Span> spans;
  std::map<Span, MorId> index;
  CategoryBuilder b;
  for (ObjId a = 0; a < c.object_count(); ++a) b.add_object(c.object_name(a));
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (ObjId y = 0; y < c.object_count(); ++y) {
      std::set<Span> found;
      for (MorId m : c.into(x)) {
        if (!mc.in_m(m)) continue;
        for (MorId f : c.hom(c.src(m), y)) found.insert(canonical_span(c, {c.src(m), m, f}));
      }
      for (const Span& s : found) {
        index[s] = b.add_morphism("[" + c.morphism_name(s.m) + "|" + c.morphism_name(s.f) + "]", x, y);
        spans.push_back(s);
      }
    }
  }
  auto lookup = [&](const Span& s) {
    auto it = index.find(canonical_span(c, s));
    if (it == index.end()) throw InvariantError("par: span class missing from enumeration");
    return it->second;
  };
  for (ObjId a = 0; a < c.object_count(); ++a)
    b.set_identity(a, lookup({a, c.identity(a), c.identity(a)}));

  for (MorId p = 0; p < static_cast<MorId>(spans.size()); ++p) {
    const Span& s = spans[p];
    const ObjId y = c.tgt(s.f);
    for (MorId q = 0; q < static_cast<MorId>(spans.size()); ++q) {
      const Span& t = spans[q];
      if (c.tgt(t.m) != y) continue;
      const auto& pb = mc.pullback_of(t.m, s.f);
      if (!pb || !mc.in_m(pb->along)) {
        std::ostringstream os;
        os << "par: no M-pullback of " << c.morphism_name(t.m) << " along " << c.morphism_name(s.f);
        throw InvariantError(os.str());
      }
      Span composite{pb->apex, c.compose(s.m, pb->along), c.compose(t.f, pb->over)};
      b.set_comp(q, p, lookup(composite));
    }
  }
  FinCategory base = b.build();
  std::vector<MorId> bar;
  for (const Span& s : spans) bar.push_back(lookup({s.apex, s.m, s.m}));
  std::vector<MorId> embedding;
  for (MorId f = 0; f < c.morphism_count(); ++f)
    embedding.push_back(lookup({c.src(f), c.identity(c.src(f)), f}));
  return ParCategory(RestrictionCategory(std::move(base), std::move(bar)), std::move(spans),
                     std::move(embedding));
}

int par_leq_mediators(const MCategory& mc, const ParCategory& pc, MorId p, MorId q) {
  const FinCategory& c = mc.base();
  const FinCategory& pb = pc.base();
  if (pb.src(p) != pb.src(q) || pb.tgt(p) != pb.tgt(q))
    throw InvalidArgument("par_leq_oracle: partial maps are not parallel");
  const Span& s = pc.span(p);
  const Span& t = pc.span(q);
  int count = 0;
  for (MorId phi : c.hom(s.apex, t.apex)) {
    if (c.comp_entry(t.m, phi) == s.m && c.comp_entry(t.f, phi) == s.f) ++count;
  }
  return count;
}

bool par_leq_oracle(const MCategory& mc, const ParCategory& pc, MorId p, MorId q) {
  return par_leq_mediators(mc, pc, p, q) > 0;
}

std::optional<MorId> par_join_construction(const MCategory& mc, const ParCategory& pc,
                                           ObjId x, ObjId y, const std::vector<MorId>& family) {
  const FinCategory& c = mc.base();
  std::vector<MorId> ms;
  for (MorId p : family) {
    if (pc.base().src(p) != x || pc.base().tgt(p) != y)
      throw InvalidArgument("par_join_construction: family member outside the hom-set");
    ms.push_back(pc.span(p).m);
  }
  Diagram d = matching_diagram(mc, x, ms);
  MatchingJoin mj = matching_join(mc, x, ms);
  if (!mj.colimit || !mj.induced_in_m) return std::nullopt;
  // γ must satisfy γ a_i = f_i; on pair objects the leg is forced by a_i.
  const int k = static_cast<int>(family.size());
  MorId gamma = kNone;
  for (MorId u : c.hom(mj.colimit->apex, y)) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      ok = c.comp_entry(u, mj.colimit->legs[i]) == pc.span(family[i]).f;
    for (int s = k; s < d.shape.object_count() && ok; ++s) {
      for (MorId e : d.shape.out_of(s)) {
        if (d.shape.is_identity(e)) continue;
        const int i = d.shape.tgt(e);
        ok = ok && c.comp_entry(u, mj.colimit->legs[s]) ==
                       c.compose(pc.span(family[i]).f, d.map.on_morphisms[e]);
      }
    }
    if (!ok) continue;
    if (gamma != kNone) return std::nullopt;
    gamma = u;
  }
  if (gamma == kNone) return std::nullopt;
  return pc.find(c, {mj.colimit->apex, mj.induced, gamma});
}

}  // namespace jrcat
