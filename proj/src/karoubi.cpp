#include "jrcat/karoubi.hpp"

#include <map>
#include <sstream>
#include <tuple>

#include "jrcat/errors.hpp"

namespace jrcat {

KaroubiEnvelope karoubi_r(const RestrictionCategory& x) {
  const FinCategory& c = x.base();
  KaroubiEnvelope k;
  CategoryBuilder b;
  std::vector<ObjId> plain(c.object_count(), kNone);
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (MorId e : c.hom(a, a)) {
      if (!is_restriction_idempotent(x, e)) continue;
      ObjId o = b.add_object(c.object_name(a) + "|" + c.morphism_name(e));
      k.objects.push_back({a, e});
      if (e == c.identity(a)) plain[a] = o;
    }
  }
  const int n = static_cast<int>(k.objects.size());
  std::map<std::tuple<ObjId, ObjId, MorId>, MorId> index;
  for (ObjId i = 0; i < n; ++i) {
    auto [a, e] = k.objects[i];
    for (ObjId j = 0; j < n; ++j) {
      auto [bb, e2] = k.objects[j];
      for (MorId f : c.hom(a, bb)) {
        if (c.compose(f, e) != f || c.compose(e2, f) != f) continue;
        MorId id = b.add_morphism(c.morphism_name(f) + "@" + std::to_string(i) + ">" + std::to_string(j),
                                  i, j);
        index[{i, j, f}] = id;
        k.underlying.push_back(f);
      }
    }
  }
  for (ObjId i = 0; i < n; ++i) b.set_identity(i, index.at({i, i, k.objects[i].second}));
  std::vector<ObjId> src_of(k.underlying.size()), tgt_of(k.underlying.size());
  for (const auto& [key, id] : index) {
    src_of[id] = std::get<0>(key);
    tgt_of[id] = std::get<1>(key);
  }
  for (MorId u = 0; u < static_cast<MorId>(k.underlying.size()); ++u) {
    for (MorId v = 0; v < static_cast<MorId>(k.underlying.size()); ++v) {
      if (src_of[v] != tgt_of[u]) continue;
      MorId gf = c.compose(k.underlying[v], k.underlying[u]);
      b.set_comp(v, u, index.at({src_of[u], tgt_of[v], gf}));
    }
  }
  std::vector<MorId> bar;
  for (MorId u = 0; u < static_cast<MorId>(k.underlying.size()); ++u)
    bar.push_back(index.at({src_of[u], src_of[u], x.bar(k.underlying[u])}));
  k.category = RestrictionCategory(b.build(), std::move(bar));

  k.embedding.on_objects = plain;
  for (MorId f = 0; f < c.morphism_count(); ++f)
    k.embedding.on_morphisms.push_back(index.at({plain[c.src(f)], plain[c.tgt(f)], f}));

  if (!check_restriction_functor(x, k.category, k.embedding).ok() ||
      !is_full_and_faithful(c, k.category.base(), k.embedding))
    throw InvariantError("karoubi_r: embedding is not a full and faithful restriction functor");
  if (!unsplit_restriction_idempotents(k.category).empty())
    throw InvariantError("karoubi_r: result has an unsplit restriction idempotent");
  return k;
}

bool is_restriction_monic(const RestrictionCategory& x, MorId m) {
  const FinCategory& c = x.base();
  if (!is_total(x, m)) return false;
  for (MorId r : c.hom(c.tgt(m), c.src(m))) {
    if (c.compose(r, m) == c.identity(c.src(m)) && c.compose(m, r) == x.bar(r)) return true;
  }
  return false;
}

MTotal mtotal(const RestrictionCategory& x) {
  auto unsplit = unsplit_restriction_idempotents(x);
  if (!unsplit.empty()) {
    std::ostringstream os;
    os << "mtotal: restriction idempotent " << x.base().morphism_name(unsplit.front())
       << " does not split";
    throw UnsplitIdempotent(os.str());
  }
  TotalSubcategory total = total_subcategory(x);
  std::vector<MorId> monics;
  for (MorId f : total.inclusion) {
    if (is_restriction_monic(x, f)) monics.push_back(total.index[f]);
  }
  MCategory mc(total.category, std::move(monics));
  return MTotal{std::move(mc), std::move(total)};
}

SplitComparison split_comparison(const RestrictionCategory& x) {
  MTotal mt = mtotal(x);
  ParCategory pc = par(mt.mc);
  const FinCategory& c = x.base();
  Functor f;
  for (ObjId a = 0; a < c.object_count(); ++a) f.on_objects.push_back(a);
  for (MorId g = 0; g < c.morphism_count(); ++g) {
    auto split = find_splitting(c, x.bar(g));
    if (!split) throw InvariantError("split_comparison: restriction idempotent lost its splitting");
    const MorId m = mt.total.index[split->section];
    const MorId gm = mt.total.index[c.compose(g, split->section)];
    if (m == kNone || gm == kNone)
      throw InvariantError("split_comparison: splitting section is not total");
    MorId p = pc.find(mt.mc.base(), {split->object, m, gm});
    if (p == kNone) throw InvariantError("split_comparison: span is not a partial map");
    f.on_morphisms.push_back(p);
  }
  return SplitComparison{std::move(mt), std::move(pc), std::move(f)};
}

}  // namespace jrcat
