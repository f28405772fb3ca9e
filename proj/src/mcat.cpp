#include "jrcat/mcat.hpp"

#include <algorithm>
#include <sstream>

#include "jrcat/errors.hpp"

namespace jrcat {

MCategory::MCategory(FinCategory base, std::vector<MorId> monics)
    : base_(std::move(base)), monics_(std::move(monics)) {
  std::sort(monics_.begin(), monics_.end());
  monics_.erase(std::unique(monics_.begin(), monics_.end()), monics_.end());
  const int n = base_.morphism_count();
  in_m_.assign(n, 0);
  m_pos_.assign(n, kNone);
  for (std::size_t i = 0; i < monics_.size(); ++i) {
    base_.check_morphism(monics_[i]);
    in_m_[monics_[i]] = 1;
    m_pos_[monics_[i]] = static_cast<int>(i);
  }

  rep_.assign(n, kNone);
  subobjects_.resize(base_.object_count());
  for (MorId m : monics_) {
    MorId best = m;
    for (MorId phi : base_.into(base_.src(m))) {
      if (!base_.is_iso(phi)) continue;
      MorId candidate = base_.comp_entry(m, phi);
      if (candidate != kNone && in_m_[candidate] && candidate < best) best = candidate;
    }
    rep_[m] = best;
  }
  for (MorId m : monics_) subobjects_[base_.tgt(m)].push_back(rep_[m]);
  for (auto& subs : subobjects_) {
    std::sort(subs.begin(), subs.end());
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
  }

  pullbacks_.resize(monics_.size());
  for (std::size_t i = 0; i < monics_.size(); ++i) {
    const MorId m = monics_[i];
    pullbacks_[i].assign(n, std::nullopt);
    for (MorId f : base_.into(base_.tgt(m))) {
      auto cone = pullback(base_, f, m);
      if (cone) pullbacks_[i][f] = MPullback{cone->apex, cone->legs[0], cone->legs[1]};
    }
  }
}

const std::optional<MPullback>& MCategory::pullback_of(MorId m, MorId f) const {
  if (!in_m(m)) throw InvalidArgument("pullback_of: first argument is not in M");
  if (base_.tgt(m) != base_.tgt(f)) throw InvalidArgument("pullback_of: not a cospan");
  return pullbacks_[m_pos_[m]][f];
}

MorId MCategory::subobject_rep(MorId m) const {
  if (!in_m(m)) throw InvalidArgument("subobject_rep: morphism is not in M");
  return rep_[m];
}

LawReport check_m_system(const MCategory& mc) {
  const FinCategory& c = mc.base();
  LawReport report;
  for (MorId m : mc.monics()) {
    if (!is_mono(c, m)) report.add("M-NOTMONO", {m});
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (c.is_iso(f) && !mc.in_m(f)) report.add("M-ISO", {f});
  }
  for (MorId f : mc.monics()) {
    for (MorId g : c.out_of(c.tgt(f))) {
      if (!mc.in_m(g)) continue;
      MorId gf = c.comp_entry(g, f);
      if (gf == kNone || !mc.in_m(gf)) report.add("M-COMP", {g, f});
    }
  }
  for (MorId m : mc.monics()) {
    for (MorId f : c.into(c.tgt(m))) {
      const auto& pb = mc.pullback_of(m, f);
      if (!pb)
        report.add("M-PB", {m, f});
      else if (!mc.in_m(pb->along))
        report.add("M-PBLEG", {m, f});
    }
  }
  return report;
}

bool sub_leq(const MCategory& mc, MorId m, MorId n) {
  const FinCategory& c = mc.base();
  if (c.tgt(m) != c.tgt(n)) throw InvalidArgument("sub_leq: subobjects of different objects");
  for (MorId phi : c.hom(c.src(m), c.src(n))) {
    if (c.comp_entry(n, phi) == m) return true;
  }
  return false;
}

namespace {

MorId rep_of_pullback_leg(const MCategory& mc, MorId m, MorId f, const char* op) {
  const auto& pb = mc.pullback_of(m, f);
  if (!pb || !mc.in_m(pb->along)) {
    std::ostringstream os;
    os << op << ": no M-pullback of " << mc.base().morphism_name(m) << " along "
       << mc.base().morphism_name(f);
    throw InvariantError(os.str());
  }
  return pb->along;
}

std::vector<MorId> sorted_unique(std::vector<MorId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> tagged(std::initializer_list<int> head, const std::vector<MorId>& tail) {
  std::vector<int> ids(head);
  ids.insert(ids.end(), tail.begin(), tail.end());
  return ids;
}

}  // namespace

MorId sub_meet(const MCategory& mc, MorId m, MorId n) {
  const FinCategory& c = mc.base();
  if (c.tgt(m) != c.tgt(n)) throw InvalidArgument("sub_meet: subobjects of different objects");
  MorId along = rep_of_pullback_leg(mc, n, m, "sub_meet");
  MorId meet = c.compose(m, along);
  if (!mc.in_m(meet)) throw InvariantError("sub_meet: meet is not in M");
  return mc.subobject_rep(meet);
}

MorId pullback_subobject(const MCategory& mc, MorId f, MorId m) {
  return mc.subobject_rep(rep_of_pullback_leg(mc, m, f, "pullback_subobject"));
}

SubMPoset sub_m(const MCategory& mc, ObjId c) {
  SubMPoset p;
  p.object = c;
  p.elements = mc.subobjects(c);
  const std::size_t k = p.elements.size();
  p.leq.assign(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) p.leq[i][j] = sub_leq(mc, p.elements[i], p.elements[j]);
  p.top = mc.subobject_rep(mc.base().identity(c));
  return p;
}

Diagram matching_diagram(const MCategory& mc, ObjId c, const std::vector<MorId>& family) {
  const FinCategory& base = mc.base();
  for (MorId m : family) {
    if (!mc.in_m(m) || base.tgt(m) != c)
      throw InvalidArgument("matching_diagram: family member is not an M-map into the object");
  }
  const int k = static_cast<int>(family.size());
  CategoryBuilder b;
  Functor map;
  for (int i = 0; i < k; ++i) {
    ObjId o = b.add_object(std::to_string(i));
    b.set_identity(o, b.add_morphism("1_" + std::to_string(i), o, o));
    map.on_objects.push_back(base.src(family[i]));
    map.on_morphisms.push_back(base.identity(base.src(family[i])));
  }
  struct PairArrows {
    MorId id, to_i, to_j;
  };
  std::vector<PairArrows> pairs;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto& pb = mc.pullback_of(family[j], family[i]);
      if (!pb) throw InvariantError("matching_diagram: missing pullback of a family pair");
      std::string name = std::to_string(i) + "," + std::to_string(j);
      ObjId o = b.add_object(name);
      PairArrows arrows{b.add_morphism("1_" + name, o, o),
                        b.add_morphism(name + ">" + std::to_string(i), o, i),
                        b.add_morphism(name + ">" + std::to_string(j), o, j)};
      b.set_identity(o, arrows.id);
      pairs.push_back(arrows);
      map.on_objects.push_back(pb->apex);
      map.on_morphisms.push_back(base.identity(pb->apex));
      map.on_morphisms.push_back(pb->along);
      map.on_morphisms.push_back(pb->over);
    }
  }
  std::vector<char> is_id(b.morphism_count(), 0);
  for (int i = 0; i < k; ++i) is_id[i] = 1;
  for (const PairArrows& p : pairs) is_id[p.id] = 1;
  for (MorId u = 0; u < b.morphism_count(); ++u) {
    for (MorId v = 0; v < b.morphism_count(); ++v) {
      if (b.arrow(v).src != b.arrow(u).tgt) continue;
      if (is_id[u])
        b.set_comp(v, u, v);
      else if (is_id[v])
        b.set_comp(v, u, u);
    }
  }
  return Diagram{b.build(), std::move(map)};
}

MatchingJoin matching_join(const MCategory& mc, ObjId c, const std::vector<MorId>& family) {
  const FinCategory& base = mc.base();
  Diagram d = matching_diagram(mc, c, family);
  MatchingJoin out;
  out.colimit = colimit(base, d);
  if (!out.colimit) return out;
  Cocone to_c{c, {}};
  for (int s = 0; s < d.shape.object_count(); ++s) {
    if (s < static_cast<int>(family.size())) {
      to_c.legs.push_back(family[s]);
    } else {
      // The first non-identity arrow out of a pair object goes to its i.
      for (MorId u : d.shape.out_of(s)) {
        if (d.shape.is_identity(u)) continue;
        to_c.legs.push_back(base.compose(family[d.shape.tgt(u)], d.map.on_morphisms[u]));
        break;
      }
    }
  }
  for (MorId u : base.hom(out.colimit->apex, c)) {
    bool ok = true;
    for (std::size_t s = 0; s < to_c.legs.size() && ok; ++s)
      ok = base.comp_entry(u, out.colimit->legs[s]) == to_c.legs[s];
    if (ok) {
      out.induced = u;
      break;
    }
  }
  if (out.induced == kNone) throw InvariantError("matching_join: colimit has no induced map");
  out.induced_in_m = mc.in_m(out.induced);
  if (out.induced_in_m) out.rep = mc.subobject_rep(out.induced);
  return out;
}

std::optional<MorId> sub_join(const MCategory& mc, ObjId c, const std::vector<MorId>& family) {
  auto key = std::make_pair(c, family);
  {
    std::lock_guard<std::mutex> lock(mc.join_memo_->mutex);
    auto it = mc.join_memo_->joins.find(key);
    if (it != mc.join_memo_->joins.end()) return it->second;
  }
  MatchingJoin j = matching_join(mc, c, family);
  std::optional<MorId> out;
  if (j.colimit && j.induced_in_m) out = j.rep;
  std::lock_guard<std::mutex> lock(mc.join_memo_->mutex);
  mc.join_memo_->joins.emplace(std::move(key), out);
  return out;
}

void for_each_subobject_family(const MCategory& mc, ObjId c, int max_size,
                               const std::function<void(const std::vector<MorId>&)>& visit) {
  const auto& subs = mc.subobjects(c);
  const int n = static_cast<int>(subs.size());
  const int limit = max_size < 0 ? n : std::min(n, max_size);
  std::vector<MorId> current;
  std::function<void(int, int)> choose = [&](int from, int remaining) {
    if (remaining == 0) {
      visit(current);
      return;
    }
    for (int i = from; i <= n - remaining; ++i) {
      current.push_back(subs[i]);
      choose(i + 1, remaining - 1);
      current.pop_back();
    }
  };
  for (int k = 0; k <= limit; ++k) choose(0, k);
}

LawReport is_geometric(const MCategory& mc, const GeometricOptions& options) {
  const FinCategory& base = mc.base();
  LawReport report;
  for (ObjId c = 0; c < base.object_count(); ++c) {
    bool failed = false;
    for_each_subobject_family(mc, c, options.max_family, [&](const std::vector<MorId>& family) {
      if (failed) return;
      const std::string label = family.empty() ? "empty family" : "family of " + std::to_string(family.size());
      MatchingJoin j = matching_join(mc, c, family);
      if (!j.colimit) {
        report.add("GEO1", tagged({c}, family), label);
        failed = true;
        return;
      }
      if (!j.induced_in_m) {
        report.add("GEO2", tagged({c}, family), label);
        failed = true;
        return;
      }
      for (MorId f : base.into(c)) {
        MorId lhs = pullback_subobject(mc, f, j.rep);
        std::vector<MorId> pulled;
        for (MorId m : family) pulled.push_back(pullback_subobject(mc, f, m));
        auto rhs = sub_join(mc, base.src(f), sorted_unique(pulled));
        if (!rhs || *rhs != lhs) {
          report.add("GEO3", tagged({c}, family), label + ", along " + base.morphism_name(f));
          failed = true;
          return;
        }
      }
    });
  }
  return report;
}

LawReport heyting_check(const MCategory& mc, ObjId c, const GeometricOptions& options) {
  LawReport report;
  for_each_subobject_family(mc, c, options.max_family, [&](const std::vector<MorId>& family) {
    auto j = sub_join(mc, c, family);
    if (!j) {
      report.add("HEYT-JOIN", tagged({c}, family));
      return;
    }
    for (MorId m : mc.subobjects(c)) {
      std::vector<MorId> meets;
      for (MorId n : family) meets.push_back(sub_meet(mc, m, n));
      auto rhs = sub_join(mc, c, sorted_unique(meets));
      if (!rhs || *rhs != sub_meet(mc, m, *j)) report.add("HEYT-DIST", tagged({c, m}, family));
    }
  });
  return report;
}

LawReport pullback_preserves_joins(const MCategory& mc, MorId f, const GeometricOptions& options) {
  const FinCategory& base = mc.base();
  LawReport report;
  for_each_subobject_family(mc, base.tgt(f), options.max_family, [&](const std::vector<MorId>& family) {
    auto j = sub_join(mc, base.tgt(f), family);
    if (!j) {
      report.add("PB-JOIN", tagged({f}, family), "join missing");
      return;
    }
    std::vector<MorId> pulled;
    for (MorId m : family) pulled.push_back(pullback_subobject(mc, f, m));
    auto rhs = sub_join(mc, base.src(f), sorted_unique(pulled));
    if (!rhs || *rhs != pullback_subobject(mc, f, *j)) report.add("PB-JOIN", tagged({f}, family));
  });
  return report;
}

}  // namespace jrcat
