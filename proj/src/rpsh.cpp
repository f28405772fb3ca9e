#include "jrcat/rpsh.hpp"

#include <algorithm>
#include <sstream>

#include "jrcat/errors.hpp"
#include "jrcat/join.hpp"

namespace jrcat {

namespace {

std::vector<SecId> sorted_unique(std::vector<SecId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> ids_with(std::initializer_list<int> head, const std::vector<int>& tail) {
  std::vector<int> ids(head);
  ids.insert(ids.end(), tail.begin(), tail.end());
  return ids;
}

std::optional<MorId> map_lub(const RestrictionCategory& x, ObjId a, ObjId b,
                             const std::vector<MorId>& family) {
  return join(x, CompatibleFamily::make(x, a, b, family));
}

}  // namespace

LawReport check_rp_axioms(const RestrictionCategory& x, const RestrictionPresheaf& p) {
  const FinCategory& c = x.base();
  LawReport report;
  bool shaped = static_cast<int>(p.bar.size()) == c.object_count();
  for (ObjId a = 0; shaped && a < c.object_count(); ++a) {
    if (static_cast<int>(p.bar[a].size()) != p.base.size(a)) {
      report.add("RP-SHAPE", {a});
      shaped = false;
      break;
    }
    for (SecId s = 0; s < p.base.size(a); ++s) {
      MorId e = p.bar[a][s];
      if (e < 0 || e >= c.morphism_count() || c.src(e) != a || c.tgt(e) != a) {
        report.add("RP-SHAPE", {a, s});
        shaped = false;
      }
    }
  }
  if (!shaped) {
    if (report.ok()) report.add("RP-SHAPE", {});
    return report;
  }
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (SecId s = 0; s < p.base.size(a); ++s) {
      const MorId e = p.bar[a][s];
      if (x.bar(e) != e) report.add("RP0", {a, s});
      if (p.base.act(e, s) != s) report.add("RP1", {a, s});
      for (MorId f : c.out_of(a)) {
        const MorId fb = x.bar(f);
        if (p.bar[a][p.base.act(fb, s)] != c.compose(e, fb)) report.add("RP2", {a, s, f});
      }
      for (MorId g : c.into(a)) {
        const ObjId b = c.src(g);
        const MorId sg_bar = p.bar[b][p.base.act(g, s)];
        if (c.compose(e, g) != c.compose(g, sg_bar)) report.add("RP3", {a, s, g});
        if (c.compose(x.bar(g), sg_bar) != sg_bar) report.add("RP-L1", {a, s, g});
        if (x.bar(c.compose(e, g)) != sg_bar) report.add("RP-L2", {a, s, g});
      }
    }
  }
  return report;
}

namespace {

void require_same_object(Element u, Element v, const char* op) {
  if (u.object != v.object) {
    std::ostringstream os;
    os << op << ": elements live over different objects " << u.object << " and " << v.object;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

bool element_leq(const RestrictionCategory&, const RestrictionPresheaf& p, Element u, Element v) {
  require_same_object(u, v, "element_leq");
  const auto& bars = p.bar.at(u.object);
  return p.base.act(bars.at(u.section), v.section) == u.section;
}

bool element_compatible(const RestrictionCategory&, const RestrictionPresheaf& p, Element u,
                        Element v) {
  require_same_object(u, v, "element_compatible");
  const auto& bars = p.bar.at(u.object);
  return p.base.act(bars.at(v.section), u.section) == p.base.act(bars.at(u.section), v.section);
}

void for_each_compatible_sections(const RestrictionCategory& x, const RestrictionPresheaf& p,
                                  ObjId a, int max_size,
                                  const std::function<void(const std::vector<SecId>&)>& visit) {
  const int n = p.base.size(a);
  std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
  for (SecId i = 0; i < n; ++i)
    for (SecId j = 0; j < n; ++j) ok[i][j] = element_compatible(x, p, {a, i}, {a, j});
  std::vector<SecId> current;
  std::function<void(SecId)> grow = [&](SecId from) {
    visit(current);
    if (max_size >= 0 && static_cast<int>(current.size()) >= max_size) return;
    for (SecId i = from; i < n; ++i) {
      if (!std::all_of(current.begin(), current.end(), [&](SecId j) { return ok[i][j]; })) continue;
      current.push_back(i);
      grow(i + 1);
      current.pop_back();
    }
  };
  grow(0);
}

std::optional<SecId> element_lub(const RestrictionCategory& x, const RestrictionPresheaf& p,
                                 ObjId a, const std::vector<SecId>& family) {
  std::vector<SecId> ub;
  for (SecId u = 0; u < p.base.size(a); ++u) {
    if (std::all_of(family.begin(), family.end(),
                    [&](SecId s) { return element_leq(x, p, {a, s}, {a, u}); }))
      ub.push_back(u);
  }
  for (SecId u : ub) {
    if (std::all_of(ub.begin(), ub.end(),
                    [&](SecId v) { return element_leq(x, p, {a, u}, {a, v}); }))
      return u;
  }
  return std::nullopt;
}

std::optional<SecId> JoinRestrictionPresheaf::join(ObjId a, const std::vector<SecId>& family) const {
  const auto& table = joins.at(a);
  auto it = table.find(sorted_unique(family));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

JoinRestrictionPresheaf with_searched_joins(const RestrictionCategory& x,
                                            const RestrictionPresheaf& p, int max_family) {
  JoinRestrictionPresheaf out{p, {}};
  out.joins.resize(x.base().object_count());
  for (ObjId a = 0; a < x.base().object_count(); ++a) {
    for_each_compatible_sections(x, p, a, max_family, [&](const std::vector<SecId>& s) {
      if (auto j = element_lub(x, p, a, s)) out.joins[a][s] = *j;
    });
  }
  return out;
}

LawReport check_jrp_axioms(const RestrictionCategory& x, const JoinRestrictionPresheaf& p,
                           const JrpCheckOptions& options) {
  const FinCategory& c = x.base();
  const RestrictionPresheaf& rp = p.rp;
  LawReport report;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for_each_compatible_sections(x, rp, a, options.max_family, [&](const std::vector<SecId>& s) {
      auto j = p.join(a, s);
      if (!j) {
        report.add("JRP-MISSING", ids_with({a}, s));
        return;
      }
      auto lub = element_lub(x, rp, a, s);
      if (!lub || *lub != *j) report.add("JRP-LUB", ids_with({a}, s));
      std::vector<MorId> bars;
      for (SecId e : s) bars.push_back(rp.bar[a][e]);
      auto bar_join = map_lub(x, a, a, bars);
      if (!bar_join || *bar_join != rp.bar[a][*j]) report.add("JRP1", ids_with({a}, s));
      for (MorId g : c.into(a)) {
        std::vector<SecId> moved;
        for (SecId e : s) moved.push_back(rp.base.act(g, e));
        auto rhs = p.join(c.src(g), sorted_unique(moved));
        if (!rhs || *rhs != rp.base.act(g, *j)) report.add("JRP2", ids_with({a, g}, s));
      }
    });
    for (SecId e = 0; e < rp.base.size(a); ++e) {
      for (ObjId b = 0; b < c.object_count(); ++b) {
        for_each_compatible_family(x, b, a, options.max_family, [&](const std::vector<MorId>& t) {
          auto tj = map_lub(x, b, a, t);
          if (!tj) return;
          std::vector<SecId> acted;
          for (MorId m : t) acted.push_back(rp.base.act(m, e));
          auto rhs = p.join(b, sorted_unique(acted));
          if (!rhs || *rhs != rp.base.act(*tj, e)) report.add("JRP-ACT", ids_with({a, e}, t));
        });
      }
    }
  }
  return report;
}

RestrictionCategory collage(const RestrictionCategory& x, const RestrictionPresheaf& p) {
  const FinCategory& c = x.base();
  CategoryBuilder b;
  for (ObjId a = 0; a < c.object_count(); ++a) b.add_object(c.object_name(a));
  const ObjId star = b.add_object("*");
  for (MorId f = 0; f < c.morphism_count(); ++f) b.add_morphism(c.morphism_name(f), c.src(f), c.tgt(f));
  std::vector<std::vector<MorId>> element(c.object_count());
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (SecId s = 0; s < p.base.size(a); ++s)
      element[a].push_back(b.add_morphism(p.base.label(a, s) + "@" + c.object_name(a), a, star));
  }
  const MorId one = b.add_morphism("1_*", star, star);
  for (ObjId a = 0; a < c.object_count(); ++a) b.set_identity(a, c.identity(a));
  b.set_identity(star, one);
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (MorId g : c.out_of(c.tgt(f))) b.set_comp(g, f, c.compose(g, f));
    for (SecId s = 0; s < p.base.size(c.tgt(f)); ++s)
      b.set_comp(element[c.tgt(f)][s], f, element[c.src(f)][p.base.act(f, s)]);
  }
  for (ObjId a = 0; a < c.object_count(); ++a)
    for (MorId e : element[a]) b.set_comp(one, e, e);
  b.set_comp(one, one, one);

  std::vector<MorId> bar(x.bar_table());
  for (ObjId a = 0; a < c.object_count(); ++a)
    for (SecId s = 0; s < p.base.size(a); ++s) bar.push_back(p.bar.at(a).at(s));
  bar.push_back(one);
  return RestrictionCategory(b.build(), std::move(bar));
}

namespace {

void require_natural(const RestrictionCategory& x, const RestrictionPresheaf& p,
                     const RestrictionPresheaf& q, const NatTrans& alpha, const char* op) {
  LawReport r = check_natural(x.base(), p.base, q.base, alpha);
  if (!r.ok()) throw NotNatural(std::string(op) + ": transformation is not natural: " + r.lines().front());
}

}  // namespace

NatTrans hom_restriction(const RestrictionCategory& x, const RestrictionPresheaf& p,
                         const RestrictionPresheaf& q, const NatTrans& alpha) {
  require_natural(x, p, q, alpha, "hom_restriction");
  NatTrans out;
  for (ObjId a = 0; a < x.base().object_count(); ++a) {
    std::vector<SecId> row;
    for (SecId s = 0; s < p.base.size(a); ++s) row.push_back(p.base.act(q.bar[a][alpha.at(a, s)], s));
    out.components.push_back(std::move(row));
  }
  return out;
}

bool nat_leq(const RestrictionCategory& x, const RestrictionPresheaf& p,
             const RestrictionPresheaf& q, const NatTrans& alpha, const NatTrans& beta) {
  return compose_nat(beta, hom_restriction(x, p, q, alpha)) == alpha;
}

bool nat_compatible(const RestrictionCategory& x, const RestrictionPresheaf& p,
                    const RestrictionPresheaf& q, const NatTrans& alpha, const NatTrans& beta) {
  return compose_nat(alpha, hom_restriction(x, p, q, beta)) ==
         compose_nat(beta, hom_restriction(x, p, q, alpha));
}

NatTrans nat_join(const RestrictionCategory& x, const RestrictionPresheaf& p,
                  const JoinRestrictionPresheaf& q, const std::vector<NatTrans>& family) {
  for (const NatTrans& alpha : family) require_natural(x, p, q.rp, alpha, "nat_join");
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (!nat_compatible(x, p, q.rp, family[i], family[j]))
        throw IncompatibleFamily("nat_join: transformations are not compatible");
    }
  }
  NatTrans out;
  for (ObjId a = 0; a < x.base().object_count(); ++a) {
    std::vector<SecId> row;
    for (SecId s = 0; s < p.base.size(a); ++s) {
      std::vector<SecId> values;
      for (const NatTrans& alpha : family) values.push_back(alpha.at(a, s));
      auto j = q.join(a, sorted_unique(values));
      if (!j) throw InvariantError("nat_join: codomain lacks a join");
      row.push_back(*j);
    }
    out.components.push_back(std::move(row));
  }
  return out;
}

JoinRestrictionPresheaf yoneda_jr(const RestrictionCategory& x, ObjId a, int max_family) {
  const FinCategory& c = x.base();
  JoinRestrictionPresheaf out;
  out.rp.base = representable(c, a);
  out.joins.resize(c.object_count());
  for (ObjId b = 0; b < c.object_count(); ++b) {
    std::vector<MorId> bars;
    for (MorId f : c.hom(b, a)) bars.push_back(x.bar(f));
    out.rp.bar.push_back(std::move(bars));
    for_each_compatible_family(x, b, a, max_family, [&](const std::vector<MorId>& t) {
      auto j = map_lub(x, b, a, t);
      if (!j) return;
      std::vector<SecId> key;
      for (MorId f : t) key.push_back(representable_section(c, a, f));
      out.joins[b][key] = representable_section(c, a, *j);
    });
  }
  return out;
}

}  // namespace jrcat
