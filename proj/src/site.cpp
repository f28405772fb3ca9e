#include "jrcat/site.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "jrcat/errors.hpp"

namespace jrcat {

namespace {

Sieve sorted(std::vector<MorId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool subset_of(const Sieve& s, const Sieve& t) {
  return std::includes(t.begin(), t.end(), s.begin(), s.end());
}

}  // namespace

Sieve maximal_sieve(const FinCategory& c, ObjId a) {
  auto into = c.into(a);
  return sorted({into.begin(), into.end()});
}

Sieve principal_sieve(const FinCategory& c, MorId f) {
  std::vector<MorId> out;
  for (MorId h : c.into(c.src(f))) out.push_back(c.compose(f, h));
  return sorted(std::move(out));
}

Sieve generated_sieve(const FinCategory& c, ObjId a, const std::vector<MorId>& family) {
  std::vector<MorId> out;
  for (MorId f : family) {
    if (c.tgt(f) != a) throw InvalidArgument("generated_sieve: family member has the wrong target");
    for (MorId h : c.into(c.src(f))) out.push_back(c.compose(f, h));
  }
  return sorted(std::move(out));
}

Sieve pullback_sieve(const FinCategory& c, const Sieve& s, MorId f) {
  std::vector<MorId> out;
  for (MorId h : c.into(c.src(f))) {
    if (std::binary_search(s.begin(), s.end(), c.compose(f, h))) out.push_back(h);
  }
  return sorted(std::move(out));
}

bool is_sieve(const FinCategory& c, ObjId a, const Sieve& s) {
  if (!std::is_sorted(s.begin(), s.end())) return false;
  for (MorId f : s) {
    if (c.tgt(f) != a) return false;
    for (MorId h : c.into(c.src(f))) {
      if (!std::binary_search(s.begin(), s.end(), c.compose(f, h))) return false;
    }
  }
  return true;
}

std::vector<Sieve> all_sieves(const FinCategory& c, ObjId a) {
  std::set<Sieve> seen{Sieve{}};
  std::deque<Sieve> queue{Sieve{}};
  while (!queue.empty()) {
    Sieve cur = queue.front();
    queue.pop_front();
    for (MorId f : c.into(a)) {
      if (std::binary_search(cur.begin(), cur.end(), f)) continue;
      Sieve p = principal_sieve(c, f);
      std::vector<MorId> merged = cur;
      merged.insert(merged.end(), p.begin(), p.end());
      Sieve next = sorted(std::move(merged));
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<Sieve> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const Sieve& x, const Sieve& y) { return x.size() < y.size(); });
  return out;
}

Topology saturate(const FinCategory& c, const std::vector<std::set<Sieve>>& seeds) {
  const int n = c.object_count();
  Topology t;
  t.covers.resize(n);
  std::vector<std::vector<Sieve>> sieves(n);
  for (ObjId a = 0; a < n; ++a) {
    if (a < static_cast<int>(seeds.size())) t.covers[a] = seeds[a];
    t.covers[a].insert(maximal_sieve(c, a));
    sieves[a] = all_sieves(c, a);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (ObjId a = 0; a < n; ++a) {
      for (const Sieve& s : std::vector<Sieve>(t.covers[a].begin(), t.covers[a].end())) {
        for (MorId f : c.into(a)) {
          if (t.covers[c.src(f)].insert(pullback_sieve(c, s, f)).second) changed = true;
        }
      }
    }
    for (ObjId a = 0; a < n; ++a) {
      for (const Sieve& r : sieves[a]) {
        if (t.covers_sieve(a, r)) continue;
        bool add = false;
        for (const Sieve& s : t.covers[a]) {
          if (subset_of(s, r)) {
            add = true;
            break;
          }
          bool locally = std::all_of(s.begin(), s.end(), [&](MorId f) {
            return t.covers_sieve(c.src(f), pullback_sieve(c, r, f));
          });
          if (locally) {
            add = true;
            break;
          }
        }
        if (add) {
          t.covers[a].insert(r);
          changed = true;
        }
      }
    }
  }
  return t;
}

Topology minimal_topology(const FinCategory& c) { return saturate(c, {}); }

LawReport check_topology(const FinCategory& c, const Topology& j) {
  LawReport report;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    if (!j.covers_sieve(a, maximal_sieve(c, a))) report.add("TOP-MAX", {a});
    const auto sieves = all_sieves(c, a);
    for (const Sieve& s : j.covers[a]) {
      for (MorId f : c.into(a)) {
        if (!j.covers_sieve(c.src(f), pullback_sieve(c, s, f))) report.add("TOP-STABLE", {f});
      }
    }
    for (const Sieve& r : sieves) {
      if (j.covers_sieve(a, r)) continue;
      for (const Sieve& s : j.covers[a]) {
        if (subset_of(s, r)) {
          report.add("TOP-UP", {a});
          break;
        }
        bool locally = std::all_of(s.begin(), s.end(), [&](MorId f) {
          return j.covers_sieve(c.src(f), pullback_sieve(c, r, f));
        });
        if (locally) {
          report.add("TOP-TRANS", {a});
          break;
        }
      }
    }
  }
  return report;
}

Sieve least_covering_sieve(const FinCategory& c, const Topology& j, ObjId a) {
  Sieve least = maximal_sieve(c, a);
  for (const Sieve& s : j.covers.at(a)) {
    Sieve meet;
    std::set_intersection(least.begin(), least.end(), s.begin(), s.end(), std::back_inserter(meet));
    least = std::move(meet);
  }
  if (!j.covers_sieve(a, least))
    throw InvariantError("least_covering_sieve: covers are not closed under intersection");
  return least;
}

std::vector<std::vector<std::vector<MorId>>> basis_covers(const MCategory& mc, int max_family) {
  if (!is_geometric(mc, {max_family}).ok())
    throw InvalidArgument("basis_covers: M-category is not geometric");
  const FinCategory& c = mc.base();
  std::vector<std::vector<std::vector<MorId>>> out(c.object_count());
  for (ObjId a = 0; a < c.object_count(); ++a) {
    const MorId top = mc.subobject_rep(c.identity(a));
    for_each_subobject_family(mc, a, max_family, [&](const std::vector<MorId>& family) {
      auto j = sub_join(mc, a, family);
      if (j && *j == top) out[a].push_back(family);
    });
  }
  return out;
}

Topology generate_topology(const MCategory& mc, int max_family) {
  const FinCategory& c = mc.base();
  auto covers = basis_covers(mc, max_family);
  std::vector<std::set<Sieve>> seeds(c.object_count());
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (const auto& family : covers[a]) seeds[a].insert(generated_sieve(c, a, family));
  }
  return saturate(c, seeds);
}

std::vector<MatchingFamily> matching_families(const FinCategory& c, const Presheaf& p,
                                              const Sieve& s) {
  const int k = static_cast<int>(s.size());
  std::map<MorId, int> pos;
  for (int i = 0; i < k; ++i) pos[s[i]] = i;
  // Maps with the most precomposites first: fixing them forces the rest.
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return c.into(c.src(s[x])).size() > c.into(c.src(s[y])).size();
  });
  MatchingFamily value(k, kNone);
  std::vector<int> trail;
  std::vector<MatchingFamily> out;

  auto assign = [&](int i0, SecId v0) {
    std::vector<std::pair<int, SecId>> work{{i0, v0}};
    while (!work.empty()) {
      auto [i, v] = work.back();
      work.pop_back();
      if (value[i] == v) continue;
      if (value[i] != kNone) return false;
      value[i] = v;
      trail.push_back(i);
      for (MorId h : c.into(c.src(s[i]))) work.push_back({pos.at(c.compose(s[i], h)), p.act(h, v)});
    }
    return true;
  };
  std::function<void(int)> dfs = [&](int from) {
    while (from < k && value[order[from]] != kNone) ++from;
    if (from == k) {
      out.push_back(value);
      return;
    }
    const int i = order[from];
    for (SecId v = 0; v < p.size(c.src(s[i])); ++v) {
      std::size_t mark = trail.size();
      if (assign(i, v)) dfs(from + 1);
      while (trail.size() > mark) {
        value[trail.back()] = kNone;
        trail.pop_back();
      }
    }
  };
  dfs(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SecId> amalgamations(const FinCategory&, const Presheaf& p, ObjId a,
                                 const Sieve& s, const MatchingFamily& family) {
  std::vector<SecId> out;
  for (SecId x = 0; x < p.size(a); ++x) {
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) ok = p.act(s[i], x) == family[i];
    if (ok) out.push_back(x);
  }
  return out;
}

SheafVerdict check_sheaf(const FinCategory& c, const Presheaf& p, const Topology& j) {
  SheafVerdict v;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (const Sieve& s : j.covers.at(a)) {
      for (const MatchingFamily& family : matching_families(c, p, s)) {
        const int n = static_cast<int>(amalgamations(c, p, a, s, family).size());
        if (n > 1) v.separated = false;
        if (n != 1) {
          v.sheaf = false;
          if (!v.failure) v.failure = SheafFailure{a, s, family, n};
        }
      }
    }
  }
  return v;
}

SigmaClassifier sigma_classifier(const MCategory& mc) {
  const FinCategory& c = mc.base();
  SigmaClassifier out;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    const auto& subs = mc.subobjects(a);
    out.sigma.sizes.push_back(static_cast<int>(subs.size()));
    out.subobject.push_back(subs);
    std::vector<std::string> names;
    for (MorId m : subs) names.push_back(c.morphism_name(m));
    out.sigma.labels.push_back(std::move(names));
    MorId top = mc.subobject_rep(c.identity(a));
    out.top.push_back(static_cast<SecId>(std::find(subs.begin(), subs.end(), top) - subs.begin()));
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const auto& subs_src = out.subobject[c.src(f)];
    std::vector<SecId> row;
    for (MorId m : out.subobject[c.tgt(f)]) {
      MorId pulled = pullback_subobject(mc, f, m);
      row.push_back(static_cast<SecId>(std::find(subs_src.begin(), subs_src.end(), pulled) -
                                       subs_src.begin()));
    }
    out.sigma.action.push_back(std::move(row));
  }
  return out;
}

std::vector<NatTrans> characteristic_maps(const MCategory& mc, const SigmaClassifier& sigma,
                                          const Presheaf& q, const NatTrans& mu) {
  const FinCategory& c = mc.base();
  const auto image = image_of(mu, q);
  std::vector<NatTrans> out;
  NatEnumOptions all;
  all.exhaustive_limit = 1e300;
  for (NatTrans& chi : enumerate_nat_trans(c, q, sigma.sigma, all)) {
    bool classifies = true;
    for (ObjId a = 0; a < c.object_count() && classifies; ++a) {
      for (SecId y = 0; y < q.size(a) && classifies; ++y)
        classifies = (chi.at(a, y) == sigma.top[a]) == (image[a][y] != 0);
    }
    if (classifies) out.push_back(std::move(chi));
  }
  return out;
}

bool m_psh_member(const MCategory& mc, const Presheaf& p, const Presheaf& q, const NatTrans& mu) {
  const FinCategory& c = mc.base();
  if (!check_natural(c, p, q, mu).ok()) throw InvalidArgument("m_psh_member: map is not natural");
  if (!is_componentwise_injective(mu)) throw InvalidArgument("m_psh_member: map is not a mono");
  const auto image = image_of(mu, q);
  for (ObjId b = 0; b < c.object_count(); ++b) {
    std::set<Sieve> allowed;
    for (MorId m : c.into(b)) {
      if (mc.in_m(m)) allowed.insert(principal_sieve(c, m));
    }
    for (SecId y = 0; y < q.size(b); ++y) {
      Sieve s;
      for (MorId f : c.into(b)) {
        if (image[c.src(f)][q.act(f, y)]) s.push_back(f);
      }
      std::sort(s.begin(), s.end());
      if (!allowed.count(s)) return false;
    }
  }
  return true;
}

}  // namespace jrcat
