#include "jrcat/presheaf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "jrcat/errors.hpp"

namespace jrcat {

std::string Presheaf::label(ObjId a, SecId x) const {
  if (a < static_cast<int>(labels.size()) && x < static_cast<int>(labels[a].size()))
    return labels[a][x];
  return std::to_string(x);
}

int Presheaf::total_size() const {
  int n = 0;
  for (int s : sizes) n += s;
  return n;
}

LawReport check_presheaf(const FinCategory& c, const Presheaf& p) {
  LawReport report;
  if (static_cast<int>(p.sizes.size()) != c.object_count() ||
      static_cast<int>(p.action.size()) != c.morphism_count()) {
    report.add("PSH-SHAPE", {});
    return report;
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (static_cast<int>(p.action[f].size()) != p.size(c.tgt(f))) {
      report.add("PSH-SHAPE", {f});
      return report;
    }
    for (SecId y = 0; y < p.size(c.tgt(f)); ++y) {
      SecId v = p.action[f][y];
      if (v < 0 || v >= p.size(c.src(f))) report.add("PSH-RANGE", {f, y});
    }
  }
  if (!report.ok()) return report;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (SecId x = 0; x < p.size(a); ++x) {
      if (p.act(c.identity(a), x) != x) report.add("PSH-ID", {a, x});
    }
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (MorId g : c.out_of(c.tgt(f))) {
      MorId gf = c.compose(g, f);
      for (SecId z = 0; z < p.size(c.tgt(g)); ++z) {
        if (p.act(gf, z) != p.act(f, p.act(g, z))) report.add("PSH-COMP", {g, f, z});
      }
    }
  }
  return report;
}

LawReport check_natural(const FinCategory& c, const Presheaf& p, const Presheaf& q,
                        const NatTrans& alpha) {
  LawReport report;
  if (static_cast<int>(alpha.components.size()) != c.object_count()) {
    report.add("NAT-SHAPE", {});
    return report;
  }
  for (ObjId a = 0; a < c.object_count(); ++a) {
    bool ok = static_cast<int>(alpha.components[a].size()) == p.size(a);
    for (SecId v : alpha.components[a]) ok = ok && v >= 0 && v < q.size(a);
    if (!ok) report.add("NAT-SHAPE", {a});
  }
  if (!report.ok()) return report;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (SecId y = 0; y < p.size(c.tgt(f)); ++y) {
      if (q.act(f, alpha.at(c.tgt(f), y)) != alpha.at(c.src(f), p.act(f, y)))
        report.add("NAT", {f, y});
    }
  }
  return report;
}

NatTrans identity_nat(const Presheaf& p) {
  NatTrans id;
  for (int n : p.sizes) {
    std::vector<SecId> row(n);
    for (int i = 0; i < n; ++i) row[i] = i;
    id.components.push_back(std::move(row));
  }
  return id;
}

NatTrans compose_nat(const NatTrans& beta, const NatTrans& alpha) {
  NatTrans out;
  for (std::size_t a = 0; a < alpha.components.size(); ++a) {
    std::vector<SecId> row;
    for (SecId v : alpha.components[a]) row.push_back(beta.components.at(a).at(v));
    out.components.push_back(std::move(row));
  }
  return out;
}

bool is_componentwise_injective(const NatTrans& alpha) {
  for (const auto& row : alpha.components) {
    std::set<SecId> seen(row.begin(), row.end());
    if (seen.size() != row.size()) return false;
  }
  return true;
}

bool is_bijective(const NatTrans& alpha, const Presheaf& q) {
  if (alpha.components.size() != q.sizes.size()) return false;
  for (std::size_t a = 0; a < q.sizes.size(); ++a) {
    if (static_cast<int>(alpha.components[a].size()) != q.sizes[a]) return false;
  }
  return is_componentwise_injective(alpha);
}

NatTrans inverse_nat(const NatTrans& alpha, const Presheaf& q) {
  if (!is_bijective(alpha, q)) throw InvalidArgument("inverse_nat: transformation is not bijective");
  NatTrans inv;
  for (const auto& row : alpha.components) {
    std::vector<SecId> back(row.size());
    for (std::size_t x = 0; x < row.size(); ++x) back[row[x]] = static_cast<SecId>(x);
    inv.components.push_back(std::move(back));
  }
  return inv;
}

namespace {

// Backtracking over section assignments with naturality propagation: once
// α_a(x) = v is fixed, α_b(x·f) = v·f follows for every f: b → a.
class NatSearch {
 public:
  NatSearch(const FinCategory& c, const Presheaf& p, const Presheaf& q, bool bijective,
            const NatIsoOptions* iso)
      : c_(c), p_(p), q_(q), bijective_(bijective), iso_(iso) {
    for (ObjId a = 0; a < c.object_count(); ++a) {
      value_.push_back(std::vector<SecId>(p.size(a), kNone));
      used_.push_back(std::vector<char>(q.size(a), 0));
    }
    // Objects with many incoming maps first: their sections force the most.
    std::vector<ObjId> objects(c.object_count());
    for (ObjId a = 0; a < c.object_count(); ++a) objects[a] = a;
    std::stable_sort(objects.begin(), objects.end(), [&](ObjId a, ObjId b) {
      return c.into(a).size() > c.into(b).size();
    });
    for (ObjId a : objects)
      for (SecId x = 0; x < p.size(a); ++x) order_.push_back({a, x});
  }

  void set_random(std::mt19937_64* rng) { rng_ = rng; }

  bool seed(ObjId a, SecId x, SecId v) { return assign(a, x, v); }

  // Visits every completion; `visit` returns false to stop.
  void run(const std::function<bool(const NatTrans&)>& visit) {
    stop_ = false;
    dfs(0, visit);
  }

 private:
  bool allowed(ObjId a, SecId x, SecId v) const {
    if (bijective_ && used_[a][v]) return false;
    if (iso_ && iso_->bar_from && iso_->bar_to && (*iso_->bar_from)[a][x] != (*iso_->bar_to)[a][v])
      return false;
    return true;
  }

  bool assign(ObjId a0, SecId x0, SecId v0) {
    std::vector<std::tuple<ObjId, SecId, SecId>> work{{a0, x0, v0}};
    while (!work.empty()) {
      auto [a, x, v] = work.back();
      work.pop_back();
      if (value_[a][x] == v) continue;
      if (value_[a][x] != kNone || !allowed(a, x, v)) return false;
      value_[a][x] = v;
      used_[a][v] = 1;
      trail_.push_back({a, x});
      for (MorId f : c_.into(a)) work.push_back({c_.src(f), p_.act(f, x), q_.act(f, v)});
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [a, x] = trail_.back();
      trail_.pop_back();
      used_[a][value_[a][x]] = 0;
      value_[a][x] = kNone;
    }
  }

  void dfs(std::size_t pos, const std::function<bool(const NatTrans&)>& visit) {
    while (pos < order_.size() && value_[order_[pos].first][order_[pos].second] != kNone) ++pos;
    if (pos == order_.size()) {
      if (!visit(NatTrans{value_})) stop_ = true;
      return;
    }
    auto [a, x] = order_[pos];
    std::vector<SecId> candidates(q_.size(a));
    for (SecId v = 0; v < q_.size(a); ++v) candidates[v] = v;
    if (rng_) std::shuffle(candidates.begin(), candidates.end(), *rng_);
    for (SecId v : candidates) {
      if (stop_) return;
      std::size_t mark = trail_.size();
      if (assign(a, x, v)) dfs(pos + 1, visit);
      undo(mark);
    }
  }

  const FinCategory& c_;
  const Presheaf& p_;
  const Presheaf& q_;
  bool bijective_;
  const NatIsoOptions* iso_;
  std::mt19937_64* rng_ = nullptr;
  std::vector<std::vector<SecId>> value_;
  std::vector<std::vector<char>> used_;
  std::vector<std::pair<ObjId, SecId>> order_;
  std::vector<std::pair<ObjId, SecId>> trail_;
  bool stop_ = false;
};

}  // namespace

std::vector<NatTrans> enumerate_nat_trans(const FinCategory& c, const Presheaf& p,
                                          const Presheaf& q, const NatEnumOptions& options) {
  double log_count = 0;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    if (p.size(a) > 0 && q.size(a) == 0) return {};
    if (q.size(a) > 0) log_count += p.size(a) * std::log(static_cast<double>(q.size(a)));
  }
  std::vector<NatTrans> out;
  NatSearch search(c, p, q, false, nullptr);
  std::mt19937_64 rng(options.seed);
  const bool exhaustive = log_count <= std::log(options.exhaustive_limit);
  if (!exhaustive) search.set_random(&rng);
  search.run([&](const NatTrans& t) {
    out.push_back(t);
    return exhaustive || static_cast<int>(out.size()) < options.samples;
  });
  return out;
}

std::optional<NatTrans> find_natural_iso(const FinCategory& c, const Presheaf& p,
                                         const Presheaf& q, const NatIsoOptions& options) {
  if (p.sizes != q.sizes) return std::nullopt;
  NatSearch search(c, p, q, true, &options);
  for (auto [a, x, v] : options.pins) {
    if (!search.seed(a, x, v)) return std::nullopt;
  }
  std::optional<NatTrans> found;
  search.run([&](const NatTrans& t) {
    found = t;
    return false;
  });
  return found;
}

Presheaf representable(const FinCategory& c, ObjId a) {
  Presheaf p;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    p.sizes.push_back(static_cast<int>(c.hom(x, a).size()));
    std::vector<std::string> names;
    for (MorId f : c.hom(x, a)) names.push_back(c.morphism_name(f));
    p.labels.push_back(std::move(names));
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    std::vector<SecId> row;
    for (MorId y : c.hom(c.tgt(f), a)) row.push_back(representable_section(c, a, c.compose(y, f)));
    p.action.push_back(std::move(row));
  }
  return p;
}

SecId representable_section(const FinCategory& c, ObjId a, MorId f) {
  auto hom = c.hom(c.src(f), a);
  auto it = std::find(hom.begin(), hom.end(), f);
  if (it == hom.end()) throw InvalidArgument("representable_section: morphism has the wrong target");
  return static_cast<SecId>(it - hom.begin());
}

NatTrans yoneda_nat(const FinCategory& c, MorId f) {
  NatTrans t;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    std::vector<SecId> row;
    for (MorId y : c.hom(x, c.src(f))) row.push_back(representable_section(c, c.tgt(f), c.compose(f, y)));
    t.components.push_back(std::move(row));
  }
  return t;
}

Presheaf constant_presheaf(const FinCategory& c, int k) {
  Presheaf p;
  p.sizes.assign(c.object_count(), k);
  std::vector<SecId> row(k);
  for (int i = 0; i < k; ++i) row[i] = i;
  p.action.assign(c.morphism_count(), row);
  return p;
}

Presheaf restrict_along(const FinCategory& from, const Functor& f, const Presheaf& p) {
  Presheaf out;
  for (ObjId a = 0; a < from.object_count(); ++a) {
    ObjId fa = f.on_objects.at(a);
    out.sizes.push_back(p.size(fa));
    if (!p.labels.empty()) out.labels.push_back(p.labels.at(fa));
  }
  for (MorId g = 0; g < from.morphism_count(); ++g) out.action.push_back(p.action.at(f.on_morphisms.at(g)));
  return out;
}

SubPresheaf subpresheaf(const FinCategory& c, const Presheaf& p,
                        const std::vector<std::vector<char>>& keep) {
  SubPresheaf s;
  std::vector<std::vector<SecId>> new_id;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    std::vector<SecId> ids(p.size(a), kNone);
    std::vector<SecId> incl;
    std::vector<std::string> names;
    for (SecId x = 0; x < p.size(a); ++x) {
      if (!keep.at(a).at(x)) continue;
      ids[x] = static_cast<SecId>(incl.size());
      incl.push_back(x);
      names.push_back(p.label(a, x));
    }
    s.presheaf.sizes.push_back(static_cast<int>(incl.size()));
    s.presheaf.labels.push_back(std::move(names));
    s.inclusion.components.push_back(std::move(incl));
    new_id.push_back(std::move(ids));
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    std::vector<SecId> row;
    for (SecId y : s.inclusion.components[c.tgt(f)]) {
      SecId v = new_id[c.src(f)][p.act(f, y)];
      if (v == kNone) throw InvalidArgument("subpresheaf: selection is not closed under the action");
      row.push_back(v);
    }
    s.presheaf.action.push_back(std::move(row));
  }
  return s;
}

std::optional<std::vector<SubPresheaf>> all_subpresheaves(const FinCategory& c, const Presheaf& p,
                                                          std::size_t limit) {
  using Mask = std::vector<std::vector<char>>;
  Mask empty;
  for (ObjId a = 0; a < c.object_count(); ++a) empty.push_back(std::vector<char>(p.size(a), 0));
  // Closure of a single section: everything it restricts to.
  std::vector<std::pair<ObjId, SecId>> elements;
  std::vector<Mask> closure;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (SecId x = 0; x < p.size(a); ++x) {
      Mask m = empty;
      for (MorId f : c.into(a)) m[c.src(f)][p.act(f, x)] = 1;
      elements.push_back({a, x});
      closure.push_back(std::move(m));
    }
  }
  std::set<Mask> seen{empty};
  std::deque<Mask> queue{empty};
  while (!queue.empty()) {
    Mask cur = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < elements.size(); ++e) {
      if (cur[elements[e].first][elements[e].second]) continue;
      Mask next = cur;
      for (ObjId a = 0; a < c.object_count(); ++a)
        for (SecId x = 0; x < p.size(a); ++x) next[a][x] = next[a][x] || closure[e][a][x];
      if (seen.insert(next).second) {
        if (seen.size() > limit) return std::nullopt;
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<SubPresheaf> out;
  for (const Mask& m : seen) out.push_back(subpresheaf(c, p, m));
  return out;
}

std::vector<std::vector<char>> image_of(const NatTrans& alpha, const Presheaf& q) {
  std::vector<std::vector<char>> mask;
  for (std::size_t a = 0; a < q.sizes.size(); ++a) {
    std::vector<char> row(q.sizes[a], 0);
    for (SecId v : alpha.components.at(a)) row.at(v) = 1;
    mask.push_back(std::move(row));
  }
  return mask;
}

}  // namespace jrcat
