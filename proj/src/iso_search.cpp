#include <algorithm>
#include <tuple>

#include "jrcat/core_cat.hpp"

namespace jrcat {

namespace {

using Feature = std::tuple<int, int, int, int, int, int, int, int, int>;

Feature morphism_feature(const FinCategory& c, MorId f, const std::vector<MorId>& bar,
                         const std::vector<int>& colour) {
  const ObjId s = c.src(f);
  const ObjId t = c.tgt(f);
  int endo = s == t ? 1 : 0;
  int idem = endo && c.comp_entry(f, f) == f ? 1 : 0;
  int left_fix = 0;
  for (MorId g : c.hom(t, t)) left_fix += c.comp_entry(g, f) == f;
  int right_fix = 0;
  for (MorId h : c.hom(s, s)) right_fix += c.comp_entry(f, h) == f;
  int restriction_idem = bar.empty() ? 0 : (bar[f] == f ? 1 : 0);
  int total = bar.empty() ? 0 : (bar[f] == c.identity(s) ? 1 : 0);
  int col = colour.empty() ? 0 : colour[f];
  return {c.is_identity(f) ? 1 : 0, endo, idem, c.is_iso(f) ? 1 : 0, left_fix, right_fix,
          restriction_idem, total, col};
}

class MorphismSearch {
 public:
  MorphismSearch(const FinCategory& a, const FinCategory& b, const IsoConstraints& k,
                 const std::vector<ObjId>& sigma)
      : a_(a), b_(b), k_(k), sigma_(sigma) {
    use_bar_ = !k.bar_from.empty() && !k.bar_to.empty();
    bool use_colour = !k.colour_from.empty() && !k.colour_to.empty();
    std::vector<MorId> no_bar;
    std::vector<int> no_colour;
    for (int f = 0; f < a.morphism_count(); ++f)
      fa_.push_back(morphism_feature(a, f, use_bar_ ? k.bar_from : no_bar,
                                     use_colour ? k.colour_from : no_colour));
    for (int g = 0; g < b.morphism_count(); ++g)
      fb_.push_back(morphism_feature(b, g, use_bar_ ? k.bar_to : no_bar,
                                     use_colour ? k.colour_to : no_colour));
    forward_.assign(a.morphism_count(), kNone);
    backward_.assign(b.morphism_count(), kNone);
  }

  std::optional<Functor> run() {
    std::vector<std::pair<MorId, MorId>> seeds;
    for (int x = 0; x < a_.object_count(); ++x)
      seeds.push_back({a_.identity(x), b_.identity(sigma_[x])});
    if (!propagate(seeds)) return std::nullopt;
    if (!search()) return std::nullopt;
    return Functor{sigma_, forward_};
  }

 private:
  bool propagate(std::vector<std::pair<MorId, MorId>> work) {
    while (!work.empty()) {
      auto [f, g] = work.back();
      work.pop_back();
      if (f == kNone || g == kNone) return false;
      if (forward_[f] == g) continue;
      if (forward_[f] != kNone || backward_[g] != kNone) return false;
      if (b_.src(g) != sigma_[a_.src(f)] || b_.tgt(g) != sigma_[a_.tgt(f)]) return false;
      if (fa_[f] != fb_[g]) return false;
      forward_[f] = g;
      backward_[g] = f;
      trail_.push_back(f);
      for (MorId h : a_.out_of(a_.tgt(f))) {
        if (forward_[h] == kNone) continue;
        work.push_back({a_.comp_entry(h, f), b_.comp_entry(forward_[h], g)});
      }
      for (MorId h : a_.into(a_.src(f))) {
        if (forward_[h] == kNone) continue;
        work.push_back({a_.comp_entry(f, h), b_.comp_entry(g, forward_[h])});
      }
      if (use_bar_) work.push_back({k_.bar_from[f], k_.bar_to[g]});
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      MorId f = trail_.back();
      trail_.pop_back();
      backward_[forward_[f]] = kNone;
      forward_[f] = kNone;
    }
  }

  bool search() {
    MorId next = kNone;
    for (int f = 0; f < a_.morphism_count(); ++f) {
      if (forward_[f] == kNone) {
        next = f;
        break;
      }
    }
    if (next == kNone) return true;
    for (MorId g : b_.hom(sigma_[a_.src(next)], sigma_[a_.tgt(next)])) {
      if (backward_[g] != kNone || fa_[next] != fb_[g]) continue;
      std::size_t mark = trail_.size();
      if (propagate({{next, g}}) && search()) return true;
      undo(mark);
    }
    return false;
  }

  const FinCategory& a_;
  const FinCategory& b_;
  const IsoConstraints& k_;
  const std::vector<ObjId>& sigma_;
  bool use_bar_ = false;
  std::vector<Feature> fa_;
  std::vector<Feature> fb_;
  std::vector<MorId> forward_;
  std::vector<MorId> backward_;
  std::vector<MorId> trail_;
};

bool objects_compatible(const FinCategory& a, const FinCategory& b,
                        const std::vector<ObjId>& sigma, ObjId x) {
  for (ObjId y = 0; y <= x; ++y) {
    if (a.hom(x, y).size() != b.hom(sigma[x], sigma[y]).size()) return false;
    if (a.hom(y, x).size() != b.hom(sigma[y], sigma[x]).size()) return false;
  }
  return true;
}

std::optional<Functor> search_objects(const FinCategory& a, const FinCategory& b,
                                      const IsoConstraints& k, std::vector<ObjId>& sigma,
                                      std::vector<char>& used, ObjId x) {
  if (x == a.object_count()) return MorphismSearch(a, b, k, sigma).run();
  for (ObjId y = 0; y < b.object_count(); ++y) {
    if (used[y]) continue;
    sigma[x] = y;
    if (!objects_compatible(a, b, sigma, x)) continue;
    used[y] = 1;
    auto found = search_objects(a, b, k, sigma, used, x + 1);
    used[y] = 0;
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Functor> find_isomorphism(const FinCategory& a, const FinCategory& b,
                                        const IsoConstraints& constraints) {
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count())
    return std::nullopt;
  std::vector<ObjId> sigma(a.object_count(), kNone);
  std::vector<char> used(b.object_count(), 0);
  auto found = search_objects(a, b, constraints, sigma, used, 0);
  if (found && !check_functor(a, b, *found).ok()) return std::nullopt;
  return found;
}

}  // namespace jrcat
