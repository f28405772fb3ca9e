#include "jrcat/core_cat.hpp"

#include <algorithm>
#include <sstream>

#include "jrcat/errors.hpp"

namespace jrcat {

namespace {

std::string describe_arrow(const FinCategory& c, MorId f) {
  std::ostringstream os;
  os << "morphism " << f << " (" << c.morphism_name(f) << ")";
  return os.str();
}

}  // namespace

FinCategory::FinCategory(std::vector<std::string> object_names,
                         std::vector<std::string> morphism_names, std::vector<Arrow> arrows,
                         std::vector<MorId> identities, std::vector<MorId> comp_table)
    : object_names_(std::move(object_names)),
      morphism_names_(std::move(morphism_names)),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      comp_(std::move(comp_table)) {
  const int n_obj = object_count();
  const int n_mor = morphism_count();
  if (static_cast<int>(morphism_names_.size()) != n_mor)
    throw InvalidArgument("FinCategory: morphism name count differs from arrow count");
  if (static_cast<int>(identities_.size()) != n_obj)
    throw InvalidArgument("FinCategory: identity table must have one entry per object");
  if (comp_.size() != static_cast<std::size_t>(n_mor) * static_cast<std::size_t>(n_mor))
    throw InvalidArgument("FinCategory: composition table must be morphism_count^2");
  for (int f = 0; f < n_mor; ++f) {
    const Arrow& a = arrows_[f];
    if (a.src < 0 || a.src >= n_obj || a.tgt < 0 || a.tgt >= n_obj) {
      std::ostringstream os;
      os << "FinCategory: morphism " << f << " has a dangling endpoint";
      throw InvalidArgument(os.str());
    }
  }
  for (int a = 0; a < n_obj; ++a) {
    if (identities_[a] < 0 || identities_[a] >= n_mor) {
      std::ostringstream os;
      os << "FinCategory: object " << a << " has no identity";
      throw InvalidArgument(os.str());
    }
  }
  for (MorId e : comp_) {
    if (e != kNone && (e < 0 || e >= n_mor))
      throw InvalidArgument("FinCategory: composition table entry out of range");
  }

  hom_.assign(static_cast<std::size_t>(n_obj) * n_obj, {});
  into_.assign(n_obj, {});
  out_of_.assign(n_obj, {});
  for (int f = 0; f < n_mor; ++f) {
    const Arrow& a = arrows_[f];
    hom_[static_cast<std::size_t>(a.src) * n_obj + a.tgt].push_back(f);
    into_[a.tgt].push_back(f);
    out_of_[a.src].push_back(f);
  }
  inverse_.assign(n_mor, kNone);
  for (int f = 0; f < n_mor; ++f) {
    const Arrow& a = arrows_[f];
    for (MorId g : hom_[static_cast<std::size_t>(a.tgt) * n_obj + a.src]) {
      if (comp_entry(g, f) == identities_[a.src] && comp_entry(f, g) == identities_[a.tgt]) {
        inverse_[f] = g;
        break;
      }
    }
  }
}

ObjId FinCategory::check_object(ObjId a) const {
  if (a < 0 || a >= object_count()) {
    std::ostringstream os;
    os << "unknown object id " << a;
    throw InvalidArgument(os.str());
  }
  return a;
}

MorId FinCategory::check_morphism(MorId f) const {
  if (f < 0 || f >= morphism_count()) {
    std::ostringstream os;
    os << "unknown morphism id " << f;
    throw InvalidArgument(os.str());
  }
  return f;
}

MorId FinCategory::comp_entry(MorId g, MorId f) const {
  check_morphism(g);
  check_morphism(f);
  return comp_[static_cast<std::size_t>(g) * morphism_count() + f];
}

MorId FinCategory::compose(MorId g, MorId f) const {
  if (!composable(g, f)) {
    throw InvalidArgument("compose: " + describe_arrow(*this, g) + " after " +
                          describe_arrow(*this, f) + " is not composable");
  }
  MorId gf = comp_entry(g, f);
  if (gf == kNone) {
    throw InvalidArgument("compose: table has no entry for " + describe_arrow(*this, g) +
                          " after " + describe_arrow(*this, f));
  }
  return gf;
}

std::span<const MorId> FinCategory::hom(ObjId a, ObjId b) const {
  check_object(a);
  check_object(b);
  return hom_[static_cast<std::size_t>(a) * object_count() + b];
}

std::span<const MorId> FinCategory::into(ObjId b) const { return into_.at(check_object(b)); }

std::span<const MorId> FinCategory::out_of(ObjId a) const { return out_of_.at(check_object(a)); }

std::optional<ObjId> FinCategory::find_object(const std::string& name) const {
  auto it = std::find(object_names_.begin(), object_names_.end(), name);
  if (it == object_names_.end()) return std::nullopt;
  return static_cast<ObjId>(it - object_names_.begin());
}

std::optional<MorId> FinCategory::find_morphism(const std::string& name) const {
  auto it = std::find(morphism_names_.begin(), morphism_names_.end(), name);
  if (it == morphism_names_.end()) return std::nullopt;
  return static_cast<MorId>(it - morphism_names_.begin());
}

// --- builder -------------------------------------------------------------

ObjId CategoryBuilder::add_object(std::string name) {
  objects_.push_back(std::move(name));
  identities_.push_back(kNone);
  return static_cast<ObjId>(objects_.size() - 1);
}

MorId CategoryBuilder::add_morphism(std::string name, ObjId src, ObjId tgt) {
  if (src < 0 || src >= object_count() || tgt < 0 || tgt >= object_count())
    throw InvalidArgument("CategoryBuilder: morphism endpoint is not an object");
  morphisms_.push_back(std::move(name));
  arrows_.push_back({src, tgt});
  for (auto& row : comp_rows_) row.push_back(kNone);
  comp_rows_.emplace_back(arrows_.size(), kNone);
  return static_cast<MorId>(arrows_.size() - 1);
}

void CategoryBuilder::set_identity(ObjId a, MorId f) {
  if (a < 0 || a >= object_count()) throw InvalidArgument("CategoryBuilder: unknown object");
  if (f < 0 || f >= morphism_count()) throw InvalidArgument("CategoryBuilder: unknown morphism");
  identities_[a] = f;
}

void CategoryBuilder::set_comp(MorId g, MorId f, MorId gf) {
  if (g < 0 || g >= morphism_count() || f < 0 || f >= morphism_count() || gf < 0 ||
      gf >= morphism_count())
    throw InvalidArgument("CategoryBuilder: unknown morphism in composition entry");
  comp_rows_[g][f] = gf;
}

FinCategory CategoryBuilder::build() const {
  std::vector<MorId> flat;
  flat.reserve(arrows_.size() * arrows_.size());
  for (const auto& row : comp_rows_) flat.insert(flat.end(), row.begin(), row.end());
  return FinCategory(objects_, morphisms_, arrows_, identities_, std::move(flat));
}

// --- functors --------------------------------------------------------------

Functor identity_functor(const FinCategory& c) {
  Functor f;
  for (int a = 0; a < c.object_count(); ++a) f.on_objects.push_back(a);
  for (int m = 0; m < c.morphism_count(); ++m) f.on_morphisms.push_back(m);
  return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  Functor out;
  for (ObjId a : f.on_objects) out.on_objects.push_back(g.on_objects.at(a));
  for (MorId m : f.on_morphisms) out.on_morphisms.push_back(g.on_morphisms.at(m));
  return out;
}

LawReport check_functor(const FinCategory& from, const FinCategory& to, const Functor& f) {
  LawReport report;
  if (static_cast<int>(f.on_objects.size()) != from.object_count() ||
      static_cast<int>(f.on_morphisms.size()) != from.morphism_count()) {
    report.add("F-SHAPE", {}, "assignment sizes do not match the source category");
    return report;
  }
  for (int a = 0; a < from.object_count(); ++a) {
    if (f.on_objects[a] < 0 || f.on_objects[a] >= to.object_count()) {
      report.add("F-SHAPE", {a}, "object image out of range");
      return report;
    }
  }
  for (int m = 0; m < from.morphism_count(); ++m) {
    MorId fm = f.on_morphisms[m];
    if (fm < 0 || fm >= to.morphism_count()) {
      report.add("F-SHAPE", {m}, "morphism image out of range");
      return report;
    }
    if (to.src(fm) != f.on_objects[from.src(m)] || to.tgt(fm) != f.on_objects[from.tgt(m)])
      report.add("F-TYPE", {m});
  }
  if (!report.ok()) return report;
  for (int a = 0; a < from.object_count(); ++a) {
    if (f.on_morphisms[from.identity(a)] != to.identity(f.on_objects[a]))
      report.add("F-ID", {a});
  }
  for (int g = 0; g < from.morphism_count(); ++g) {
    for (MorId h : from.out_of(from.tgt(g))) {
      MorId hg = from.comp_entry(h, g);
      if (hg == kNone) continue;
      MorId image = to.comp_entry(f.on_morphisms[h], f.on_morphisms[g]);
      if (image != f.on_morphisms[hg]) report.add("F-COMP", {h, g});
    }
  }
  return report;
}

bool is_full_and_faithful(const FinCategory& from, const FinCategory& to, const Functor& f) {
  for (int a = 0; a < from.object_count(); ++a) {
    for (int b = 0; b < from.object_count(); ++b) {
      auto source = from.hom(a, b);
      auto target = to.hom(f.on_objects.at(a), f.on_objects.at(b));
      if (source.size() != target.size()) return false;
      std::vector<MorId> images;
      for (MorId m : source) images.push_back(f.on_morphisms.at(m));
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
      std::vector<MorId> expected(target.begin(), target.end());
      std::sort(expected.begin(), expected.end());
      if (images != expected) return false;
    }
  }
  return true;
}

// --- laws --------------------------------------------------------------------

LawReport validate_category(const FinCategory& c) {
  LawReport report;
  const int n = c.morphism_count();
  for (int a = 0; a < c.object_count(); ++a) {
    MorId id = c.identity(a);
    if (c.src(id) != a || c.tgt(id) != a) report.add("ID-TYPE", {a});
  }
  for (MorId g = 0; g < n; ++g) {
    for (MorId f = 0; f < n; ++f) {
      MorId gf = c.comp_entry(g, f);
      if (c.composable(g, f)) {
        if (gf == kNone) {
          report.add("COMP-MISSING", {g, f});
        } else if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g)) {
          report.add("COMP-TYPE", {g, f});
        }
      } else if (gf != kNone) {
        report.add("COMP-EXTRA", {g, f});
      }
    }
  }
  for (MorId f = 0; f < n; ++f) {
    if (c.comp_entry(c.identity(c.tgt(f)), f) != f) report.add("ID-LEFT", {f});
    if (c.comp_entry(f, c.identity(c.src(f))) != f) report.add("ID-RIGHT", {f});
  }
  for (MorId f = 0; f < n; ++f) {
    for (MorId g : c.out_of(c.tgt(f))) {
      MorId gf = c.comp_entry(g, f);
      for (MorId h : c.out_of(c.tgt(g))) {
        MorId hg = c.comp_entry(h, g);
        if (gf == kNone || hg == kNone) continue;
        if (c.src(gf) != c.src(f) || c.tgt(hg) != c.tgt(h)) continue;
        if (c.comp_entry(h, gf) != c.comp_entry(hg, f)) report.add("ASSOC", {h, g, f});
      }
    }
  }
  return report;
}

bool is_mono(const FinCategory& c, MorId m) {
  const ObjId a = c.src(m);
  for (int x = 0; x < c.object_count(); ++x) {
    auto maps = c.hom(x, a);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      for (std::size_t j = i + 1; j < maps.size(); ++j) {
        if (c.comp_entry(m, maps[i]) == c.comp_entry(m, maps[j])) return false;
      }
    }
  }
  return true;
}

// --- limits and colimits ---------------------------------------------------------

std::optional<Cone> pullback(const FinCategory& c, MorId f, MorId g) {
  if (c.tgt(f) != c.tgt(g)) throw InvalidArgument("pullback: input is not a cospan");
  const ObjId a = c.src(f);
  const ObjId b = c.src(g);
  std::vector<Cone> cones;
  for (int p_obj = 0; p_obj < c.object_count(); ++p_obj) {
    for (MorId p : c.hom(p_obj, a)) {
      MorId fp = c.comp_entry(f, p);
      for (MorId q : c.hom(p_obj, b)) {
        if (fp == c.comp_entry(g, q)) cones.push_back({p_obj, {p, q}});
      }
    }
  }
  for (const Cone& candidate : cones) {
    bool terminal = true;
    for (const Cone& other : cones) {
      int mediators = 0;
      for (MorId u : c.hom(other.apex, candidate.apex)) {
        if (c.comp_entry(candidate.legs[0], u) == other.legs[0] &&
            c.comp_entry(candidate.legs[1], u) == other.legs[1])
          ++mediators;
      }
      if (mediators != 1) {
        terminal = false;
        break;
      }
    }
    if (terminal) return candidate;
  }
  return std::nullopt;
}

namespace {

struct ShapeEdges {
  // For each shape object s: outgoing (u, t) and incoming (u, t) non-identity morphisms.
  std::vector<std::vector<std::pair<MorId, ObjId>>> out;
  std::vector<std::vector<std::pair<MorId, ObjId>>> in;
};

ShapeEdges shape_edges(const FinCategory& shape) {
  ShapeEdges e;
  e.out.resize(shape.object_count());
  e.in.resize(shape.object_count());
  for (int u = 0; u < shape.morphism_count(); ++u) {
    if (shape.is_identity(u)) continue;
    e.out[shape.src(u)].push_back({u, shape.tgt(u)});
    e.in[shape.tgt(u)].push_back({u, shape.src(u)});
  }
  return e;
}

void extend_cocones(const FinCategory& c, const Diagram& d, const ShapeEdges& edges,
                    ObjId apex, int s, std::vector<MorId>& legs, std::vector<Cocone>& out) {
  const int k = d.shape.object_count();
  if (s == k) {
    out.push_back({apex, legs});
    return;
  }
  const ObjId source = d.map.on_objects[s];
  auto consistent = [&](MorId leg) {
    for (auto [u, t] : edges.out[s]) {
      if (t < s && c.comp_entry(legs[t], d.map.on_morphisms[u]) != leg) return false;
    }
    for (auto [u, t] : edges.in[s]) {
      if (t < s && c.comp_entry(leg, d.map.on_morphisms[u]) != legs[t]) return false;
    }
    return true;
  };
  for (auto [u, t] : edges.out[s]) {
    if (t < s) {
      MorId forced = c.comp_entry(legs[t], d.map.on_morphisms[u]);
      if (forced != kNone && consistent(forced)) {
        legs[s] = forced;
        extend_cocones(c, d, edges, apex, s + 1, legs, out);
      }
      return;
    }
  }
  for (MorId leg : c.hom(source, apex)) {
    if (!consistent(leg)) continue;
    legs[s] = leg;
    extend_cocones(c, d, edges, apex, s + 1, legs, out);
  }
}

}  // namespace

std::vector<Cocone> cocones_at(const FinCategory& c, const Diagram& d, ObjId apex) {
  std::vector<Cocone> out;
  ShapeEdges edges = shape_edges(d.shape);
  std::vector<MorId> legs(d.shape.object_count(), kNone);
  extend_cocones(c, d, edges, apex, 0, legs, out);
  return out;
}

int count_mediators(const FinCategory& c, const Cocone& from, const Cocone& to) {
  int count = 0;
  for (MorId u : c.hom(from.apex, to.apex)) {
    bool ok = true;
    for (std::size_t s = 0; s < from.legs.size(); ++s) {
      if (c.comp_entry(u, from.legs[s]) != to.legs[s]) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

std::optional<Cocone> colimit(const FinCategory& c, const Diagram& d) {
  if (!check_functor(d.shape, c, d.map).ok()) throw InvalidArgument("colimit: invalid diagram");
  std::vector<Cocone> all;
  for (int x = 0; x < c.object_count(); ++x) {
    auto at_x = cocones_at(c, d, x);
    all.insert(all.end(), at_x.begin(), at_x.end());
  }
  for (const Cocone& candidate : all) {
    bool initial = true;
    for (const Cocone& other : all) {
      if (count_mediators(c, candidate, other) != 1) {
        initial = false;
        break;
      }
    }
    if (initial) return candidate;
  }
  return std::nullopt;
}

}  // namespace jrcat
