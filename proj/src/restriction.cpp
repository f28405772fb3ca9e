#include "jrcat/restriction.hpp"

#include <sstream>

#include "jrcat/errors.hpp"

namespace jrcat {

RestrictionCategory::RestrictionCategory(FinCategory base, std::vector<MorId> bar)
    : base_(std::move(base)), bar_(std::move(bar)) {
  if (static_cast<int>(bar_.size()) != base_.morphism_count())
    throw InvalidArgument("RestrictionCategory: restriction table must cover every morphism");
  for (int f = 0; f < base_.morphism_count(); ++f) {
    MorId b = bar_[f];
    if (b < 0 || b >= base_.morphism_count() || base_.src(b) != base_.src(f) ||
        base_.tgt(b) != base_.src(f)) {
      std::ostringstream os;
      os << "RestrictionCategory: restriction of morphism " << f << " ("
         << base_.morphism_name(f) << ") is not an endomorphism of its source";
      throw InvalidArgument(os.str());
    }
  }
}

RestrictionCategory trivial_restriction(FinCategory c) {
  std::vector<MorId> bar;
  for (int f = 0; f < c.morphism_count(); ++f) bar.push_back(c.identity(c.src(f)));
  return RestrictionCategory(std::move(c), std::move(bar));
}

LawReport check_restriction_axioms(const RestrictionCategory& x) {
  const FinCategory& c = x.base();
  LawReport report;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const MorId fb = x.bar(f);
    if (c.comp_entry(f, fb) != f) report.add("R1", {f});
    for (MorId g : c.out_of(c.src(f))) {
      const MorId gb = x.bar(g);
      if (g > f && c.comp_entry(gb, fb) != c.comp_entry(fb, gb)) report.add("R2", {f, g});
      const MorId g_fb = c.comp_entry(g, fb);
      if (g_fb == kNone || x.bar(g_fb) != c.comp_entry(gb, fb)) report.add("R3", {g, f});
    }
    for (MorId h : c.out_of(c.tgt(f))) {
      const MorId hf = c.comp_entry(h, f);
      const MorId lhs = c.comp_entry(x.bar(h), f);
      const MorId rhs = hf == kNone ? kNone : c.comp_entry(f, x.bar(hf));
      if (lhs == kNone || lhs != rhs) report.add("R4", {h, f});
    }
  }
  return report;
}

namespace {

void require_parallel(const FinCategory& c, MorId f, MorId g, const char* op) {
  if (c.src(f) != c.src(g) || c.tgt(f) != c.tgt(g)) {
    std::ostringstream os;
    os << op << ": morphisms " << f << " and " << g << " are not parallel";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

bool leq(const RestrictionCategory& x, MorId f, MorId g) {
  require_parallel(x.base(), f, g, "leq");
  return x.base().comp_entry(g, x.bar(f)) == f;
}

bool compatible(const RestrictionCategory& x, MorId f, MorId g) {
  require_parallel(x.base(), f, g, "compatible");
  return x.base().comp_entry(f, x.bar(g)) == x.base().comp_entry(g, x.bar(f));
}

bool is_total(const RestrictionCategory& x, MorId f) {
  return x.bar(f) == x.base().identity(x.base().src(f));
}

bool is_restriction_idempotent(const RestrictionCategory& x, MorId e) { return x.bar(e) == e; }

TotalSubcategory total_subcategory(const RestrictionCategory& x) {
  const FinCategory& c = x.base();
  TotalSubcategory out;
  out.index.assign(c.morphism_count(), kNone);
  CategoryBuilder b;
  for (int a = 0; a < c.object_count(); ++a) b.add_object(c.object_name(a));
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (!is_total(x, f)) continue;
    out.index[f] = b.add_morphism(c.morphism_name(f), c.src(f), c.tgt(f));
    out.inclusion.push_back(f);
  }
  for (int a = 0; a < c.object_count(); ++a) b.set_identity(a, out.index[c.identity(a)]);
  for (MorId f : out.inclusion) {
    for (MorId g : c.out_of(c.tgt(f))) {
      if (out.index[g] == kNone) continue;
      MorId gf = c.compose(g, f);
      if (out.index[gf] == kNone)
        throw InvariantError("total_subcategory: composite of total maps is not total");
      b.set_comp(out.index[g], out.index[f], out.index[gf]);
    }
  }
  out.category = b.build();
  return out;
}

LawReport check_restriction_functor(const RestrictionCategory& from,
                                    const RestrictionCategory& to, const Functor& f) {
  LawReport report = check_functor(from.base(), to.base(), f);
  if (report.has("F-SHAPE") || report.has("F-TYPE")) return report;
  for (MorId m = 0; m < from.base().morphism_count(); ++m) {
    if (f.on_morphisms[from.bar(m)] != to.bar(f.on_morphisms[m])) report.add("F-BAR", {m});
  }
  return report;
}

std::optional<Splitting> find_splitting(const FinCategory& c, MorId e) {
  const ObjId a = c.src(e);
  if (c.tgt(e) != a) throw InvalidArgument("find_splitting: not an endomorphism");
  for (int s = 0; s < c.object_count(); ++s) {
    for (MorId m : c.hom(s, a)) {
      for (MorId r : c.hom(a, s)) {
        if (c.comp_entry(r, m) == c.identity(s) && c.comp_entry(m, r) == e)
          return Splitting{s, m, r};
      }
    }
  }
  return std::nullopt;
}

std::vector<MorId> unsplit_restriction_idempotents(const RestrictionCategory& x) {
  std::vector<MorId> out;
  for (MorId f = 0; f < x.base().morphism_count(); ++f) {
    if (is_restriction_idempotent(x, f) && !find_splitting(x.base(), f)) out.push_back(f);
  }
  return out;
}

}  // namespace jrcat
