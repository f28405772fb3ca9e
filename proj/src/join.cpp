#include "jrcat/join.hpp"

#include <algorithm>
#include <sstream>

#include "jrcat/errors.hpp"

namespace jrcat {

namespace {

std::vector<MorId> normalized(std::vector<MorId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<MorId> bounds_in(const RestrictionCategory& x, ObjId a, ObjId b,
                             const std::vector<MorId>& members) {
  std::vector<MorId> out;
  for (MorId u : x.base().hom(a, b)) {
    bool above = std::all_of(members.begin(), members.end(),
                             [&](MorId s) { return leq(x, s, u); });
    if (above) out.push_back(u);
  }
  return out;
}

std::optional<MorId> lub(const RestrictionCategory& x, ObjId a, ObjId b,
                         const std::vector<MorId>& members) {
  auto ub = bounds_in(x, a, b, members);
  for (MorId u : ub) {
    if (std::all_of(ub.begin(), ub.end(), [&](MorId v) { return leq(x, u, v); })) return u;
  }
  return std::nullopt;
}

std::string hom_label(const FinCategory& c, ObjId a, ObjId b) {
  return c.object_name(a) + "->" + c.object_name(b);
}

std::vector<int> with_prefix(MorId head, const std::vector<MorId>& tail) {
  std::vector<int> ids{head};
  ids.insert(ids.end(), tail.begin(), tail.end());
  return ids;
}

}  // namespace

CompatibleFamily CompatibleFamily::make(const RestrictionCategory& x, ObjId a, ObjId b,
                                        std::vector<MorId> members) {
  const FinCategory& c = x.base();
  c.check_object(a);
  c.check_object(b);
  members = normalized(std::move(members));
  for (MorId f : members) {
    if (c.src(f) != a || c.tgt(f) != b) {
      std::ostringstream os;
      os << "CompatibleFamily: morphism " << f << " is not in hom(" << c.object_name(a) << ", "
         << c.object_name(b) << ")";
      throw InvalidArgument(os.str());
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (!compatible(x, members[i], members[j])) {
        std::ostringstream os;
        os << "CompatibleFamily: " << c.morphism_name(members[i]) << " and "
           << c.morphism_name(members[j]) << " are not compatible";
        throw IncompatibleFamily(os.str());
      }
    }
  }
  CompatibleFamily s;
  s.source_ = a;
  s.target_ = b;
  s.members_ = std::move(members);
  return s;
}

std::vector<MorId> upper_bounds(const RestrictionCategory& x, const CompatibleFamily& s) {
  return bounds_in(x, s.source(), s.target(), s.members());
}

std::optional<MorId> join(const RestrictionCategory& x, const CompatibleFamily& s) {
  return lub(x, s.source(), s.target(), s.members());
}

void for_each_compatible_family(const RestrictionCategory& x, ObjId a, ObjId b, int max_size,
                                const std::function<void(const std::vector<MorId>&)>& visit) {
  auto hom = x.base().hom(a, b);
  std::vector<MorId> items(hom.begin(), hom.end());
  std::vector<MorId> current;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    visit(current);
    if (max_size >= 0 && static_cast<int>(current.size()) >= max_size) return;
    for (std::size_t i = from; i < items.size(); ++i) {
      MorId f = items[i];
      bool ok = std::all_of(current.begin(), current.end(),
                            [&](MorId g) { return compatible(x, f, g); });
      if (!ok) continue;
      current.push_back(f);
      grow(i + 1);
      current.pop_back();
    }
  };
  grow(0);
}

LawReport check_join_axioms(const RestrictionCategory& x, const JoinCheckOptions& options) {
  const FinCategory& c = x.base();
  LawReport report;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    for (ObjId b = 0; b < c.object_count(); ++b) {
      const std::string label = hom_label(c, a, b);
      for_each_compatible_family(x, a, b, options.max_family, [&](const std::vector<MorId>& s) {
        auto j = lub(x, a, b, s);
        if (!j) {
          report.add("JOIN-MISSING", s, label);
          return;
        }
        bool j_ok = true;
        std::vector<MorId> bars;
        for (MorId f : s) bars.push_back(x.bar(f));
        auto bar_join = lub(x, a, a, normalized(bars));
        if (!bar_join || *bar_join != x.bar(*j)) {
          report.add("J1", s, label);
          j_ok = false;
        }
        for (MorId g : c.into(a)) {
          std::vector<MorId> pre;
          for (MorId f : s) pre.push_back(c.compose(f, g));
          auto rhs = lub(x, c.src(g), b, normalized(pre));
          if (!rhs || *rhs != c.compose(*j, g)) {
            report.add("J2", with_prefix(g, s), label);
            j_ok = false;
          }
        }
        if (!j_ok) return;
        for (MorId h : c.out_of(b)) {
          std::vector<MorId> post;
          for (MorId f : s) post.push_back(c.compose(h, f));
          auto rhs = lub(x, a, c.tgt(h), normalized(post));
          if (!rhs || *rhs != c.compose(h, *j)) report.add("POSTCOMP", with_prefix(h, s), label);
        }
      });
    }
  }
  return report;
}

bool is_join_restriction_functor(const RestrictionCategory& from, const RestrictionCategory& to,
                                 const Functor& f, const JoinCheckOptions& options) {
  LawReport laws = check_restriction_functor(from, to, f);
  if (laws.has("F-SHAPE") || laws.has("F-TYPE") || laws.has("F-ID") || laws.has("F-COMP"))
    throw NotAFunctor("is_join_restriction_functor: not a functor\n" + laws.lines().front());
  if (laws.has("F-BAR"))
    throw NotARestrictionFunctor("is_join_restriction_functor: restriction not preserved\n" +
                                 laws.lines().front());
  const FinCategory& c = from.base();
  bool preserved = true;
  for (ObjId a = 0; a < c.object_count() && preserved; ++a) {
    for (ObjId b = 0; b < c.object_count() && preserved; ++b) {
      const ObjId fa = f.on_objects[a];
      const ObjId fb = f.on_objects[b];
      for_each_compatible_family(from, a, b, options.max_family, [&](const std::vector<MorId>& s) {
        if (!preserved || s.empty()) return;
        auto j = lub(from, a, b, s);
        if (!j) return;
        std::vector<MorId> image;
        for (MorId m : s) image.push_back(f.on_morphisms[m]);
        auto target_join = lub(to, fa, fb, normalized(image));
        if (!target_join || *target_join != f.on_morphisms[*j]) preserved = false;
      });
    }
  }
  return preserved;
}

}  // namespace jrcat
