#include "jrcat/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "jrcat/errors.hpp"
#include "jrcat/karoubi.hpp"

namespace jrcat {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& what) {
  throw BundleError(origin + ": at " + (where.empty() ? "/" : where) + ": " + what);
}

class Reader {
 public:
  Reader(const json& root, std::string origin) : root_(root), origin_(std::move(origin)) {}

  const json& need(const json& node, const std::string& key, const std::string& path) const {
    if (!node.is_object()) fail(origin_, path, "expected an object");
    auto it = node.find(key);
    if (it == node.end()) fail(origin_, path, "missing field '" + key + "'");
    return *it;
  }

  std::string str(const json& node, const std::string& path) const {
    if (!node.is_string()) fail(origin_, path, "expected a string");
    return node.get<std::string>();
  }

  void expect_array(const json& node, const std::string& path) const {
    if (!node.is_array()) fail(origin_, path, "expected an array");
  }

  void expect_object(const json& node, const std::string& path) const {
    if (!node.is_object()) fail(origin_, path, "expected an object");
  }

  [[noreturn]] void error(const std::string& path, const std::string& what) const {
    fail(origin_, path, what);
  }

  const json& root() const { return root_; }

 private:
  const json& root_;
  std::string origin_;
};

std::string child(const std::string& path, const std::string& key) {
  std::string escaped;
  for (char ch : key) {
    if (ch == '~') escaped += "~0";
    else if (ch == '/') escaped += "~1";
    else escaped += ch;
  }
  return path + "/" + escaped;
}

std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

FinCategory read_category(const Reader& r) {
  const json& root = r.root();
  CategoryBuilder b;
  std::map<std::string, ObjId> objects;
  const json& objs = r.need(root, "objects", "");
  r.expect_array(objs, "/objects");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::string name = r.str(objs[i], child("/objects", i));
    if (objects.count(name)) r.error(child("/objects", i), "duplicate object '" + name + "'");
    objects[name] = b.add_object(name);
  }
  auto object = [&](const json& node, const std::string& path) {
    std::string name = r.str(node, path);
    auto it = objects.find(name);
    if (it == objects.end()) r.error(path, "unknown object '" + name + "'");
    return it->second;
  };

  std::map<std::string, MorId> morphisms;
  const json& mors = r.need(root, "morphisms", "");
  r.expect_array(mors, "/morphisms");
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const std::string path = child("/morphisms", i);
    std::string id = r.str(r.need(mors[i], "id", path), child(path, "id"));
    if (morphisms.count(id)) r.error(child(path, "id"), "duplicate morphism '" + id + "'");
    ObjId s = object(r.need(mors[i], "src", path), child(path, "src"));
    ObjId t = object(r.need(mors[i], "tgt", path), child(path, "tgt"));
    morphisms[id] = b.add_morphism(id, s, t);
  }
  auto morphism = [&](const json& node, const std::string& path) {
    std::string name = r.str(node, path);
    auto it = morphisms.find(name);
    if (it == morphisms.end()) r.error(path, "unknown morphism '" + name + "'");
    return it->second;
  };

  const json& ids = r.need(root, "identities", "");
  r.expect_object(ids, "/identities");
  std::vector<char> has_identity(b.object_count(), 0);
  std::vector<MorId> identity_of(b.object_count(), kNone);
  for (auto it = ids.begin(); it != ids.end(); ++it) {
    const std::string path = child("/identities", it.key());
    auto o = objects.find(it.key());
    if (o == objects.end()) r.error(path, "unknown object '" + it.key() + "'");
    MorId f = morphism(it.value(), path);
    if (b.arrow(f).src != o->second || b.arrow(f).tgt != o->second)
      r.error(path, "identity is not an endomorphism of '" + it.key() + "'");
    b.set_identity(o->second, f);
    identity_of[o->second] = f;
    has_identity[o->second] = 1;
  }
  for (ObjId a = 0; a < b.object_count(); ++a)
    if (!has_identity[a]) r.error("/identities", "no identity for object '" + objs[a].get<std::string>() + "'");

  // Composites with identities are implied; explicit entries override them.
  for (MorId f = 0; f < b.morphism_count(); ++f) {
    b.set_comp(identity_of[b.arrow(f).tgt], f, f);
    b.set_comp(f, identity_of[b.arrow(f).src], f);
  }
  const json& comp = r.need(root, "comp", "");
  r.expect_array(comp, "/comp");
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const std::string path = child("/comp", i);
    if (!comp[i].is_array() || comp[i].size() != 3) r.error(path, "expected [g, f, gf]");
    MorId g = morphism(comp[i][0], child(path, 0));
    MorId f = morphism(comp[i][1], child(path, 1));
    MorId gf = morphism(comp[i][2], child(path, 2));
    if (b.arrow(f).tgt != b.arrow(g).src) r.error(path, "g and f are not composable");
    b.set_comp(g, f, gf);
  }
  try {
    return b.build();
  } catch (const Error& e) {
    r.error("", e.what());
  }
}

std::vector<MorId> read_restriction(const Reader& r, const FinCategory& c, const json& node) {
  r.expect_object(node, "/restriction");
  std::vector<MorId> bar(c.morphism_count(), kNone);
  for (auto it = node.begin(); it != node.end(); ++it) {
    const std::string path = child("/restriction", it.key());
    auto f = c.find_morphism(it.key());
    if (!f) r.error(path, "unknown morphism '" + it.key() + "'");
    auto fb = c.find_morphism(r.str(it.value(), path));
    if (!fb) r.error(path, "unknown morphism '" + it.value().get<std::string>() + "'");
    if (c.src(*fb) != c.src(*f) || c.tgt(*fb) != c.src(*f))
      r.error(path, "restriction is not an endomorphism of the source");
    bar[*f] = *fb;
  }
  for (MorId f = 0; f < c.morphism_count(); ++f)
    if (bar[f] == kNone) r.error("/restriction", "no restriction for '" + c.morphism_name(f) + "'");
  return bar;
}

std::vector<MorId> read_monics(const Reader& r, const FinCategory& c, const json& node) {
  r.expect_array(node, "/monics");
  std::vector<MorId> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    auto f = c.find_morphism(r.str(node[i], child("/monics", i)));
    if (!f) r.error(child("/monics", i), "unknown morphism '" + node[i].get<std::string>() + "'");
    out.push_back(*f);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PresheafEntry read_presheaf(const Reader& r, const FinCategory& c, const json& node,
                            const std::string& path, const std::string& over) {
  PresheafEntry out;
  out.over = over;
  Presheaf& p = out.presheaf;
  p.sizes.assign(c.object_count(), 0);
  p.labels.assign(c.object_count(), {});
  std::vector<std::map<std::string, SecId>> index(c.object_count());
  const json& sections = r.need(node, "sections", path);
  r.expect_object(sections, child(path, "sections"));
  for (auto it = sections.begin(); it != sections.end(); ++it) {
    const std::string spath = child(child(path, "sections"), it.key());
    auto a = c.find_object(it.key());
    if (!a) r.error(spath, "unknown object '" + it.key() + "'");
    r.expect_array(it.value(), spath);
    for (std::size_t i = 0; i < it.value().size(); ++i) {
      std::string name = r.str(it.value()[i], child(spath, i));
      if (index[*a].count(name)) r.error(child(spath, i), "duplicate section '" + name + "'");
      index[*a][name] = p.sizes[*a]++;
      p.labels[*a].push_back(name);
    }
  }
  auto section = [&](ObjId a, const json& v, const std::string& where) {
    std::string name = r.str(v, where);
    auto it = index[a].find(name);
    if (it == index[a].end())
      r.error(where, "unknown section '" + name + "' over '" + c.object_name(a) + "'");
    return it->second;
  };

  p.action.assign(c.morphism_count(), {});
  for (MorId f = 0; f < c.morphism_count(); ++f) p.action[f].assign(p.sizes[c.tgt(f)], kNone);
  const json& action = r.need(node, "action", path);
  r.expect_object(action, child(path, "action"));
  for (auto it = action.begin(); it != action.end(); ++it) {
    const std::string apath = child(child(path, "action"), it.key());
    auto f = c.find_morphism(it.key());
    if (!f) r.error(apath, "unknown morphism '" + it.key() + "'");
    r.expect_object(it.value(), apath);
    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
      const std::string epath = child(apath, jt.key());
      SecId y = section(c.tgt(*f), json(jt.key()), epath);
      p.action[*f][y] = section(c.src(*f), jt.value(), epath);
    }
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (SecId y = 0; y < p.sizes[c.tgt(f)]; ++y) {
      if (p.action[f][y] != kNone) continue;
      // Identities may be left implicit.
      if (c.is_identity(f)) {
        p.action[f][y] = y;
        continue;
      }
      r.error(child(path, "action"), "no action of '" + c.morphism_name(f) + "' on section '" +
                                         p.labels[c.tgt(f)][y] + "'");
    }
  }

  if (node.contains("element_bar")) {
    const std::string bpath = child(path, "element_bar");
    const json& bars = node["element_bar"];
    r.expect_object(bars, bpath);
    out.element_bar.assign(c.object_count(), {});
    for (ObjId a = 0; a < c.object_count(); ++a) out.element_bar[a].assign(p.sizes[a], kNone);
    for (auto it = bars.begin(); it != bars.end(); ++it) {
      const std::string opath = child(bpath, it.key());
      auto a = c.find_object(it.key());
      if (!a) r.error(opath, "unknown object '" + it.key() + "'");
      r.expect_object(it.value(), opath);
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
        const std::string epath = child(opath, jt.key());
        SecId x = section(*a, json(jt.key()), epath);
        auto e = c.find_morphism(r.str(jt.value(), epath));
        if (!e) r.error(epath, "unknown morphism '" + jt.value().get<std::string>() + "'");
        if (c.src(*e) != *a || c.tgt(*e) != *a) r.error(epath, "bar is not an endomorphism");
        out.element_bar[*a][x] = *e;
      }
    }
    for (ObjId a = 0; a < c.object_count(); ++a)
      for (SecId x = 0; x < p.sizes[a]; ++x)
        if (out.element_bar[a][x] == kNone)
          r.error(bpath, "no bar for section '" + p.labels[a][x] + "'");
  }
  return out;
}

}  // namespace

Bundle parse_bundle(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw BundleError(origin + ": syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  Reader r(root, origin);
  if (!root.is_object()) r.error("", "expected an object");
  Bundle b;
  b.category = read_category(r);
  if (root.contains("restriction")) b.restriction = read_restriction(r, b.category, root["restriction"]);
  if (root.contains("monics")) b.monics = read_monics(r, b.category, root["monics"]);
  if (root.contains("presheaves")) {
    const json& ps = root["presheaves"];
    r.expect_object(ps, "/presheaves");
    std::optional<ParCategory> pc;
    for (auto it = ps.begin(); it != ps.end(); ++it) {
      const std::string path = child("/presheaves", it.key());
      std::string over = "base";
      if (it.value().contains("over")) over = r.str(it.value()["over"], child(path, "over"));
      if (over == "base") {
        b.presheaves[it.key()] = read_presheaf(r, b.category, it.value(), path, over);
      } else if (over == "par") {
        if (!b.monics) r.error(child(path, "over"), "presheaf over par needs a monics section");
        if (!pc) {
          try {
            pc.emplace(par(MCategory(b.category, *b.monics)));
          } catch (const Error& e) {
            r.error(child(path, "over"), std::string("cannot build par: ") + e.what());
          }
        }
        b.presheaves[it.key()] = read_presheaf(r, pc->base(), it.value(), path, over);
      } else {
        r.error(child(path, "over"), "expected \"base\" or \"par\"");
      }
    }
  }
  return b;
}

Bundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError(path + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_bundle(text.str(), path);
}

json category_json(const FinCategory& c) {
  json out;
  out["objects"] = c.object_names();
  json mors = json::array();
  for (MorId f = 0; f < c.morphism_count(); ++f)
    mors.push_back({{"id", c.morphism_name(f)},
                    {"src", c.object_name(c.src(f))},
                    {"tgt", c.object_name(c.tgt(f))}});
  out["morphisms"] = mors;
  json ids = json::object();
  for (ObjId a = 0; a < c.object_count(); ++a) ids[c.object_name(a)] = c.morphism_name(c.identity(a));
  out["identities"] = ids;
  json comp = json::array();
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (MorId g : c.out_of(c.tgt(f))) {
      MorId gf = c.comp_entry(g, f);
      if (gf == kNone) continue;
      comp.push_back({c.morphism_name(g), c.morphism_name(f), c.morphism_name(gf)});
    }
  }
  out["comp"] = comp;
  return out;
}

json presheaf_json(const FinCategory& c, const PresheafEntry& entry) {
  const Presheaf& p = entry.presheaf;
  json out;
  out["over"] = entry.over;
  json sections = json::object();
  for (ObjId a = 0; a < c.object_count(); ++a) {
    json names = json::array();
    for (SecId x = 0; x < p.size(a); ++x) names.push_back(p.label(a, x));
    sections[c.object_name(a)] = names;
  }
  out["sections"] = sections;
  json action = json::object();
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    json row = json::object();
    for (SecId y = 0; y < p.size(c.tgt(f)); ++y)
      row[p.label(c.tgt(f), y)] = p.label(c.src(f), p.act(f, y));
    action[c.morphism_name(f)] = row;
  }
  out["action"] = action;
  if (!entry.element_bar.empty()) {
    json bars = json::object();
    for (ObjId a = 0; a < c.object_count(); ++a) {
      json row = json::object();
      for (SecId x = 0; x < p.size(a); ++x)
        row[p.label(a, x)] = c.morphism_name(entry.element_bar[a][x]);
      bars[c.object_name(a)] = row;
    }
    out["element_bar"] = bars;
  }
  return out;
}

json bundle_json(const Bundle& b, const ParCategory* par) {
  const FinCategory& c = b.category;
  json out = category_json(c);
  if (b.restriction) {
    json bars = json::object();
    for (MorId f = 0; f < c.morphism_count(); ++f)
      bars[c.morphism_name(f)] = c.morphism_name((*b.restriction)[f]);
    out["restriction"] = bars;
  }
  if (b.monics) {
    json ms = json::array();
    for (MorId m : *b.monics) ms.push_back(c.morphism_name(m));
    out["monics"] = ms;
  }
  if (!b.presheaves.empty()) {
    json ps = json::object();
    for (const auto& [name, entry] : b.presheaves) {
      if (entry.over == "par") {
        if (!par) throw InvalidArgument("bundle_json: presheaf '" + name + "' needs the par category");
        ps[name] = presheaf_json(par->base(), entry);
      } else {
        ps[name] = presheaf_json(c, entry);
      }
    }
    out["presheaves"] = ps;
  }
  return out;
}

Bundle builtin_bundle(const FixtureSpec& spec) {
  Bundle b;
  switch (spec.kind) {
    case FixtureSpec::Kind::FinSetP: {
      auto f = build_finset_p(spec.size);
      b.category = f.category.base();
      b.restriction = f.category.bar_table();
      break;
    }
    case FixtureSpec::Kind::FinSetInj:
    case FixtureSpec::Kind::FinSetIso: {
      auto f = build_finset_mcat(spec.size, spec.kind == FixtureSpec::Kind::FinSetInj
                                                ? MonicClass::Injections
                                                : MonicClass::Isomorphisms);
      b.category = f.mc.base();
      b.monics = f.mc.monics();
      break;
    }
    case FixtureSpec::Kind::NoJoin: {
      auto f = build_nojoin_fixture();
      b.category = f.category.base();
      b.restriction = f.category.bar_table();
      break;
    }
    case FixtureSpec::Kind::Trivial: {
      auto x = build_trivial();
      b.category = x.base();
      b.restriction = x.bar_table();
      break;
    }
    case FixtureSpec::Kind::File:
      return load_bundle(spec.path);
  }
  return b;
}

Bundle resolve_bundle(const std::string& name) { return builtin_bundle(parse_fixture_spec(name)); }

json law_report_json(const LawReport& report) {
  return {{"ok", report.ok()}, {"violations", report.lines()}};
}

json nat_json(const NatTrans& alpha) { return alpha.components; }

json transfer_report_json(const TransferReport& report) {
  json checks = json::object();
  for (const auto& [name, ok] : report.checks) checks[name] = ok;
  return {{"direction", report.direction},
          {"input", report.input},
          {"ok", report.ok()},
          {"checks", checks},
          {"forward", report.forward ? nat_json(*report.forward) : json(nullptr)},
          {"backward", report.backward ? nat_json(*report.backward) : json(nullptr)},
          {"laws", law_report_json(report.laws)}};
}

Workspace::Workspace(Bundle bundle, int max_family)
    : bundle_(std::move(bundle)), max_family_(max_family) {}

const RestrictionCategory& Workspace::restriction() {
  if (!restriction_) {
    if (!bundle_.restriction) throw BundleError("bundle has no restriction section");
    restriction_.emplace(bundle_.category, *bundle_.restriction);
  }
  return *restriction_;
}

const MCategory& Workspace::mcategory() {
  if (!mc_) {
    if (!bundle_.monics) throw BundleError("bundle has no monics section");
    mc_.emplace(bundle_.category, *bundle_.monics);
  }
  return *mc_;
}

const ParCategory& Workspace::par() {
  if (!par_) par_.emplace(jrcat::par(mcategory()));
  return *par_;
}

const Topology& Workspace::topology() {
  if (!topology_) topology_ = generate_topology(mcategory(), max_family_);
  return *topology_;
}

PresheafEntry Workspace::presheaf(const std::string& name) {
  auto it = bundle_.presheaves.find(name);
  if (it != bundle_.presheaves.end()) return it->second;
  const FinCategory& c = category();
  PresheafEntry out;
  if (name == "terminal") {
    out.presheaf = terminal_presheaf(c);
  } else if (name == "const2") {
    out.presheaf = constant_presheaf(c, 2);
  } else if (name == "sigma") {
    out.presheaf = sigma_classifier(mcategory()).sigma;
  } else if (name == "yD") {
    if (c.object_count() == 0) throw BundleError("presheaf 'yD': category has no objects");
    out.presheaf = representable(c, c.object_count() - 1);
  } else if (name.rfind("par_y", 0) == 0) {
    const ParCategory& pc = par();
    auto a = pc.base().find_object(name.substr(5));
    if (!a) throw BundleError("unknown presheaf '" + name + "'");
    JoinRestrictionPresheaf y = yoneda_jr(pc.category(), *a, max_family_);
    out.over = "par";
    out.presheaf = y.rp.base;
    out.element_bar = y.rp.bar;
  } else if (name.rfind("y", 0) == 0) {
    auto a = c.find_object(name.substr(1));
    if (!a) throw BundleError("unknown presheaf '" + name + "'");
    out.presheaf = representable(c, *a);
  } else {
    throw BundleError("unknown presheaf '" + name + "'");
  }
  return out;
}

}  // namespace jrcat
