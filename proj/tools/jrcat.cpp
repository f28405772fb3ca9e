// jrcat: run the law suites and constructions on a bundle from the shell.
//
// Exit status: 0 all checks pass, 1 some law fails, 2 the bundle or a
// named presheaf cannot be read, 3 an internal invariant broke.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "jrcat/bundle.hpp"
#include "jrcat/errors.hpp"
#include "jrcat/join.hpp"
#include "jrcat/karoubi.hpp"

using namespace jrcat;
using nlohmann::json;

namespace {

struct Options {
  std::string bundle;
  std::string presheaf;
  std::string direction = "to-jrp";
  int max_family = -1;
  std::uint64_t seed = 0;
  std::string out;
};

struct Outcome {
  LawReport laws;
  json summary = json::object();
};

std::string sieve_string(const FinCategory& c, const Sieve& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + c.morphism_name(s[i]);
  return out + "}";
}

Outcome check_laws(Workspace& w) {
  Outcome o;
  o.laws.merge(validate_category(w.category()));
  json suites = json::array({"category"});
  if (!o.laws.ok()) return o;
  if (w.bundle().restriction) {
    const RestrictionCategory& x = w.restriction();
    o.laws.merge(check_restriction_axioms(x));
    suites.push_back("restriction");
    if (o.laws.ok()) {
      o.laws.merge(check_join_axioms(x, {w.max_family()}));
      suites.push_back("join");
    }
  }
  if (w.bundle().monics) {
    o.laws.merge(check_m_system(w.mcategory()));
    suites.push_back("m-system");
  }
  for (const auto& [name, entry] : w.bundle().presheaves) {
    const FinCategory& c = entry.over == "par" ? w.par().base() : w.category();
    LawReport psh = check_presheaf(c, entry.presheaf);
    suites.push_back("presheaf " + name);
    if (psh.ok() && !entry.element_bar.empty()) {
      const RestrictionCategory& x = entry.over == "par" ? w.par().category() : w.restriction();
      RestrictionPresheaf rp{entry.presheaf, entry.element_bar};
      psh.merge(check_rp_axioms(x, rp));
      if (psh.ok()) psh.merge(check_jrp_axioms(x, with_searched_joins(x, rp, w.max_family()),
                                               {w.max_family()}));
    }
    for (const auto& v : psh.violations()) o.laws.add(v.tag, v.ids, name + (v.detail.empty() ? "" : ": " + v.detail));
  }
  o.summary["suites"] = suites;
  return o;
}

Outcome build_par(Workspace& w, std::optional<Bundle>& written) {
  Outcome o;
  o.laws.merge(check_m_system(w.mcategory()));
  if (!o.laws.ok()) return o;
  const ParCategory& pc = w.par();
  o.laws.merge(check_restriction_axioms(pc.category()));
  o.laws.merge(check_join_axioms(pc.category(), {w.max_family()}));
  o.summary["objects"] = pc.base().object_count();
  o.summary["morphisms"] = pc.base().morphism_count();
  written = Bundle{pc.base(), pc.category().bar_table(), std::nullopt, {}};
  return o;
}

Outcome karoubi(Workspace& w, std::optional<Bundle>& written) {
  Outcome o;
  KaroubiEnvelope k = karoubi_r(w.restriction());
  o.laws.merge(check_restriction_axioms(k.category));
  for (MorId e : unsplit_restriction_idempotents(k.category)) o.laws.add("K-UNSPLIT", {e});
  if (!is_full_and_faithful(w.category(), k.category.base(), k.embedding))
    o.laws.add("K-EMBED", {}, "embedding is not full and faithful");
  o.summary["objects"] = k.category.base().object_count();
  o.summary["morphisms"] = k.category.base().morphism_count();
  written = Bundle{k.category.base(), k.category.bar_table(), std::nullopt, {}};
  return o;
}

Outcome geometric(Workspace& w) {
  Outcome o;
  o.laws.merge(check_m_system(w.mcategory()));
  if (!o.laws.ok()) return o;
  o.laws.merge(is_geometric(w.mcategory(), {w.max_family()}));
  o.summary["geometric"] = o.laws.ok();
  return o;
}

Outcome topology(Workspace& w) {
  Outcome o;
  const FinCategory& c = w.category();
  const Topology& j = w.topology();
  o.laws.merge(check_topology(c, j));
  if (saturate(c, j.covers) != j) o.laws.add("TOP-FIXPOINT", {}, "saturation changes the topology");
  json covers = json::object();
  for (ObjId a = 0; a < c.object_count(); ++a) {
    json list = json::array();
    for (const Sieve& s : j.covers[a]) {
      json ids = json::array();
      for (MorId f : s) ids.push_back(c.morphism_name(f));
      list.push_back(ids);
    }
    covers[c.object_name(a)] = list;
  }
  o.summary["covers"] = covers;
  return o;
}

PresheafEntry base_presheaf(Workspace& w, const std::string& name) {
  PresheafEntry p = w.presheaf(name);
  if (p.over != "base") throw BundleError("presheaf '" + name + "' is not over the base category");
  LawReport r = check_presheaf(w.category(), p.presheaf);
  if (!r.ok()) throw BundleError("presheaf '" + name + "' breaks functoriality: " + r.lines().front());
  return p;
}

Outcome sheaf_check(Workspace& w, const std::string& name) {
  Outcome o;
  const FinCategory& c = w.category();
  PresheafEntry p = base_presheaf(w, name);
  SheafVerdict v = check_sheaf(c, p.presheaf, w.topology());
  o.summary["separated"] = v.separated;
  o.summary["sheaf"] = v.sheaf;
  if (v.failure) {
    const SheafFailure& f = *v.failure;
    std::vector<int> ids{f.object};
    ids.insert(ids.end(), f.family.begin(), f.family.end());
    o.laws.add("SHEAF", ids,
               "sieve " + sieve_string(c, f.sieve) + " has " + std::to_string(f.amalgamations) +
                   " amalgamations");
  }
  return o;
}

Outcome sheafify_cmd(Workspace& w, const std::string& name) {
  Outcome o;
  const FinCategory& c = w.category();
  PresheafEntry p = base_presheaf(w, name);
  Sheafification s = sheafify(c, p.presheaf, w.topology());
  o.laws.merge(check_presheaf(c, s.sheaf()));
  o.laws.merge(check_natural(c, p.presheaf, s.sheaf(), s.unit));
  if (!is_sheaf(c, s.sheaf(), w.topology())) o.laws.add("SHEAFIFY", {}, "result is not a sheaf");
  o.summary["sizes"] = s.sheaf().sizes;
  o.summary["unit"] = nat_json(s.unit);
  o.summary["unit_is_iso"] = unit_is_iso(s);
  return o;
}

Outcome transfer(Workspace& w, const std::string& name, const std::string& direction) {
  Outcome o;
  const MCategory& mc = w.mcategory();
  const ParCategory& pc = w.par();
  if (direction == "to-jrp") {
    PresheafEntry p = base_presheaf(w, name);
    SheafTransfer t = sheaf_to_jrp(mc, pc, w.topology(), p.presheaf, w.max_family());
    o.laws.merge(check_rp_axioms(pc.category(), t.jrp.rp));
    o.laws.merge(check_jrp_axioms(pc.category(), t.jrp, {w.max_family()}));
    o.summary["presheaf"] = presheaf_json(pc.base(), {"par", t.jrp.rp.base, t.jrp.rp.bar});
  } else if (direction == "to-sheaf") {
    PresheafEntry p = w.presheaf(name);
    if (p.over != "par" || p.element_bar.empty())
      throw BundleError("presheaf '" + name + "' is not a restriction presheaf over par");
    RestrictionPresheaf rp{p.presheaf, p.element_bar};
    JoinRestrictionPresheaf r = with_searched_joins(pc.category(), rp, w.max_family());
    o.laws.merge(check_jrp_axioms(pc.category(), r, {w.max_family()}));
    SheafCertificate cert = jrp_to_sheaf(mc, pc, w.topology(), r);
    if (!cert.sheaf) o.laws.add("SHEAF", {}, "total sections do not form a sheaf");
    if (!cert.formula_matches) o.laws.add("AMALGAMATION", {}, "formula differs from the searched amalgamation");
    o.summary["presheaf"] = presheaf_json(w.category(), {"base", cert.dot.presheaf, {}});
  } else {
    throw BundleError("unknown direction '" + direction + "'");
  }
  return o;
}

Outcome roundtrip(Workspace& w, const std::string& name) {
  Outcome o;
  PresheafEntry p = w.presheaf(name);
  TransferReport r;
  if (p.over == "par") {
    if (p.element_bar.empty()) throw BundleError("presheaf '" + name + "' has no element_bar table");
    RestrictionPresheaf rp{p.presheaf, p.element_bar};
    r = roundtrip_jrp(w.mcategory(), w.par(), w.topology(),
                      with_searched_joins(w.par().category(), rp, w.max_family()), name);
  } else {
    r = roundtrip_sheaf(w.mcategory(), w.par(), w.topology(), base_presheaf(w, name).presheaf, name);
  }
  o.laws.merge(r.laws);
  for (const auto& [check, ok] : r.checks)
    if (!ok) o.laws.add("ROUNDTRIP", {}, check);
  o.summary = transfer_report_json(r);
  return o;
}

Outcome unit(Workspace& w) {
  Outcome o;
  UnitReport r = cocompletion_unit(w.restriction(), w.max_family());
  json objects = json::array();
  for (const UnitObjectResult& u : r.objects) {
    objects.push_back({{"object", w.category().object_name(u.object)},
                       {"representable_is_sheaf", u.representable_is_sheaf},
                       {"route_jrp_ok", u.route_jrp_ok},
                       {"iso", u.iso ? nat_json(*u.iso) : json(nullptr)},
                       {"natural_in_total_maps", u.natural_in_total_maps}});
    if (!u.representable_is_sheaf) o.laws.add("UNIT-SHEAF", {u.object});
    if (!u.route_jrp_ok) o.laws.add("UNIT-JRP", {u.object});
    if (!u.iso) o.laws.add("UNIT-ISO", {u.object});
    if (!u.natural_in_total_maps) o.laws.add("UNIT-NAT", {u.object});
  }
  o.summary["objects"] = objects;
  return o;
}

void emit(const std::string& command, const Options& opt, const Outcome& o,
          const std::optional<json>& bundle_out) {
  for (const std::string& line : o.laws.lines()) std::cout << line << "\n";
  json summary = o.summary;
  summary["command"] = command;
  summary["bundle"] = opt.bundle;
  if (!opt.presheaf.empty()) summary["presheaf"] = opt.presheaf;
  summary["max_family"] = opt.max_family;
  summary["seed"] = opt.seed;
  summary["ok"] = o.laws.ok();
  summary["violations"] = o.laws.lines();
  if (bundle_out) summary["result"] = *bundle_out;

  std::string path = opt.out;
  if (path.empty()) {
    if (const char* dir = std::getenv("JRCAT_OUT_DIR"); dir && *dir)
      path = (std::filesystem::path(dir) / (command + ".json")).string();
  }
  if (path.empty()) {
    std::cout << summary.dump(2) << "\n";
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << summary.dump(2) << "\n";
    std::cout << "summary: " << path << "\n";
  }
  std::cout << (o.laws.ok() ? "PASS" : "FAIL") << " " << command << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite restriction categories, M-categories and their presheaves"};
  app.require_subcommand(1);
  Options opt;

  auto add = [&](const std::string& name, const std::string& help, bool presheaf) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("bundle", opt.bundle, "bundle file or built-in fixture name")->required();
    if (presheaf) sub->add_option("presheaf", opt.presheaf, "presheaf name")->required();
    sub->add_option("--max-family", opt.max_family, "largest family size checked (-1: all)");
    sub->add_option("--seed", opt.seed, "seed for sampled suites");
    sub->add_option("--out", opt.out, "where to write the JSON summary");
    return sub;
  };
  add("check-laws", "run every applicable law suite", false);
  add("build-par", "build Par(C, M) and check it", false);
  add("karoubi", "split the restriction idempotents", false);
  add("geometric", "test the geometric criterion", false);
  add("topology", "generate and dump the topology", false);
  add("sheaf-check", "test the sheaf condition", true);
  add("sheafify", "sheafify a presheaf", true);
  add("transfer", "move between sheaves and join restriction presheaves", true)
      ->add_option("--direction", opt.direction, "to-jrp or to-sheaf")
      ->check(CLI::IsMember({"to-jrp", "to-sheaf"}));
  add("roundtrip", "round trip through the other side", true);
  add("unit", "compare the cocompletion route with the Yoneda presheaves", false);

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  std::unique_ptr<Workspace> w;
  try {
    w = std::make_unique<Workspace>(resolve_bundle(opt.bundle), opt.max_family);
  } catch (const std::exception& e) {
    std::cerr << "jrcat: " << e.what() << "\n";
    return 2;
  }

  try {
    Outcome o;
    std::optional<Bundle> written;
    if (command != "check-laws") {
      // Everything else assumes a well-formed table.
      LawReport table = validate_category(w->category());
      if (!table.ok()) {
        o.laws = table;
        emit(command, opt, o, std::nullopt);
        return 1;
      }
    }
    static const std::set<std::string> site_commands{"topology", "sheaf-check", "sheafify", "transfer",
                                                     "roundtrip"};
    if (site_commands.count(command)) {
      // The topology is only generated over a geometric M-category.
      LawReport geo = is_geometric(w->mcategory(), {w->max_family()});
      if (!geo.ok()) {
        o.laws = geo;
        emit(command, opt, o, std::nullopt);
        return 1;
      }
    }
    if (command == "check-laws") o = check_laws(*w);
    else if (command == "build-par") o = build_par(*w, written);
    else if (command == "karoubi") o = karoubi(*w, written);
    else if (command == "geometric") o = geometric(*w);
    else if (command == "topology") o = topology(*w);
    else if (command == "sheaf-check") o = sheaf_check(*w, opt.presheaf);
    else if (command == "sheafify") o = sheafify_cmd(*w, opt.presheaf);
    else if (command == "transfer") o = transfer(*w, opt.presheaf, opt.direction);
    else if (command == "roundtrip") o = roundtrip(*w, opt.presheaf);
    else o = unit(*w);
    std::optional<json> bundle_out;
    if (written) bundle_out = bundle_json(*written);
    emit(command, opt, o, bundle_out);
    return o.laws.ok() ? 0 : 1;
  } catch (const BundleError& e) {
    std::cerr << "jrcat: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "jrcat: internal error: " << e.what() << "\n";
    return 3;
  }
}
