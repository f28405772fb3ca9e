#include "jrcat/fixtures.hpp"

#include <map>
#include <regex>
#include <tuple>

#include "jrcat/errors.hpp"

namespace jrcat {

std::string graph_name(const std::string& src, const std::string& tgt, const Graph& g) {
  std::string s = src + "->" + tgt + ":";
  for (int v : g) s += v < 0 ? std::string("-") : std::to_string(v);
  return s;
}

namespace {

struct CarrierSpec {
  std::vector<std::string> names;
  std::vector<int> sizes;
  // allowed[a][b]: graphs of the maps a → b, in the order they get ids.
  std::vector<std::vector<std::vector<Graph>>> allowed;
};

struct Built {
  FinCategory category;
  std::vector<Graph> graphs;
  std::vector<MorId> bar;
};

// Maps between finite carriers closed under composition; the bar of a map
// is the partial identity on its domain when that map is present.
Built build_from_graphs(const CarrierSpec& spec, bool with_bar) {
  const int n = static_cast<int>(spec.names.size());
  CategoryBuilder b;
  for (const auto& name : spec.names) b.add_object(name);
  std::map<std::tuple<ObjId, ObjId, Graph>, MorId> index;
  Built out;
  std::vector<Arrow> arrows;
  for (ObjId a = 0; a < n; ++a) {
    for (ObjId t = 0; t < n; ++t) {
      for (const Graph& g : spec.allowed[a][t]) {
        MorId id = b.add_morphism(graph_name(spec.names[a], spec.names[t], g), a, t);
        index[{a, t, g}] = id;
        out.graphs.push_back(g);
        arrows.push_back({a, t});
      }
    }
  }
  auto lookup = [&](ObjId a, ObjId t, const Graph& g) {
    auto it = index.find({a, t, g});
    if (it == index.end()) throw InvariantError("fixture: maps are not closed under composition");
    return it->second;
  };
  for (ObjId a = 0; a < n; ++a) {
    Graph id(spec.sizes[a]);
    for (int i = 0; i < spec.sizes[a]; ++i) id[i] = i;
    b.set_identity(a, lookup(a, a, id));
  }
  const int m = static_cast<int>(out.graphs.size());
  for (MorId f = 0; f < m; ++f) {
    for (MorId g = 0; g < m; ++g) {
      if (arrows[g].src != arrows[f].tgt) continue;
      Graph gf;
      for (int v : out.graphs[f]) gf.push_back(v < 0 ? -1 : out.graphs[g][v]);
      b.set_comp(g, f, lookup(arrows[f].src, arrows[g].tgt, gf));
    }
  }
  if (with_bar) {
    for (MorId f = 0; f < m; ++f) {
      Graph dom;
      for (std::size_t i = 0; i < out.graphs[f].size(); ++i)
        dom.push_back(out.graphs[f][i] < 0 ? -1 : static_cast<int>(i));
      out.bar.push_back(lookup(arrows[f].src, arrows[f].src, dom));
    }
  }
  out.category = b.build();
  return out;
}

// All maps {0..a-1} → {0..b-1}, lexicographic with -1 first when partial.
std::vector<Graph> all_graphs(int a, int b, bool partial) {
  const int lo = partial ? -1 : 0;
  std::vector<Graph> out;
  Graph g(a, lo);
  if (a > 0 && b == 0 && !partial) return out;
  while (true) {
    out.push_back(g);
    int i = a - 1;
    while (i >= 0 && g[i] == b - 1) g[i--] = lo;
    if (i < 0) break;
    ++g[i];
  }
  return out;
}

CarrierSpec finite_sets(int n, bool partial) {
  if (n < 0) throw InvalidArgument("fixture size must be non-negative");
  CarrierSpec spec;
  for (int k = 0; k <= n; ++k) {
    spec.names.push_back(std::to_string(k));
    spec.sizes.push_back(k);
  }
  spec.allowed.assign(n + 1, std::vector<std::vector<Graph>>(n + 1));
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) spec.allowed[a][b] = all_graphs(a, b, partial);
  return spec;
}

}  // namespace

PartialFunctionFixture build_finset_p(int n) {
  Built b = build_from_graphs(finite_sets(n, true), true);
  return {RestrictionCategory(std::move(b.category), std::move(b.bar)), std::move(b.graphs)};
}

FunctionFixture build_finset_mcat(int n, MonicClass monics) {
  Built b = build_from_graphs(finite_sets(n, false), false);
  std::vector<MorId> m;
  for (MorId f = 0; f < static_cast<MorId>(b.graphs.size()); ++f) {
    const Graph& g = b.graphs[f];
    std::vector<char> hit(b.category.object_count(), 0);
    bool injective = true;
    for (int v : g) {
      if (hit[v]) injective = false;
      hit[v] = 1;
    }
    const bool bijective =
        injective && static_cast<int>(g.size()) == std::stoi(b.category.object_name(b.category.tgt(f)));
    if (monics == MonicClass::Injections ? injective : bijective) m.push_back(f);
  }
  return {MCategory(std::move(b.category), std::move(m)), std::move(b.graphs)};
}

NoJoinFixture build_nojoin_fixture() {
  CarrierSpec spec;
  spec.names = {"A", "B"};
  spec.sizes = {2, 2};
  const std::vector<Graph> partial_ids{{-1, -1}, {-1, 1}, {0, -1}, {0, 1}};
  spec.allowed = {{partial_ids, {{-1, -1}, {-1, 1}, {0, -1}}}, {{{-1, -1}}, partial_ids}};
  Built b = build_from_graphs(spec, true);
  NoJoinFixture out{RestrictionCategory(b.category, b.bar), b.graphs, kNone, kNone};
  out.f = *out.category.base().find_morphism("A->B:0-");
  out.g = *out.category.base().find_morphism("A->B:-1");
  return out;
}

RestrictionCategory build_subset_monoid(int bits) {
  if (bits < 0 || bits > 4) throw InvalidArgument("build_subset_monoid: bits must be in 0..4");
  const int n = 1 << bits;
  CategoryBuilder b;
  b.add_object("*");
  for (int s = 0; s < n; ++s) {
    std::string name = "{";
    for (int i = 0; i < bits; ++i)
      if (s & (1 << i)) name += std::to_string(i);
    b.add_morphism(name + "}", 0, 0);
  }
  b.set_identity(0, n - 1);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) b.set_comp(s, t, s & t);
  std::vector<MorId> bar(n);
  for (int s = 0; s < n; ++s) bar[s] = s;
  return RestrictionCategory(b.build(), std::move(bar));
}

RestrictionCategory build_trivial() {
  CategoryBuilder b;
  b.add_object("*");
  b.set_identity(0, b.add_morphism("1", 0, 0));
  b.set_comp(0, 0, 0);
  return trivial_restriction(b.build());
}

FixtureSpec parse_fixture_spec(const std::string& name) {
  static const std::regex sized("finset_(p|inj|iso)_([0-9]+)");
  std::smatch match;
  FixtureSpec spec;
  if (std::regex_match(name, match, sized)) {
    spec.size = std::stoi(match[2]);
    const std::string kind = match[1];
    spec.kind = kind == "p"     ? FixtureSpec::Kind::FinSetP
                : kind == "inj" ? FixtureSpec::Kind::FinSetInj
                                : FixtureSpec::Kind::FinSetIso;
  } else if (name == "nojoin") {
    spec.kind = FixtureSpec::Kind::NoJoin;
  } else if (name == "trivial") {
    spec.kind = FixtureSpec::Kind::Trivial;
  } else {
    spec.kind = FixtureSpec::Kind::File;
    spec.path = name;
  }
  return spec;
}

}  // namespace jrcat
