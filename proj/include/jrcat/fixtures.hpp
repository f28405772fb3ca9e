#pragma once

// Small concrete categories of finite sets used throughout the tests and
// by the command line tool. Carriers are {0, ..., k-1}; a map is stored as
// its graph, one entry per element of the source, -1 where undefined.

#include <cstdint>
#include <string>
#include <vector>

#include "jrcat/mcat.hpp"
#include "jrcat/restriction.hpp"

namespace jrcat {

using Graph = std::vector<int>;

/// Name of a map between carriers: "a->b:" then one symbol per source
/// element ('-' where undefined).
std::string graph_name(const std::string& src, const std::string& tgt, const Graph& g);

struct PartialFunctionFixture {
  RestrictionCategory category;
  std::vector<Graph> graphs;
};

/// Sets {0..k-1} for k = 0..n and all partial functions between them;
/// bar is the partial identity on the domain of definition.
PartialFunctionFixture build_finset_p(int n);

enum class MonicClass { Injections, Isomorphisms };

struct FunctionFixture {
  MCategory mc;
  std::vector<Graph> graphs;
};

/// Sets {0..k-1} for k = 0..n, all total functions, with M the injections
/// or the bijections.
FunctionFixture build_finset_mcat(int n, MonicClass monics);

/// Two 2-element objects A and B. Endomaps are the partial identities;
/// A → B has the empty map, f = {0 ↦ 0} and g = {1 ↦ 1} but not their
/// union, so the compatible pair {f, g} has no upper bound. B → A has
/// only the empty map.
struct NoJoinFixture {
  RestrictionCategory category;
  std::vector<Graph> graphs;
  MorId f = kNone;
  MorId g = kNone;
};

NoJoinFixture build_nojoin_fixture();

/// One object, morphisms the subsets of {0..bits-1}, composition by
/// intersection, every map its own restriction.
RestrictionCategory build_subset_monoid(int bits);

/// One object, one morphism.
RestrictionCategory build_trivial();

struct FixtureSpec {
  enum class Kind { FinSetP, FinSetInj, FinSetIso, NoJoin, Trivial, File };
  Kind kind = Kind::File;
  int size = 0;
  std::uint64_t seed = 0;
  std::string path;
};

/// "finset_p_<n>", "finset_inj_<n>", "finset_iso_<n>", "nojoin" and
/// "trivial" name built-in fixtures; anything else is taken as a path.
FixtureSpec parse_fixture_spec(const std::string& name);

}  // namespace jrcat
