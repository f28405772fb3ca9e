#pragma once

// Set-level reference implementations. They work on graphs of maps between
// carriers {0..k-1} and never call the category code they are checked
// against.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "jrcat/core_cat.hpp"
#include "jrcat/fixtures.hpp"

namespace oracle {

using jrcat::Graph;
using jrcat::MorId;
using jrcat::ObjId;

inline Graph compose(const Graph& g, const Graph& f) {
  Graph out;
  for (int v : f) out.push_back(v < 0 ? -1 : g[v]);
  return out;
}

inline std::set<int> domain(const Graph& f) {
  std::set<int> out;
  for (int i = 0; i < static_cast<int>(f.size()); ++i)
    if (f[i] >= 0) out.insert(i);
  return out;
}

inline std::set<int> image(const Graph& f) {
  std::set<int> out;
  for (int v : f)
    if (v >= 0) out.insert(v);
  return out;
}

inline bool injective(const Graph& f) {
  std::set<int> seen;
  for (int v : f)
    if (v >= 0 && !seen.insert(v).second) return false;
  return true;
}

/// f ⊆ g as sets of pairs.
inline bool included(const Graph& f, const Graph& g) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] >= 0 && f[i] != g[i]) return false;
  return true;
}

/// Same value wherever both are defined.
inline bool agree(const Graph& f, const Graph& g) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] >= 0 && g[i] >= 0 && f[i] != g[i]) return false;
  return true;
}

/// Union of pairwise agreeing graphs on a carrier of size n.
inline Graph graph_union(const std::vector<Graph>& family, int n) {
  Graph out(n, -1);
  for (const Graph& g : family)
    for (int i = 0; i < n; ++i)
      if (g[i] >= 0) out[i] = g[i];
  return out;
}

inline MorId find(const jrcat::FinCategory& c, const std::vector<Graph>& graphs, ObjId s, ObjId t,
                  const Graph& g) {
  for (MorId f : c.hom(s, t))
    if (graphs[f] == g) return f;
  return jrcat::kNone;
}

/// Carrier size of an object of a FinSet fixture.
inline int size(const jrcat::FinCategory& c, ObjId a) { return std::stoi(c.object_name(a)); }

inline std::vector<std::vector<int>> subsets(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

}  // namespace oracle
