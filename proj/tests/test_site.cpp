#include <set>

#include "doctest.h"
#include "jrcat/errors.hpp"
#include "jrcat/fixtures.hpp"
#include "jrcat/sheafify.hpp"
#include "oracles.hpp"

using namespace jrcat;

namespace {

FunctionFixture inj2() { return build_finset_mcat(2, MonicClass::Injections); }

// Brute-force sieves: subsets of into(a) closed under precomposition.
std::set<Sieve> brute_sieves(const FinCategory& c, ObjId a) {
  auto into = c.into(a);
  std::set<Sieve> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << into.size()); ++mask) {
    Sieve s;
    for (std::size_t i = 0; i < into.size(); ++i)
      if (mask >> i & 1) s.push_back(into[i]);
    bool closed = true;
    for (MorId f : s)
      for (MorId g : c.into(c.src(f)))
        if (!std::binary_search(s.begin(), s.end(), c.compose(f, g))) closed = false;
    if (closed) out.insert(s);
  }
  return out;
}

}  // namespace

TEST_CASE("sieves") {
  auto fx = inj2();
  const FinCategory& c = fx.mc.base();
  for (ObjId a = 0; a < c.object_count(); ++a) {
    auto all = all_sieves(c, a);
    CHECK(std::set<Sieve>(all.begin(), all.end()) == brute_sieves(c, a));
    for (const Sieve& s : all) {
      CHECK(is_sieve(c, a, s));
      for (MorId f : c.into(a)) CHECK(is_sieve(c, c.src(f), pullback_sieve(c, s, f)));
    }
    CHECK(principal_sieve(c, c.identity(a)) == maximal_sieve(c, a));
  }
}

TEST_CASE("basic covers and the generated topology") {
  auto fx = inj2();
  const MCategory& mc = fx.mc;
  const FinCategory& c = mc.base();
  auto covers = basis_covers(mc);
  for (ObjId a = 0; a < c.object_count(); ++a) {
    bool has_identity = false;
    for (const auto& cover : covers[a])
      has_identity = has_identity || cover == std::vector<MorId>{mc.subobject_rep(c.identity(a))};
    CHECK(has_identity);
  }
  MorId p0 = *c.find_morphism("1->2:0");
  MorId p1 = *c.find_morphism("1->2:1");
  CHECK(std::count(covers[2].begin(), covers[2].end(), std::vector<MorId>{p0, p1}));
  CHECK_FALSE(std::count(covers[2].begin(), covers[2].end(), std::vector<MorId>{p0}));

  Topology j = generate_topology(mc);
  CHECK(check_topology(c, j).ok());
  CHECK(saturate(c, j.covers) == j);
  CHECK(j.covers_sieve(2, generated_sieve(c, 2, {p0, p1})));
  CHECK_FALSE(j.covers_sieve(2, generated_sieve(c, 2, {p0})));
  CHECK(j.covers_sieve(0, Sieve{}));
  CHECK_FALSE(j.covers_sieve(1, Sieve{}));

  auto trivial = MCategory(build_trivial().base(), {0});
  Topology t = generate_topology(trivial);
  // The lone object is initial, so the empty family joins to the top.
  CHECK(t.covers[0] == std::set<Sieve>{Sieve{}, Sieve{0}});
  CHECK(minimal_topology(trivial.base()).covers[0] == std::set<Sieve>{Sieve{0}});
  CHECK_THROWS_AS(basis_covers(build_finset_mcat(2, MonicClass::Isomorphisms).mc), InvalidArgument);
}

TEST_CASE("sheaf condition") {
  auto fx = inj2();
  const FinCategory& c = fx.mc.base();
  Topology j = generate_topology(fx.mc);
  for (ObjId a = 0; a < c.object_count(); ++a) CHECK(is_sheaf(c, representable(c, a), j));
  CHECK(is_sheaf(c, terminal_presheaf(c), j));

  SheafVerdict v = check_sheaf(c, constant_presheaf(c, 2), j);
  CHECK_FALSE(v.sheaf);
  REQUIRE(v.failure);
  CHECK(v.failure->object == 0);
  CHECK(v.failure->sieve.empty());
  CHECK(v.failure->amalgamations == 2);

  Topology minimal = minimal_topology(c);
  CHECK(is_sheaf(c, constant_presheaf(c, 2), minimal));
  CHECK(is_sheaf(c, constant_presheaf(c, 3), minimal));
}

TEST_CASE("matching families and amalgamations by brute force") {
  auto fx = inj2();
  const FinCategory& c = fx.mc.base();
  Presheaf p = sigma_classifier(fx.mc).sigma;
  MorId p0 = *c.find_morphism("1->2:0");
  MorId p1 = *c.find_morphism("1->2:1");
  Sieve s = generated_sieve(c, 2, {p0, p1});
  std::size_t count = 0;
  std::vector<SecId> x(s.size(), 0);
  // Odometer over all assignments.
  while (true) {
    bool matching = true;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (MorId g : c.into(c.src(s[i]))) {
        auto k = std::lower_bound(s.begin(), s.end(), c.compose(s[i], g)) - s.begin();
        if (p.act(g, x[i]) != x[k]) matching = false;
      }
    count += matching;
    std::size_t i = 0;
    while (i < s.size() && ++x[i] == p.size(c.src(s[i]))) x[i++] = 0;
    if (i == s.size()) break;
  }
  CHECK(matching_families(c, p, s).size() == count);
  for (const auto& family : matching_families(c, p, s))
    CHECK(amalgamations(c, p, 2, s, family).size() == 1);
}
