#include "doctest.h"
#include "jrcat/bundle.hpp"
#include "jrcat/errors.hpp"
#include "jrcat/join.hpp"

using namespace jrcat;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_bundle(text, "t.json");
  } catch (const BundleError& e) {
    return e.what();
  }
  return "";
}

const char* kSmall = R"({
  "objects": ["A", "B"],
  "morphisms": [{"id": "1A", "src": "A", "tgt": "A"}, {"id": "1B", "src": "B", "tgt": "B"},
                {"id": "f", "src": "A", "tgt": "B"}],
  "identities": {"A": "1A", "B": "1B"},
  "comp": [["1A", "1A", "1A"], ["1B", "1B", "1B"], ["f", "1A", "f"], ["1B", "f", "f"]],
  "restriction": {"1A": "1A", "1B": "1B", "f": "1A"},
  "monics": ["1A", "1B"]
})";

}  // namespace

TEST_CASE("fixture names") {
  FixtureSpec s = parse_fixture_spec("finset_inj_3");
  CHECK(s.kind == FixtureSpec::Kind::FinSetInj);
  CHECK(s.size == 3);
  CHECK(parse_fixture_spec("finset_p_0").kind == FixtureSpec::Kind::FinSetP);
  CHECK(parse_fixture_spec("finset_iso_2").kind == FixtureSpec::Kind::FinSetIso);
  CHECK(parse_fixture_spec("nojoin").kind == FixtureSpec::Kind::NoJoin);
  CHECK(parse_fixture_spec("trivial").kind == FixtureSpec::Kind::Trivial);
  CHECK(parse_fixture_spec("some/file.json").path == "some/file.json");
}

TEST_CASE("bundles round-trip byte for byte") {
  for (const char* name : {"finset_p_2", "finset_inj_2", "finset_iso_1", "nojoin", "trivial"}) {
    std::string first = bundle_json(resolve_bundle(name)).dump(2);
    CHECK(first == bundle_json(resolve_bundle(name)).dump(2));
    Bundle back = parse_bundle(first);
    CHECK(bundle_json(back).dump(2) == first);
  }
  std::string implied = kSmall;
  const std::string identity_rows = "[\"1A\", \"1A\", \"1A\"], [\"1B\", \"1B\", \"1B\"], ";
  implied.erase(implied.find(identity_rows), identity_rows.size());
  CHECK(implied.find("\"1A\", \"1A\"") == std::string::npos);
  CHECK(bundle_json(parse_bundle(implied)).dump() == bundle_json(parse_bundle(kSmall)).dump());
  Bundle small = parse_bundle(kSmall);
  CHECK(small.category.morphism_count() == 3);
  CHECK(validate_category(small.category).ok());
  CHECK(check_restriction_axioms(RestrictionCategory(small.category, *small.restriction)).ok());
}

TEST_CASE("presheaves in bundles") {
  Workspace w(resolve_bundle("finset_inj_2"), -1);
  Bundle b = w.bundle();
  b.presheaves["rep"] = w.presheaf("y2");
  b.presheaves["partial"] = w.presheaf("par_y1");
  CHECK(b.presheaves["partial"].over == "par");
  std::string text = bundle_json(b, &w.par()).dump(2);
  Bundle back = parse_bundle(text);
  CHECK(back.presheaves.at("rep").presheaf.action == b.presheaves["rep"].presheaf.action);
  CHECK(back.presheaves.at("partial").presheaf.action == b.presheaves["partial"].presheaf.action);
  CHECK(back.presheaves.at("partial").element_bar == b.presheaves["partial"].element_bar);
  CHECK(bundle_json(back, &w.par()).dump(2) == text);

  CHECK(w.presheaf("yD").presheaf.sizes == representable(w.category(), 2).sizes);
  CHECK(w.presheaf("sigma").presheaf.sizes == std::vector<int>{1, 2, 4});
  CHECK_THROWS_AS(w.presheaf("nothing"), BundleError);
  CHECK_THROWS_AS(w.presheaf("y7"), BundleError);
  Workspace no_monics(resolve_bundle("finset_p_1"), -1);
  CHECK_THROWS_AS(no_monics.mcategory(), BundleError);
}

TEST_CASE("loader errors carry positions") {
  CHECK(error_of("{\"objects\": [").find("byte") != std::string::npos);
  std::string dangling = kSmall;
  dangling.replace(dangling.find("[\"f\", \"1A\", \"f\"]"), 16, "[\"f\", \"1A\", \"g\"]");
  CHECK(error_of(dangling).find("/comp/2/2") != std::string::npos);
  std::string no_identity = kSmall;
  no_identity.replace(no_identity.find(", \"B\": \"1B\""), 11, "");
  CHECK(error_of(no_identity).find("no identity for object 'B'") != std::string::npos);
  std::string bad_identity = kSmall;
  bad_identity.replace(bad_identity.find("\"B\": \"1B\""), 9, "\"B\": \"f\"");
  CHECK(error_of(bad_identity).find("/identities/B") != std::string::npos);
  std::string bad_src = kSmall;
  bad_src.replace(bad_src.find("\"src\": \"A\", \"tgt\": \"B\""), 10, "\"src\": \"C\"");
  CHECK(error_of(bad_src).find("/morphisms/2/src") != std::string::npos);
  std::string bad_bar = kSmall;
  bad_bar.replace(bad_bar.find("\"f\": \"1A\""), 9, "\"f\": \"1B\"");
  CHECK(error_of(bad_bar).find("/restriction/f") != std::string::npos);
  CHECK_THROWS_AS(load_bundle("/nonexistent/bundle.json"), BundleError);
}

TEST_CASE("Par(FinSet, Inj) and FinSet_p agree for small n") {
  for (int n = 0; n <= 2; ++n) {
    auto fx = build_finset_mcat(n, MonicClass::Injections);
    ParCategory pc = par(fx.mc);
    auto p = build_finset_p(n);
    IsoConstraints k{pc.category().bar_table(), p.category.bar_table(), {}, {}};
    auto iso = find_isomorphism(pc.base(), p.category.base(), k);
    REQUIRE(iso);
    CHECK(is_join_restriction_functor(pc.category(), p.category, *iso));
  }
}
