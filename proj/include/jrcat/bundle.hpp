#pragma once

// Bundle files: a category as JSON plus optional restriction, monics and
// named presheaves. Ids are strings in files and dense integers in memory.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jrcat/bridge.hpp"
#include "jrcat/fixtures.hpp"
#include "jrcat/sheafify.hpp"

namespace jrcat {

struct PresheafEntry {
  /// "base" or "par".
  std::string over = "base";
  Presheaf presheaf;
  /// element_bar[a][x]; empty when the file has no element_bar table.
  std::vector<std::vector<MorId>> element_bar;
};

struct Bundle {
  FinCategory category;
  std::optional<std::vector<MorId>> restriction;
  std::optional<std::vector<MorId>> monics;
  std::map<std::string, PresheafEntry> presheaves;
};

/// Throws BundleError with the offending position (a JSON pointer, or the
/// byte offset for syntax errors).
Bundle parse_bundle(const std::string& text, const std::string& origin = "bundle");
Bundle load_bundle(const std::string& path);

nlohmann::json category_json(const FinCategory& c);
nlohmann::json presheaf_json(const FinCategory& c, const PresheafEntry& p);
/// `par` is needed only when some presheaf is over Par.
nlohmann::json bundle_json(const Bundle& b, const ParCategory* par = nullptr);

Bundle builtin_bundle(const FixtureSpec& spec);
/// A built-in fixture name or a file path.
Bundle resolve_bundle(const std::string& name);

nlohmann::json law_report_json(const LawReport& report);
nlohmann::json nat_json(const NatTrans& alpha);
nlohmann::json transfer_report_json(const TransferReport& report);

/// A loaded bundle with the structures derived from it built on demand.
class Workspace {
 public:
  Workspace(Bundle bundle, int max_family);

  const Bundle& bundle() const { return bundle_; }
  const FinCategory& category() const { return bundle_.category; }
  int max_family() const { return max_family_; }

  /// Throw BundleError when the section is missing.
  const RestrictionCategory& restriction();
  const MCategory& mcategory();
  const ParCategory& par();
  const Topology& topology();

  /// A presheaf from the bundle, or one of the built-in names: y<obj>,
  /// yD (last object), terminal, const2, sigma, par_y<obj>. Throws
  /// BundleError for unknown names.
  PresheafEntry presheaf(const std::string& name);

 private:
  Bundle bundle_;
  int max_family_;
  std::optional<RestrictionCategory> restriction_;
  std::optional<MCategory> mc_;
  std::optional<ParCategory> par_;
  std::optional<Topology> topology_;
};

}  // namespace jrcat
