#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <vector>

namespace jrcat {

/// One failed law instance: an axiom tag plus the ids that witness it.
struct Violation {
  std::string tag;
  std::vector<int> ids;
  std::string detail;

  auto operator<=>(const Violation&) const = default;
  bool operator==(const Violation&) const = default;
};

/// Line-oriented law report shared by every checker.
///
/// Each violation renders as one line: the tag, then the ids separated by
/// spaces, then an optional detail after " # ". Lines are emitted sorted so
/// that output does not depend on the order checks ran in.
class LawReport {
 public:
  void add(std::string tag, std::vector<int> ids, std::string detail = {});
  void merge(const LawReport& other);

  bool ok() const { return violations_.empty(); }
  std::size_t size() const { return violations_.size(); }
  const std::vector<Violation>& violations() const { return violations_; }

  std::size_t count(const std::string& tag) const;
  bool has(const std::string& tag) const { return count(tag) > 0; }
  /// True if some violation with `tag` lists exactly `ids`.
  bool cites(const std::string& tag, const std::vector<int>& ids) const;

  std::vector<std::string> lines() const;

 private:
  std::vector<Violation> violations_;
};

std::ostream& operator<<(std::ostream& os, const LawReport& report);

}  // namespace jrcat
