#include "jrcat/report.hpp"

#include <algorithm>
#include <sstream>

namespace jrcat {

void LawReport::add(std::string tag, std::vector<int> ids, std::string detail) {
  violations_.push_back({std::move(tag), std::move(ids), std::move(detail)});
}

void LawReport::merge(const LawReport& other) {
  violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
}

std::size_t LawReport::count(const std::string& tag) const {
  return static_cast<std::size_t>(std::count_if(
      violations_.begin(), violations_.end(), [&](const Violation& v) { return v.tag == tag; }));
}

bool LawReport::cites(const std::string& tag, const std::vector<int>& ids) const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [&](const Violation& v) { return v.tag == tag && v.ids == ids; });
}

std::vector<std::string> LawReport::lines() const {
  std::vector<Violation> sorted = violations_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> out;
  out.reserve(sorted.size());
  for (const auto& v : sorted) {
    std::ostringstream line;
    line << v.tag;
    for (int id : v.ids) line << ' ' << id;
    if (!v.detail.empty()) line << " # " << v.detail;
    out.push_back(line.str());
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const LawReport& report) {
  for (const auto& line : report.lines()) os << line << '\n';
  return os;
}

}  // namespace jrcat
