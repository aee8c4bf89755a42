#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace hdabridge {

struct Violation {
  std::string rule;   // short name of the violated axiom or identity
  std::string where;  // the offending instance
};

/// Collects every violated axiom instance instead of stopping at the first.
class ValidationReport {
 public:
  void add(std::string rule, std::string where) {
    violations_.push_back({std::move(rule), std::move(where)});
  }
  void merge(const ValidationReport& other) {
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
  }

  bool ok() const { return violations_.empty(); }
  explicit operator bool() const { return ok(); }
  std::size_t size() const { return violations_.size(); }
  const std::vector<Violation>& violations() const { return violations_; }

  std::size_t count(const std::string& rule) const {
    std::size_t n = 0;
    for (const auto& v : violations_) n += v.rule == rule;
    return n;
  }

 private:
  std::vector<Violation> violations_;
};

inline std::ostream& operator<<(std::ostream& os, const ValidationReport& report) {
  if (report.ok()) return os << "OK\n";
  for (const auto& v : report.violations()) os << v.rule << ": " << v.where << '\n';
  return os;
}

}  // namespace hdabridge
