#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace cosimplex {

// One verified identity or condition. Untested checks (outside the truncation) never fail.
struct Check {
  std::string name;
  bool holds = true;
  bool tested = true;
  double residual = 0.0;
  std::string detail;
};

struct PropertyReport {
  std::vector<Check> checks;
  std::vector<std::string> caveats;

  void add(std::string name, bool holds, double residual = 0.0, std::string detail = {}) {
    checks.push_back({std::move(name), holds, true, residual, std::move(detail)});
  }
  void untested(std::string name, std::string why) {
    checks.push_back({std::move(name), true, false, 0.0, std::move(why)});
  }
  void merge(const PropertyReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    caveats.insert(caveats.end(), other.caveats.begin(), other.caveats.end());
  }
  bool all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds; });
  }
  // First failing check, or nullptr.
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.holds) return &c;
    return nullptr;
  }
};

}  // namespace cosimplex
