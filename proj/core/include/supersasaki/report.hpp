#pragma once

#include <string>
#include <vector>

namespace supersasaki {

/// One verified identity. Failures are data, not exceptions.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string residual;  // printed residual; "0" when canonically zero
  std::string detail;
};

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace supersasaki
