#pragma once

#include <string>
#include <vector>

#include "wigrot/geometry.hpp"

namespace wigrot {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured residual
  double tolerance = 0.0;
};

// Cross-module invariants on a fixed set of sample events; used by
// `wigrot validate`.
std::vector<CheckResult> run_validation(const MetricConfig& cfg = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace wigrot
