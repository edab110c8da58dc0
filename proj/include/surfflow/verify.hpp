#pragma once

#include <string>
#include <vector>

#include "surfflow/config.hpp"

namespace surfflow {

struct CheckResult {
  std::string module;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs the invariant suites of every module at the configured resolution.
std::vector<CheckResult> run_verification(const RunConfig& config);

}  // namespace surfflow
