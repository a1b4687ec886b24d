#pragma once

#include <string>
#include <vector>

namespace emfield {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  double scale = 1.0;  // what the tolerance was relative to, for diagnosis
  std::string details;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::string environment_json;  // grid, seed, constants, versions

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

}  // namespace emfield
