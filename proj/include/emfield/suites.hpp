#pragma once

#include <string>
#include <vector>

#include "emfield/config.hpp"
#include "emfield/report.hpp"

namespace emfield {

/// Canonical suite names, in run order ("all" expands to these).
const std::vector<std::string>& suite_names();

std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& config);

VerificationReport run_suites(const RunConfig& config,
                              const std::vector<std::string>& requested);

std::string report_to_json(const VerificationReport& report);

/// Shared by the lorentz suite and the acceptance harness: the sigma = 0.5
/// on-shell-centered packet pair used for boost checks (small radius keeps
/// the angular content within the 98-point design order).
std::pair<AnalyticTestFunction, AnalyticTestFunction> boost_check_packets();

}  // namespace emfield
