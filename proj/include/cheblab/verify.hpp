#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace cheblab {

/// Outcome of one numbered check. margin is the worst signed distance to the
/// pass threshold over all instances, positive when the check holds.
struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double margin = 0.0;
  std::string detail;
  double seconds = 0.0;
};

/// Number of checks known to run_suite.
inline constexpr int kCheckCount = 11;

/// "all" or a comma list of check ids such as "1,5,9".
std::vector<int> parse_suite(const std::string& spec);

/// Runs the listed checks in order. seed drives the random sample points.
std::vector<CheckResult> run_suite(const std::vector<int>& ids, unsigned seed = 1);

std::string check_name(int id);

void to_json(nlohmann::json& j, const CheckResult& r);
void from_json(const nlohmann::json& j, CheckResult& r);

}  // namespace cheblab
