#pragma once

#include <set>
#include <string>
#include <vector>

namespace ssmhd {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::set<int> only;  // empty = run all criteria
  int threads = 0;     // 0 = hardware concurrency
};

/// The verification battery: each entry exercises one acceptance check at its
/// pinned tolerance and reports pass/fail with the governing numbers.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

}  // namespace ssmhd
