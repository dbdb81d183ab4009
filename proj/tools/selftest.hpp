#pragma once

#include <string>
#include <vector>

namespace freefp::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Fast invariant suite; `quick` keeps only the cheapest checks.
std::vector<CheckResult> run_selftest(bool quick);

} // namespace freefp::cli
