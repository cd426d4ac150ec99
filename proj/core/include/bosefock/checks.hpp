#pragma once

// The library-level verification suite behind the `verify` command: each
// check pins one contract of the toolkit with fixed seeds and tolerances and
// reports the measured defect against its threshold.

#include <string>
#include <vector>

namespace bosefock {

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;  // measured defect or error
  double threshold = 0.0; // pinned tolerance the defect is held against
  std::string detail;     // one-line context (configuration, sub-measurements)
};

// Runs every check in a fixed order with fixed seeds; deterministic output.
std::vector<CheckResult> run_all_checks();

// "PASS name (observed <= threshold) detail" / "FAIL ..." one-liner.
std::string format_check_line(const CheckResult& result);

} // namespace bosefock
