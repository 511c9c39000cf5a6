#pragma once

// The acceptance checks, run against a configuration.  Each check reports
// the measured quantity next to its pinned threshold.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lagphase/config.hpp"

namespace lagphase {

struct CheckOutcome {
  bool passed = false;
  double measured = 0.0;   // worst case of the checked quantity
  double threshold = 0.0;  // pass limit for `measured`
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0: no limit
};

struct Check {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 for none
  std::function<CheckOutcome(const Config&)> run;
};

const std::vector<Check>& acceptance_checks();

/// Runs one check, timing it and folding the time limit into the verdict.
/// Numerical exceptions turn into a failed outcome.
CheckOutcome run_check(const Check& check, const Config& cfg);

/// One line per check: "PASS  3  name  measured=... threshold=... (t s)".
std::string format_outcome(const Check& check, const CheckOutcome& outcome);

/// Runs the selected checks (all when `ids` is empty), printing one line
/// each.  Returns true when every check passed.
bool run_checks(const Config& cfg, const std::vector<int>& ids, std::ostream& out);

void list_checks(std::ostream& out);

}  // namespace lagphase
