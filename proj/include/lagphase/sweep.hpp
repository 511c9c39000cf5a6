#pragma once

// Parameter sweeps: one report per grid point, run concurrently, rows kept
// in grid order.

#include <string>
#include <vector>

#include "lagphase/report.hpp"

namespace lagphase {

struct SweepSpec {
  Case kind = Case::Electric;
  std::string parameter;  // d, v0, lambda, epsilon, b0, area or c
  std::vector<double> values;
  MethodSet methods;
};

struct SweepPoint {
  double value = 0.0;
  Report report;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> points;  // same order as SweepSpec::values
};

/// Configuration key swept by a parameter name.  Throws ConfigError for
/// unknown names.
std::string sweep_key(const std::string& parameter);

/// Parses "a,b,c" or "start:stop:count" (linear) or "start:stop:count:log".
std::vector<double> parse_sweep_values(const std::string& text);

/// Throws ConfigError before any work if the parameter is unknown or a grid
/// point gives an invalid configuration.
SweepResult run_sweep(const Config& base, const SweepSpec& spec);

/// Flattens to a table keyed by grid index and parameter value.
Table to_table(const SweepResult& result);

}  // namespace lagphase
