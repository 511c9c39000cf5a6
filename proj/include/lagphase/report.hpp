#pragma once

// End-to-end reports for the two dipole lines and the table/manifest output
// used by the command-line driver.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lagphase/config.hpp"

namespace lagphase {

enum class Case { Electric, Magnetic };

struct MethodSet {
  bool closed = true;
  bool quadrature = true;
  bool trajectory = true;
  bool wkb = true;

  /// Parses a comma list of closed, quadrature, trajectory, wkb, or "all".
  static MethodSet parse(std::string_view list);
  std::string to_string() const;
};

struct Row {
  std::string method;
  std::string quantity;
  double value = 0.0;
  double error_estimate = 0.0;
};

struct Report {
  std::vector<Row> rows;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;  // methods that threw a numerical error
};

Report run_electric(const Config& cfg, const MethodSet& methods);
Report run_magnetic(const Config& cfg, const MethodSet& methods);
Report run_case(Case c, const Config& cfg, const MethodSet& methods);

struct RunManifest {
  std::string tool_version;
  std::string timestamp;  // UTC, ISO 8601
  std::string command_line;
  bool seedless = true;
  std::vector<std::pair<std::string, std::string>> config;
};

inline constexpr std::string_view kToolVersion = "1.0.0";

RunManifest make_manifest(const Config& cfg, std::string command_line);

enum class OutputFormat { Table, Structured };

/// A table with optional leading key columns (used by sweeps).
struct Table {
  std::vector<std::string> key_columns;
  struct Line {
    std::vector<std::string> keys;
    Row row;
  };
  std::vector<Line> lines;
};

Table to_table(const Report& report);

/// Numbers print with 12 significant digits; negative zero prints as 0.
std::string format_number(double v);

/// CSV with one header row: key columns, then method,quantity,value,error_estimate.
void write_csv(std::ostream& out, const Table& table);

/// JSON object {"manifest": {...}, "rows": [...]}.
void write_structured(std::ostream& out, const Table& table, const RunManifest& manifest);

void write_manifest_json(std::ostream& out, const RunManifest& manifest);

}  // namespace lagphase
