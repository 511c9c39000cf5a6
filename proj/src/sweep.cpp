#include "lagphase/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

namespace lagphase {

std::string sweep_key(const std::string& parameter) {
  if (parameter == "d") return "beam.d";
  if (parameter == "v0") return "beam.v0";
  if (parameter == "lambda") return "electric.lambda";
  if (parameter == "epsilon") return "electric.epsilon";
  if (parameter == "b0") return "solenoid.b0";
  if (parameter == "area") return "solenoid.area";
  if (parameter == "c") return "constants.c";
  throw ConfigError("unknown sweep parameter '" + parameter +
                    "' (expected d, v0, lambda, epsilon, b0, area or c)");
}

std::vector<double> parse_sweep_values(const std::string& text) {
  auto number = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !std::isfinite(v))
      throw ConfigError("invalid sweep value '" + s + "'");
    return v;
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
    return parts;
  };

  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3 && !(parts.size() == 4 && parts[3] == "log"))
      throw ConfigError("range must be start:stop:count or start:stop:count:log");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double n = number(parts[2]);
    if (n < 1 || n != std::floor(n) || n > 1e6) throw ConfigError("invalid sweep count");
    const bool log = parts.size() == 4;
    if (log && (a <= 0 || b <= 0)) throw ConfigError("log range needs positive ends");
    const auto count = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      out.push_back(log ? a * std::pow(b / a, f) : a + (b - a) * f);
    }
  } else {
    for (const auto& p : split(text, ',')) out.push_back(number(p));
  }
  if (out.empty()) throw ConfigError("empty sweep");
  return out;
}

SweepResult run_sweep(const Config& base, const SweepSpec& spec) {
  const std::string key = sweep_key(spec.parameter);
  if (spec.values.empty()) throw ConfigError("empty sweep");

  std::vector<Config> grid;
  grid.reserve(spec.values.size());
  for (double v : spec.values) {
    Config c = base;
    std::ostringstream text;
    text.precision(17);
    text << v;
    apply_setting(c, key, text.str());
    c.validate();
    grid.push_back(c);
  }

  // Batches of hardware_concurrency tasks keep the thread count bounded.
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  SweepResult result;
  result.parameter = spec.parameter;
  for (std::size_t first = 0; first < grid.size(); first += width) {
    const std::size_t last = std::min(grid.size(), first + width);
    std::vector<std::future<Report>> jobs;
    for (std::size_t i = first; i < last; ++i)
      jobs.push_back(std::async(std::launch::async, [&c = grid[i], &spec] {
        return run_case(spec.kind, c, spec.methods);
      }));
    for (std::size_t i = first; i < last; ++i)
      result.points.push_back({spec.values[i], jobs[i - first].get()});
  }
  return result;
}

Table to_table(const SweepResult& result) {
  Table t;
  t.key_columns = {"index", result.parameter};
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    for (const auto& row : p.report.rows)
      t.lines.push_back({{std::to_string(i), format_number(p.value)}, row});
  }
  return t;
}

}  // namespace lagphase
