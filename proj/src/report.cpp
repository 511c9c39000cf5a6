#include "lagphase/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <ostream>

#include <fmt/format.h>

#include "json.hpp"

namespace lagphase {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

void add_result(Report& r, const PhaseResult& p, const Config& cfg) {
  const std::string m(to_string(p.method));
  // Only the phase error is tracked; converted back to length it bounds the
  // relative lag and, a fortiori, each beam's lag.
  const double length_err = p.error_estimate * cfg.constants.hbar / cfg.beam.momentum();
  r.rows.push_back({m, "delta_y_plus", p.delta_y_plus, length_err});
  r.rows.push_back({m, "delta_y_minus", p.delta_y_minus, length_err});
  r.rows.push_back({m, "delta_Y", p.delta_Y, length_err});
  r.rows.push_back({m, "delta_phi", p.delta_phi, p.error_estimate});
}

void attempt(Report& r, std::string_view method, const std::function<void()>& body) {
  try {
    body();
  } catch (const ConvergenceError& e) {
    r.failures.push_back(fmt::format("{}: {} (partial {}, bound {})", method, e.what(),
                                     format_number(e.partial()), format_number(e.error_bound())));
  } catch (const DomainError& e) {
    r.failures.push_back(fmt::format("{}: {}", method, e.what()));
  }
}

void add_profile(Report& r, const Config& cfg, const CouplingSpec& coupling,
                 const MethodSet& methods) {
  const double d = cfg.beam.slit_half_sep_d;
  for (double k : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
    const std::string q = fmt::format("delta_vy_plus@y={}", format_number(k * d));
    if (methods.closed)
      r.rows.push_back({"ClosedForm", q, delta_vy(coupling, cfg.beam, Side::Plus, k * d), 0.0});
    if (methods.quadrature) {
      attempt(r, "Quadrature", [&] {
        const auto v = delta_vy_quadrature(coupling, cfg.beam, Side::Plus, k * d, cfg.quadrature);
        r.rows.push_back({"Quadrature", q, v.value, v.error_bound});
      });
    }
  }
}

// Differences of delta_phi between every method and the reference method.
void add_cross_deltas(Report& r, std::string_view reference) {
  const Row* ref = nullptr;
  for (const auto& row : r.rows)
    if (row.method == reference && row.quantity == "delta_phi") ref = &row;
  if (!ref) return;
  const Row base = *ref;
  std::vector<Row> extra;
  for (const auto& row : r.rows) {
    if (row.quantity != "delta_phi" || row.method == base.method) continue;
    extra.push_back({fmt::format("{}-{}", row.method, base.method), "delta_phi_difference",
                     row.value - base.value, row.error_estimate + base.error_estimate});
  }
  r.rows.insert(r.rows.end(), extra.begin(), extra.end());
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  j["command_line"] = m.command_line;
  j["seedless"] = m.seedless;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.config) cfg[k] = v;
  j["config"] = cfg;
  return j;
}

}  // namespace

MethodSet MethodSet::parse(std::string_view list) {
  MethodSet m{false, false, false, false};
  while (true) {
    const auto comma = list.find(',');
    const auto item = trim(list.substr(0, comma));
    if (item == "all") m = MethodSet{};
    else if (item == "closed") m.closed = true;
    else if (item == "quadrature") m.quadrature = true;
    else if (item == "trajectory") m.trajectory = true;
    else if (item == "wkb") m.wkb = true;
    else throw ConfigError("unknown method '" + std::string(item) + "'");
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return m;
}

std::string MethodSet::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(closed, "closed");
  add(quadrature, "quadrature");
  add(trajectory, "trajectory");
  add(wkb, "wkb");
  return out;
}

Report run_electric(const Config& cfg, const MethodSet& methods) {
  cfg.validate();
  Report r;
  r.warnings = cfg.warnings();
  const auto line = cfg.electric_line();
  const auto coupling = cfg.electric_coupling();
  const double hbar = cfg.constants.hbar;

  add_profile(r, cfg, coupling, methods);
  if (methods.closed) add_result(r, closed_form_result(coupling, cfg.beam, hbar), cfg);
  if (methods.quadrature)
    attempt(r, "Quadrature",
            [&] { add_result(r, quadrature_result(coupling, cfg.beam, hbar, cfg.quadrature), cfg); });
  if (methods.trajectory)
    attempt(r, "Trajectory", [&] {
      add_result(r, trajectory_result(coupling, cfg.beam, hbar, cfg.ode_config(), cfg.force_source), cfg);
    });
  if (methods.wkb) {
    r.rows.push_back({"WkbAnalytic", "delta_phi",
                      phase_wkb_electric_analytic(cfg.beam, line, hbar), 0.0});
    attempt(r, "WkbNumeric", [&] {
      const auto w = phase_wkb_electric_extrapolated(cfg.beam, line, cfg.wkb_config(), hbar);
      if (w.validity_warning)
        r.warnings.push_back(fmt::format(
            "WKB expansion parameter {} is not small", format_number(w.validity)));
      add_result(r, wkb_result(w, cfg.beam, hbar, Method::WkbNumeric), cfg);
    });
  }
  add_cross_deltas(r, methods.closed ? "ClosedForm" : "WkbAnalytic");
  return r;
}

Report run_magnetic(const Config& cfg, const MethodSet& methods) {
  cfg.validate();
  Report r;
  r.warnings = cfg.warnings();
  const auto sol = cfg.solenoid();
  const auto coupling = cfg.magnetic_coupling();
  const double hbar = cfg.constants.hbar;
  if (cfg.force_model == ForceModel::None)
    r.warnings.emplace_back("force_model=none: the charges feel no force, lag methods give zero");

  add_profile(r, cfg, coupling, methods);
  if (methods.closed) {
    add_result(r, closed_form_result(coupling, cfg.beam, hbar), cfg);
    r.rows.push_back({"Flux", "delta_phi",
                      phase_flux(cfg.beam.charge_e, sol.b0(), sol.area(), cfg.constants.c, hbar),
                      0.0});
  }
  if (methods.quadrature)
    attempt(r, "Quadrature",
            [&] { add_result(r, quadrature_result(coupling, cfg.beam, hbar, cfg.quadrature), cfg); });
  if (methods.trajectory)
    attempt(r, "Trajectory", [&] {
      add_result(r, trajectory_result(coupling, cfg.beam, hbar, cfg.ode_config(), cfg.force_source), cfg);
    });
  if (methods.wkb)
    attempt(r, "WkbNumeric", [&] {
      const auto w = phase_wkb_magnetic_extrapolated(cfg.beam, sol, cfg.wkb_config(), cfg.constants);
      add_result(r, wkb_result(w, cfg.beam, hbar, Method::WkbNumeric), cfg);
    });
  // The flux form is the reference: it does not depend on the force model.
  add_cross_deltas(r, methods.closed ? "Flux" : "");
  return r;
}

Report run_case(Case c, const Config& cfg, const MethodSet& methods) {
  return c == Case::Electric ? run_electric(cfg, methods) : run_magnetic(cfg, methods);
}

RunManifest make_manifest(const Config& cfg, std::string command_line) {
  RunManifest m;
  m.tool_version = std::string(kToolVersion);
  m.timestamp = utc_timestamp();
  m.command_line = std::move(command_line);
  m.config = to_key_values(cfg);
  return m;
}

Table to_table(const Report& report) {
  Table t;
  for (const auto& row : report.rows) t.lines.push_back({{}, row});
  return t;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  return fmt::format("{:.12g}", v);
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& k : table.key_columns) out << csv_field(k) << ',';
  out << "method,quantity,value,error_estimate\n";
  for (const auto& line : table.lines) {
    for (const auto& k : line.keys) out << csv_field(k) << ',';
    out << csv_field(line.row.method) << ',' << csv_field(line.row.quantity) << ','
        << format_number(line.row.value) << ',' << format_number(line.row.error_estimate) << '\n';
  }
}

void write_structured(std::ostream& out, const Table& table, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["manifest"] = manifest_json(manifest);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& line : table.lines) {
    nlohmann::ordered_json row;
    for (std::size_t i = 0; i < table.key_columns.size() && i < line.keys.size(); ++i)
      row[table.key_columns[i]] = line.keys[i];
    row["method"] = line.row.method;
    row["quantity"] = line.row.quantity;
    row["value"] = line.row.value == 0.0 ? 0.0 : line.row.value;
    row["error_estimate"] = line.row.error_estimate;
    rows.push_back(row);
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

void write_manifest_json(std::ostream& out, const RunManifest& manifest) {
  out << manifest_json(manifest).dump(2) << '\n';
}

}  // namespace lagphase
