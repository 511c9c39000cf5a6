#include "lagphase/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lagphase {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError("invalid number for " + std::string(key) + ": '" + std::string(text) + "'");
  return v;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  const double v = parse_double(key, text);
  if (v < 1.0 || v != std::floor(v) || v > 1e15)
    throw ConfigError("invalid count for " + std::string(key) + ": '" + std::string(text) + "'");
  return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean for " + std::string(key) + ": '" + std::string(text) + "'");
}

std::string num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void apply_setting(Config& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  auto d = [&] { return parse_double(key, value); };

  if (key == "beam.charge") cfg.beam.charge_e = d();
  else if (key == "beam.mass") cfg.beam.mass_m = d();
  else if (key == "beam.v0") cfg.beam.speed_v0 = d();
  else if (key == "beam.d") cfg.beam.slit_half_sep_d = d();
  else if (key == "electric.lambda") cfg.lambda = d();
  else if (key == "electric.epsilon") cfg.epsilon = d();
  else if (key == "solenoid.b0") cfg.b0 = d();
  else if (key == "solenoid.area") cfg.area = d();
  else if (key == "constants.c") cfg.constants.c = d();
  else if (key == "constants.hbar") cfg.constants.hbar = d();
  else if (key == "force_model") {
    if (value == "newton3") cfg.force_model = ForceModel::Newton3;
    else if (value == "none") cfg.force_model = ForceModel::None;
    else throw ConfigError("force_model must be newton3 or none");
  }
  else if (key == "quadrature.abs_tol") cfg.quadrature.abs_tol = d();
  else if (key == "quadrature.rel_tol") cfg.quadrature.rel_tol = d();
  else if (key == "quadrature.max_subdivisions")
    cfg.quadrature.max_subdivisions = parse_count(key, value);
  else if (key == "ode.y_start") cfg.ode.y_start = d();
  else if (key == "ode.y_end") cfg.ode.y_end = d();
  else if (key == "ode.local_error_tol") cfg.ode.local_error_tol = d();
  else if (key == "ode.max_steps") cfg.ode.max_steps = parse_count(key, value);
  else if (key == "ode.tail_correction") cfg.ode.tail_correction = parse_bool(key, value);
  else if (key == "ode.force_source") {
    if (value == "closed_form_y") cfg.force_source = ForceSource::ClosedFormY;
    else if (value == "full_quadrature_xy") cfg.force_source = ForceSource::FullQuadratureXY;
    else throw ConfigError("ode.force_source must be closed_form_y or full_quadrature_xy");
  }
  else if (key == "wkb.y_max") cfg.wkb.y_max = d();
  else if (key == "wkb.expansion") {
    if (value == "first_order") cfg.wkb.expansion = WkbExpansion::FirstOrder;
    else if (value == "exact_root") cfg.wkb.expansion = WkbExpansion::ExactRoot;
    else throw ConfigError("wkb.expansion must be first_order or exact_root");
  }
  else if (key == "wkb.potential") {
    if (value == "dipole_limit") cfg.wkb.potential = PotentialForm::DipoleLimit;
    else if (value == "two_line") cfg.wkb.potential = PotentialForm::TwoLine;
    else throw ConfigError("wkb.potential must be dipole_limit or two_line");
  }
  else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void apply_override(Config& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  apply_setting(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

Config parse_config(std::string_view text) {
  Config cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_override(cfg, line);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void Config::validate() const {
  try {
    BeamParams::make(beam.charge_e, beam.mass_m, beam.speed_v0, beam.slit_half_sep_d);
    Constants::make(constants.c, constants.hbar);
    electric_line();
    solenoid();
    quadrature.validate();
    ode.validate(beam);
    wkb.resolved_y_max(beam);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::string> Config::warnings() const {
  std::vector<std::string> out;
  if (!electric_line().dipole_limit_ok(beam.slit_half_sep_d))
    out.emplace_back("electric.epsilon is not small compared to beam.d (dipole limit)");
  if (beam.relativistic(constants))
    out.emplace_back("beam.v0 / constants.c > 0.1: outside the nonrelativistic treatment");
  return out;
}

std::vector<std::pair<std::string, std::string>> to_key_values(const Config& cfg) {
  std::vector<std::pair<std::string, std::string>> kv = {
      {"beam.charge", num(cfg.beam.charge_e)},
      {"beam.mass", num(cfg.beam.mass_m)},
      {"beam.v0", num(cfg.beam.speed_v0)},
      {"beam.d", num(cfg.beam.slit_half_sep_d)},
      {"electric.lambda", num(cfg.lambda)},
      {"electric.epsilon", num(cfg.epsilon)},
      {"solenoid.b0", num(cfg.b0)},
      {"solenoid.area", num(cfg.area)},
      {"constants.c", num(cfg.constants.c)},
      {"constants.hbar", num(cfg.constants.hbar)},
      {"force_model", cfg.force_model == ForceModel::Newton3 ? "newton3" : "none"},
      {"quadrature.abs_tol", num(cfg.quadrature.abs_tol)},
      {"quadrature.rel_tol", num(cfg.quadrature.rel_tol)},
      {"quadrature.max_subdivisions", std::to_string(cfg.quadrature.max_subdivisions)},
      {"ode.y_start", num(cfg.ode.resolved_y_start(cfg.beam))},
      {"ode.y_end", num(cfg.ode.resolved_y_end(cfg.beam))},
      {"ode.local_error_tol", num(cfg.ode.local_error_tol)},
      {"ode.max_steps", std::to_string(cfg.ode.max_steps)},
      {"ode.tail_correction", cfg.ode.tail_correction ? "true" : "false"},
      {"ode.force_source",
       cfg.force_source == ForceSource::ClosedFormY ? "closed_form_y" : "full_quadrature_xy"},
      {"wkb.y_max", num(cfg.wkb.resolved_y_max(cfg.beam))},
      {"wkb.expansion",
       cfg.wkb.expansion == WkbExpansion::FirstOrder ? "first_order" : "exact_root"},
      {"wkb.potential",
       cfg.wkb.potential == PotentialForm::DipoleLimit ? "dipole_limit" : "two_line"},
  };
  return kv;
}

}  // namespace lagphase
