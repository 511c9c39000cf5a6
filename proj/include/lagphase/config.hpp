#pragma once

// Flat key/value run configuration.
//
// File format: one `key = value` per line, `#` starts a comment, blank lines
// are ignored, later keys override earlier ones.  Recognised keys:
//
//   beam.charge  beam.mass  beam.v0  beam.d
//   electric.lambda  electric.epsilon
//   solenoid.b0  solenoid.area
//   constants.c  constants.hbar
//   force_model                      newton3 | none
//   quadrature.abs_tol  quadrature.rel_tol  quadrature.max_subdivisions
//   ode.y_start  ode.y_end  ode.local_error_tol  ode.max_steps
//   ode.tail_correction              true | false
//   ode.force_source                 closed_form_y | full_quadrature_xy
//   wkb.y_max
//   wkb.expansion                    first_order | exact_root
//   wkb.potential                    dipole_limit | two_line

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lagphase/core.hpp"
#include "lagphase/dynamics.hpp"
#include "lagphase/forces.hpp"
#include "lagphase/oracle.hpp"
#include "lagphase/phase.hpp"

namespace lagphase {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  BeamParams beam;
  double lambda = 50.0;  // with epsilon = 0.01: p = 1
  double epsilon = 0.01;
  double b0 = 4.0 * kPi;  // with area = 1: mu = 1
  double area = 1.0;
  Constants constants;
  ForceModel force_model = ForceModel::Newton3;
  ForceSource force_source = ForceSource::ClosedFormY;
  QuadratureConfig quadrature;
  OdeConfig ode;
  WkbConfig wkb;

  ElectricDipoleLine electric_line() const { return ElectricDipoleLine::make(lambda, epsilon); }
  SolenoidLine solenoid() const { return SolenoidLine::make(b0, area, constants); }
  CouplingSpec electric_coupling() const { return CouplingSpec::electric(beam, electric_line()); }
  CouplingSpec magnetic_coupling() const {
    return CouplingSpec::magnetic(beam, solenoid(), constants, force_model);
  }

  /// Numeric-engine settings with the shared quadrature settings applied.
  OdeConfig ode_config() const {
    OdeConfig o = ode;
    o.force_quadrature = quadrature;
    return o;
  }
  WkbConfig wkb_config() const {
    WkbConfig w = wkb;
    w.quadrature = quadrature;
    return w;
  }

  /// Re-checks every invariant; throws ConfigError with the first violation.
  void validate() const;

  /// Soft-validity warnings (dipole limit, nonrelativistic speed).
  std::vector<std::string> warnings() const;
};

/// Sets one key.  Throws ConfigError for unknown keys or malformed values.
void apply_setting(Config& cfg, std::string_view key, std::string_view value);

/// Parses "key=value" (as given to --set).
void apply_override(Config& cfg, std::string_view assignment);

Config parse_config(std::string_view text);
Config load_config(const std::string& path);

/// Every key with its resolved value, in a fixed order.  Values print with
/// round-trip precision so the output parses back to the same Config.
std::vector<std::pair<std::string, std::string>> to_key_values(const Config& cfg);

}  // namespace lagphase
