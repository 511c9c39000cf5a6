#pragma once

// Phase shifts.  Two independent routes:
//   * semiclassical: momentum times the classical relative lag, over hbar;
//   * WKB: the phase accumulated along the two straight beam paths, from the
//     canonical momentum in the dipole potential (electric) or from the
//     line integral of (e/c) A (magnetic).

#include <optional>

#include "lagphase/core.hpp"
#include "lagphase/dynamics.hpp"
#include "lagphase/oracle.hpp"

namespace lagphase {

/// Delta phi = m v0 Delta Y / hbar.
double phase_semiclassical(const BeamParams& beam, double delta_Y, double hbar);

/// Enclosed-flux form e B0 A / (c hbar).
double phase_flux(double e, double b0, double area, double c, double hbar);

/// Closed-form WKB phase of the electric line, -4 pi e p / (v0 hbar).
double phase_wkb_electric_analytic(const BeamParams& beam, const ElectricDipoleLine& line,
                                   double hbar);

enum class WkbExpansion {
  FirstOrder,  // p_y ~ p0 (1 - m e Phi / p0^2)
  ExactRoot,   // p_y = sqrt(p0^2 - 2 m e Phi)
};

enum class PotentialForm {
  DipoleLimit,  // 2 p x / (x^2 + y^2)
  TwoLine,      // exact potential of the +-lambda pair
};

struct WkbConfig {
  std::optional<double> y_max;  // default 1e4 d
  QuadratureConfig quadrature;
  WkbExpansion expansion = WkbExpansion::FirstOrder;
  PotentialForm potential = PotentialForm::DipoleLimit;

  double resolved_y_max(const BeamParams& beam) const;
};

struct WkbResult {
  double delta_phi = 0.0;
  double error_estimate = 0.0;
  double quadrature_error = 0.0;  // part of error_estimate from quadrature alone
  double phase_plus = 0.0;   // path x = +d, relative to the free path
  double phase_minus = 0.0;  // path x = -d
  double validity = 0.0;     // max |2 m e Phi| / p0^2 along the paths (electric)
  bool validity_warning = false;
};

/// Two-path phase difference with the paths cut at |y| <= y_max.  The
/// constant p0 part of each path cancels analytically; only the
/// potential-dependent part is integrated.  error_estimate covers the
/// quadrature error and the cut-off tails.
WkbResult phase_wkb_electric(const BeamParams& beam, const ElectricDipoleLine& line,
                             const WkbConfig& cfg, double hbar);

WkbResult phase_wkb_magnetic(const BeamParams& beam, const SolenoidLine& sol,
                             const WkbConfig& cfg, const Constants& k);

/// Richardson extrapolation in 1/y_max over y_max * {0.1, 1, 10}.
WkbResult phase_wkb_electric_extrapolated(const BeamParams& beam, const ElectricDipoleLine& line,
                                          const WkbConfig& cfg, double hbar);

WkbResult phase_wkb_magnetic_extrapolated(const BeamParams& beam, const SolenoidLine& sol,
                                          const WkbConfig& cfg, const Constants& k);

// ---------------------------------------------------------------------------
// PhaseResult builders, one per method.
// ---------------------------------------------------------------------------

PhaseResult closed_form_result(const CouplingSpec& coupling, const BeamParams& beam,
                               double hbar);

PhaseResult quadrature_result(const CouplingSpec& coupling, const BeamParams& beam, double hbar,
                              const QuadratureConfig& cfg);

PhaseResult trajectory_result(const CouplingSpec& coupling, const BeamParams& beam, double hbar,
                              const OdeConfig& cfg,
                              ForceSource source = ForceSource::ClosedFormY);

/// Converts per-path WKB phases into equivalent lags (phase * hbar / p).
PhaseResult wkb_result(const WkbResult& wkb, const BeamParams& beam, double hbar, Method method);

}  // namespace lagphase
