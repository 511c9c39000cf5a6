#pragma once

// The lag effect.  Both dipole lines push a passing charge with the same
// functional form once the reaction force is taken,
//
//     F_y(on charge) = g * 4 x_e y_e / (x_e^2 + y_e^2)^2,
//
// with g = e p for the electric line and g = -e mu v0 / c for the solenoid.
// The closed forms below use the impulse approximation (forces evaluated on
// the unperturbed straight path); integrate_trajectory() solves the full
// equation of motion to measure what that approximation leaves out.

#include <cstddef>
#include <optional>
#include <vector>

#include "lagphase/core.hpp"
#include "lagphase/forces.hpp"
#include "lagphase/oracle.hpp"

namespace lagphase {

enum class CouplingKind { Electric, Magnetic };

struct CouplingSpec {
  CouplingKind kind = CouplingKind::Electric;
  double g = 0.0;

  static CouplingSpec electric(const BeamParams& beam, const ElectricDipoleLine& line);
  /// Under ForceModel::None the charge feels no force and g is zero.
  static CouplingSpec magnetic(const BeamParams& beam, const SolenoidLine& sol,
                               const Constants& k, ForceModel model = ForceModel::Newton3);
  /// Coupling with the given dimensionless strength 4 pi |g| / (m v0^2 d);
  /// the sign of `strength` is the sign of g.
  static CouplingSpec with_strength(CouplingKind kind, double strength, const BeamParams& beam);
};

/// Dimensionless strength |Delta Y| / d = 4 pi |g| / (m v0^2 d).
double coupling_strength(const CouplingSpec& coupling, const BeamParams& beam);

/// y-force on a charge at (x, y) (reaction of the line on the charge).
double force_on_charge_y(const CouplingSpec& coupling, double x, double y);

/// Velocity change accumulated by the time the charge on `side` reaches y_e:
/// -(g / (m v0)) * 2 x_e / (x_e^2 + y_e^2).
double delta_vy(const CouplingSpec& coupling, const BeamParams& beam, Side side, double y_e);

/// Longitudinal lag after passage, -2 pi g sign(x_e) / (m v0^2).
double lag_displacement(const CouplingSpec& coupling, const BeamParams& beam, Side side);

/// Relative lag Delta y(+) - Delta y(-) = -4 pi g / (m v0^2); independent of d.
double relative_displacement(const CouplingSpec& coupling, const BeamParams& beam);

// ---------------------------------------------------------------------------
// Quadrature route: the impulse integral and the lag from nested quadrature
// of the force along the straight path.
// ---------------------------------------------------------------------------

/// Numerical (1/m) * integral of F_y dt up to the point y_e.
QuadratureResult delta_vy_quadrature(const CouplingSpec& coupling, const BeamParams& beam,
                                     Side side, double y_e, const QuadratureConfig& cfg);

/// Lag from the time integral of the numerically integrated velocity change.
/// Throws ConvergenceError if the outer integral misses its tolerance.
QuadratureResult lag_displacement_quadrature(const CouplingSpec& coupling,
                                             const BeamParams& beam, Side side,
                                             const QuadratureConfig& cfg);

// ---------------------------------------------------------------------------
// Full trajectory
// ---------------------------------------------------------------------------

enum class ForceSource { ClosedFormY, FullQuadratureXY };

struct OdeConfig {
  std::optional<double> y_start;  // default -1e3 d
  std::optional<double> y_end;    // default +1e3 d
  double local_error_tol = 1e-10;
  std::size_t max_steps = 10'000'000;
  bool tail_correction = true;
  QuadratureConfig force_quadrature;  // used by ForceSource::FullQuadratureXY

  double resolved_y_start(const BeamParams& beam) const;
  double resolved_y_end(const BeamParams& beam) const;
  void validate(const BeamParams& beam) const;
};

struct TrajectorySample {
  double t;
  double x;
  double y;
  double v_x;
  double v_y;
  double lag;  // y minus the constant-velocity reference, kept without cancellation
};

struct TrajectoryMeta {
  Side side = Side::Plus;
  double y_start = 0.0;
  double y_end = 0.0;
  bool tail_correction = false;
  double tail_before = 0.0;  // lag accumulated before y_start (already in samples)
  double tail_after = 0.0;   // lag still to accumulate after y_end
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
  double max_local_error = 0.0;
  double max_transverse_deflection = 0.0;  // max |x - x_e|
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  TrajectoryMeta meta;
};

/// Solves m dv/dt = F(on charge) from (x_e, y_start) with velocity (0, v0)
/// to the time the unperturbed charge reaches y_end.
///
/// Throws SingularityError if the charge comes within 1e-3 d of the line and
/// ConvergenceError if the step limit is hit or the charge is turned back.
Trajectory integrate_trajectory(const CouplingSpec& coupling, const BeamParams& beam, Side side,
                                const OdeConfig& cfg,
                                ForceSource source = ForceSource::ClosedFormY);

/// Lag of the final sample, plus the analytic tail after y_end when enabled.
double lag_from_trajectory(const Trajectory& traj, const BeamParams& beam);

}  // namespace lagphase
