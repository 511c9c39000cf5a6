#include "lagphase/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "lagphase/ode.hpp"

namespace lagphase {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double x_of(Side side, const BeamParams& beam) { return side_sign(side) * beam.slit_half_sep_d; }

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// atan(Y/|x|) + pi/2 without cancellation for large negative Y.
double angle_from_minus_infinity(double y, double abs_x) {
  return y < 0.0 ? std::atan(abs_x / -y) : 0.5 * kPi + std::atan(y / abs_x);
}

// pi/2 - atan(Y/|x|) without cancellation for large positive Y.
double angle_to_plus_infinity(double y, double abs_x) {
  return y > 0.0 ? std::atan(abs_x / y) : 0.5 * kPi - std::atan(y / abs_x);
}

}  // namespace

CouplingSpec CouplingSpec::electric(const BeamParams& beam, const ElectricDipoleLine& line) {
  return CouplingSpec{CouplingKind::Electric, beam.charge_e * line.moment_p()};
}

CouplingSpec CouplingSpec::magnetic(const BeamParams& beam, const SolenoidLine& sol,
                                    const Constants& k, ForceModel model) {
  if (model == ForceModel::None) return CouplingSpec{CouplingKind::Magnetic, 0.0};
  return CouplingSpec{CouplingKind::Magnetic,
                      -beam.charge_e * sol.moment_mu() * beam.speed_v0 / k.c};
}

CouplingSpec CouplingSpec::with_strength(CouplingKind kind, double strength,
                                         const BeamParams& beam) {
  const double g = strength * beam.mass_m * beam.speed_v0 * beam.speed_v0 *
                   beam.slit_half_sep_d / (4.0 * kPi);
  return CouplingSpec{kind, g};
}

double coupling_strength(const CouplingSpec& coupling, const BeamParams& beam) {
  return 4.0 * kPi * std::abs(coupling.g) /
         (beam.mass_m * beam.speed_v0 * beam.speed_v0 * beam.slit_half_sep_d);
}

double force_on_charge_y(const CouplingSpec& coupling, double x, double y) {
  const double rho2 = x * x + y * y;
  if (!(std::sqrt(rho2) >= kSingularityGuard))
    throw SingularityError("force evaluated with the charge on the line");
  return coupling.g * 4.0 * x * y / (rho2 * rho2);
}

double delta_vy(const CouplingSpec& coupling, const BeamParams& beam, Side side, double y_e) {
  const double x = x_of(side, beam);
  if (std::isinf(y_e)) return 0.0;
  return -(coupling.g / (beam.mass_m * beam.speed_v0)) * 2.0 * x / (x * x + y_e * y_e);
}

double lag_displacement(const CouplingSpec& coupling, const BeamParams& beam, Side side) {
  return -(2.0 * kPi * coupling.g) / (beam.mass_m * beam.speed_v0 * beam.speed_v0) *
         side_sign(side);
}

double relative_displacement(const CouplingSpec& coupling, const BeamParams& beam) {
  return lag_displacement(coupling, beam, Side::Plus) -
         lag_displacement(coupling, beam, Side::Minus);
}

QuadratureResult delta_vy_quadrature(const CouplingSpec& coupling, const BeamParams& beam,
                                     Side side, double y_e, const QuadratureConfig& cfg) {
  const double x = x_of(side, beam);
  const double scale = beam.slit_half_sep_d;
  const double inv_mv0 = 1.0 / (beam.mass_m * beam.speed_v0);
  // dt = dy / v0 along the straight path
  const Integrand impulse = [&](double y) { return force_on_charge_y(coupling, x, y) * inv_mv0; };

  if (y_e <= 0.0) return integrate_mapped(impulse, -kInf, y_e, cfg, scale);

  // Past the line the running impulse is the net impulse minus what is still
  // to come; integrating the remaining tail keeps full relative precision.
  // Each half keeps one sign, so both converge in the relative sense.
  const auto before = integrate_mapped(impulse, -kInf, 0.0, cfg, scale);
  const auto after = integrate_mapped(impulse, 0.0, kInf, cfg, scale);
  const auto rest = integrate_mapped(impulse, y_e, kInf, cfg, scale);
  return QuadratureResult{(before.value + after.value) - rest.value,
                          before.error_bound + after.error_bound + rest.error_bound,
                          before.evaluations + after.evaluations + rest.evaluations,
                          before.converged && after.converged && rest.converged};
}

QuadratureResult lag_displacement_quadrature(const CouplingSpec& coupling,
                                             const BeamParams& beam, Side side,
                                             const QuadratureConfig& cfg) {
  QuadratureConfig inner = cfg;
  inner.rel_tol = std::max(cfg.rel_tol * 1e-3, 1e-14);
  inner.abs_tol = std::min(cfg.abs_tol, 1e-30);

  const double v0 = beam.speed_v0;
  const Integrand velocity_lag = [&](double y) {
    const auto dv = delta_vy_quadrature(coupling, beam, side, y, inner);
    if (!dv.converged)
      throw ConvergenceError("impulse quadrature did not converge", dv.value, dv.error_bound);
    return dv.value / v0;
  };
  auto outer = integrate_infinite(velocity_lag, cfg, beam.slit_half_sep_d);
  // delta v keeps one sign along the path, so the inner relative error
  // carries straight through to the lag.
  outer.error_bound += inner.rel_tol * std::abs(outer.value);
  if (!outer.converged)
    throw ConvergenceError("lag quadrature did not converge", outer.value, outer.error_bound);
  return outer;
}

double OdeConfig::resolved_y_start(const BeamParams& beam) const {
  return y_start.value_or(-1e3 * beam.slit_half_sep_d);
}

double OdeConfig::resolved_y_end(const BeamParams& beam) const {
  return y_end.value_or(1e3 * beam.slit_half_sep_d);
}

void OdeConfig::validate(const BeamParams& beam) const {
  const double ys = resolved_y_start(beam);
  const double ye = resolved_y_end(beam);
  if (!(ys < 0.0) || !(ye > 0.0) || !std::isfinite(ys) || !std::isfinite(ye))
    throw DomainError("ODE window must satisfy y_start < 0 < y_end");
  if (!(local_error_tol > 0.0)) throw DomainError("ODE local_error_tol must be positive");
  if (max_steps == 0) throw DomainError("ODE max_steps must be positive");
}

Trajectory integrate_trajectory(const CouplingSpec& coupling, const BeamParams& beam, Side side,
                                const OdeConfig& cfg, ForceSource source) {
  cfg.validate(beam);
  const double d = beam.slit_half_sep_d;
  const double v0 = beam.speed_v0;
  const double m = beam.mass_m;
  const double x_e = x_of(side, beam);
  const double y_start = cfg.resolved_y_start(beam);
  const double y_end = cfg.resolved_y_end(beam);
  const double t_end = (y_end - y_start) / v0;

  Trajectory traj;
  traj.meta.side = side;
  traj.meta.y_start = y_start;
  traj.meta.y_end = y_end;
  traj.meta.tail_correction = cfg.tail_correction;

  if (coupling.g == 0.0) {
    traj.samples.push_back({0.0, x_e, y_start, 0.0, v0, 0.0});
    traj.samples.push_back({t_end, x_e, y_end, 0.0, v0, 0.0});
    return traj;
  }

  // Work in units of d and d / v0 with perturbations measured in units of the
  // first-order lag scale q d, q = |g| / (m v0^2 d).  The state is
  // (dx, dy, dvx, dvy) relative to the constant-velocity reference.
  const double q = std::abs(coupling.g) / (m * v0 * v0 * d);
  const double sg = sign_of(coupling.g);
  const double xs = x_e / d;         // +-1
  const double ys0 = y_start / d;
  const double accel_scale = d / (m * v0 * v0 * q);

  using State = std::array<double, 4>;
  State init{0.0, 0.0, 0.0, 0.0};
  if (cfg.tail_correction) {
    // Impulse and lag picked up on the way in from y = -infinity.
    const double r2 = xs * xs + ys0 * ys0;
    init[1] = -sg * 2.0 * sign_of(xs) * angle_from_minus_infinity(ys0, std::abs(xs));
    init[3] = -sg * 2.0 * xs / r2;
    if (source == ForceSource::FullQuadratureXY) init[2] = sg * 2.0 * ys0 / r2;
    traj.meta.tail_before = q * d * init[1];
    traj.meta.tail_after = -(coupling.g / (m * v0 * v0)) * 2.0 * sign_of(x_e) *
                           angle_to_plus_infinity(y_end, std::abs(x_e));
  }

  auto force_on_charge = [&](double x, double y) -> std::array<double, 2> {
    if (source == ForceSource::ClosedFormY) return {0.0, force_on_charge_y(coupling, x, y)};
    // Reaction of the line, with the line force from the z-integral oracle.
    // The line force is linear in g, so the unit-charge forms suffice.
    const ForceEstimate on_line =
        coupling.kind == CouplingKind::Electric
            ? force_electric_quadrature(1.0, coupling.g, x, y, cfg.force_quadrature)
            : force_magnetic_quadrature(1.0, -coupling.g, 1.0, 1.0, x, y, cfg.force_quadrature);
    const Vec3 f = reaction_on_charge(on_line.force);
    return {f.x, f.y};
  };

  double max_dx = 0.0;
  auto rhs = [&](double tau, const State& s) -> State {
    const double x = xs + q * s[0];
    const double y = ys0 + tau + q * s[1];
    if (std::hypot(x, y) < 1e-3) throw SingularityError("trajectory approached the dipole line");
    const auto f = force_on_charge(x * d, y * d);
    return State{s[2], s[3], f[0] * accel_scale, f[1] * accel_scale};
  };
  auto observe = [&](double tau, const State& s) {
    if (1.0 + q * s[3] <= 0.0)
      throw ConvergenceError("charge was turned back by the line; coupling too strong",
                             q * d * s[1], 0.0);
    max_dx = std::max(max_dx, std::abs(q * d * s[0]));
    traj.samples.push_back(TrajectorySample{tau * d / v0, x_e + q * d * s[0],
                                            y_start + tau * d + q * d * s[1], q * v0 * s[2],
                                            v0 + q * v0 * s[3], q * d * s[1]});
  };

  const auto stats = ode::dopri5<4>(rhs, 0.0, init, t_end * v0 / d, cfg.local_error_tol,
                                    cfg.max_steps, 0.1, observe);
  traj.meta.accepted_steps = stats.accepted;
  traj.meta.rejected_steps = stats.rejected;
  traj.meta.rhs_evaluations = stats.rhs_evaluations;
  traj.meta.max_local_error = stats.max_local_error;
  traj.meta.max_transverse_deflection = max_dx;
  return traj;
}

double lag_from_trajectory(const Trajectory& traj, [[maybe_unused]] const BeamParams& beam) {
  if (!(traj.meta.y_end > 0.0) || traj.samples.empty())
    throw DomainError("trajectory does not extend past the dipole line");
  const double tail = traj.meta.tail_correction ? traj.meta.tail_after : 0.0;
  return traj.samples.back().lag + tail;
}

}  // namespace lagphase
