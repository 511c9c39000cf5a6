#include "lagphase/phase.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lagphase/fields.hpp"

namespace lagphase {

namespace {

struct PathPhase {
  double value;
  double quad_error;
  double tail_bound;
};

// Integral of f over |y| <= y_max along one path.  For integrands decaying
// like 1/y^2 the cut-off tails are bounded by y_max |f(+-y_max)|; the factor
// two covers the sub-leading terms.
PathPhase integrate_path(const Integrand& f, double y_max, double d, const QuadratureConfig& cfg) {
  const auto q = integrate_mapped(f, -y_max, y_max, cfg, d);
  if (!q.converged)
    throw ConvergenceError("WKB path quadrature did not converge", q.value, q.error_bound);
  const double tail = 2.0 * y_max * (std::abs(f(y_max)) + std::abs(f(-y_max)));
  return PathPhase{q.value, q.error_bound, tail};
}

WkbResult combine(const PathPhase& plus, const PathPhase& minus, double scale) {
  WkbResult r;
  r.phase_plus = plus.value * scale;
  r.phase_minus = minus.value * scale;
  r.delta_phi = r.phase_plus - r.phase_minus;
  r.quadrature_error = std::abs(scale) * (plus.quad_error + minus.quad_error);
  r.error_estimate = r.quadrature_error + std::abs(scale) * (plus.tail_bound + minus.tail_bound);
  return r;
}

template <typename Evaluate>
WkbResult extrapolate(const Evaluate& at_y_max, double y_max) {
  const std::array<double, 3> cuts{0.1 * y_max, y_max, 10.0 * y_max};
  std::array<WkbResult, 3> runs;
  for (std::size_t i = 0; i < cuts.size(); ++i) runs[i] = at_y_max(cuts[i]);

  auto limit_of = [&](auto member) {
    std::array<RichardsonSample, 3> s;
    for (std::size_t i = 0; i < 3; ++i) s[i] = {1.0 / cuts[i], runs[i].*member};
    return richardson_extrapolate(s, 1);
  };
  const auto plus = limit_of(&WkbResult::phase_plus);
  const auto minus = limit_of(&WkbResult::phase_minus);
  const auto delta = limit_of(&WkbResult::delta_phi);

  WkbResult out = runs[2];
  out.phase_plus = plus.limit;
  out.phase_minus = minus.limit;
  out.delta_phi = delta.limit;
  // The tails are what the table removes; the quadrature errors remain and
  // the table roughly doubles them.
  double quad_part = 0.0;
  for (const auto& r : runs) quad_part = std::max(quad_part, r.quadrature_error);
  out.quadrature_error = quad_part;
  out.error_estimate = delta.error_estimate + 2.0 * quad_part;
  return out;
}

}  // namespace

double phase_semiclassical(const BeamParams& beam, double delta_Y, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  return beam.momentum() * delta_Y / hbar;
}

double phase_flux(double e, double b0, double area, double c, double hbar) {
  if (!(c > 0.0) || !(hbar > 0.0)) throw DomainError("c and hbar must be positive");
  return e * b0 * area / (c * hbar);
}

double phase_wkb_electric_analytic(const BeamParams& beam, const ElectricDipoleLine& line,
                                   double hbar) {
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  return -4.0 * kPi * beam.charge_e * line.moment_p() / (beam.speed_v0 * hbar);
}

double WkbConfig::resolved_y_max(const BeamParams& beam) const {
  const double y = y_max.value_or(1e4 * beam.slit_half_sep_d);
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("wkb.y_max must be positive");
  return y;
}

WkbResult phase_wkb_electric(const BeamParams& beam, const ElectricDipoleLine& line,
                             const WkbConfig& cfg, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  const double y_max = cfg.resolved_y_max(beam);
  const double d = beam.slit_half_sep_d;
  const double e = beam.charge_e;
  const double m = beam.mass_m;
  const double p0 = beam.momentum();

  auto potential = [&](double x, double y) {
    return cfg.potential == PotentialForm::DipoleLimit
               ? potential_dipole_line_approx(line.moment_p(), x, y)
               : potential_dipole_line_exact(line, x, y);
  };
  // p_y - p0 along the path; the common p0 is cancelled before integrating.
  auto momentum_shift = [&](double x) -> Integrand {
    return [&, x](double y) {
      const double u = 2.0 * m * e * potential(x, y);
      if (cfg.expansion == WkbExpansion::FirstOrder) return -0.5 * u / p0;
      const double arg = p0 * p0 - u;
      if (arg < 0.0) throw DomainError("WKB momentum is imaginary: the charge cannot pass");
      return -u / (std::sqrt(arg) + p0);
    };
  };

  const auto plus = integrate_path(momentum_shift(d), y_max, d, cfg.quadrature);
  const auto minus = integrate_path(momentum_shift(-d), y_max, d, cfg.quadrature);
  WkbResult r = combine(plus, minus, 1.0 / hbar);
  r.validity = std::max(std::abs(2.0 * m * e * potential(d, 0.0)),
                        std::abs(2.0 * m * e * potential(-d, 0.0))) /
               (p0 * p0);
  r.validity_warning = r.validity >= 0.1;
  return r;
}

WkbResult phase_wkb_magnetic(const BeamParams& beam, const SolenoidLine& sol,
                             const WkbConfig& cfg, const Constants& k) {
  const double y_max = cfg.resolved_y_max(beam);
  const double d = beam.slit_half_sep_d;
  auto a_y = [&](double x) -> Integrand {
    return [&, x](double y) { return vector_potential_solenoid(sol.moment_mu(), x, y).y; };
  };
  const auto plus = integrate_path(a_y(d), y_max, d, cfg.quadrature);
  const auto minus = integrate_path(a_y(-d), y_max, d, cfg.quadrature);
  return combine(plus, minus, beam.charge_e / (k.c * k.hbar));
}

WkbResult phase_wkb_electric_extrapolated(const BeamParams& beam, const ElectricDipoleLine& line,
                                          const WkbConfig& cfg, double hbar) {
  return extrapolate(
      [&](double y_max) {
        WkbConfig c = cfg;
        c.y_max = y_max;
        return phase_wkb_electric(beam, line, c, hbar);
      },
      cfg.resolved_y_max(beam));
}

WkbResult phase_wkb_magnetic_extrapolated(const BeamParams& beam, const SolenoidLine& sol,
                                          const WkbConfig& cfg, const Constants& k) {
  return extrapolate(
      [&](double y_max) {
        WkbConfig c = cfg;
        c.y_max = y_max;
        return phase_wkb_magnetic(beam, sol, c, k);
      },
      cfg.resolved_y_max(beam));
}

PhaseResult closed_form_result(const CouplingSpec& coupling, const BeamParams& beam,
                               double hbar) {
  const double plus = lag_displacement(coupling, beam, Side::Plus);
  const double minus = lag_displacement(coupling, beam, Side::Minus);
  return PhaseResult::make(plus, minus, phase_semiclassical(beam, plus - minus, hbar),
                           Method::ClosedForm);
}

PhaseResult quadrature_result(const CouplingSpec& coupling, const BeamParams& beam, double hbar,
                              const QuadratureConfig& cfg) {
  const auto plus = lag_displacement_quadrature(coupling, beam, Side::Plus, cfg);
  const auto minus = lag_displacement_quadrature(coupling, beam, Side::Minus, cfg);
  return PhaseResult::make(plus.value, minus.value,
                           phase_semiclassical(beam, plus.value - minus.value, hbar),
                           Method::Quadrature,
                           phase_semiclassical(beam, plus.error_bound + minus.error_bound, hbar));
}

PhaseResult trajectory_result(const CouplingSpec& coupling, const BeamParams& beam, double hbar,
                              const OdeConfig& cfg, ForceSource source) {
  const auto tp = integrate_trajectory(coupling, beam, Side::Plus, cfg, source);
  const auto tm = integrate_trajectory(coupling, beam, Side::Minus, cfg, source);
  const double plus = lag_from_trajectory(tp, beam);
  const double minus = lag_from_trajectory(tm, beam);
  // Crude global bound: every accepted step may contribute its normalised
  // local error, measured in units of the first-order lag scale.
  const double lag_scale = std::abs(coupling.g) / (beam.mass_m * beam.speed_v0 * beam.speed_v0);
  auto global_error = [&](const Trajectory& t, double lag) {
    return static_cast<double>(t.meta.accepted_steps) * t.meta.max_local_error *
           (lag_scale + std::abs(lag));
  };
  return PhaseResult::make(plus, minus, phase_semiclassical(beam, plus - minus, hbar),
                           Method::Trajectory,
      phase_semiclassical(beam, global_error(tp, plus) + global_error(tm, minus), hbar));
}

PhaseResult wkb_result(const WkbResult& wkb, const BeamParams& beam, double hbar, Method method) {
  const double to_length = hbar / beam.momentum();
  PhaseResult r = PhaseResult::make(wkb.phase_plus * to_length, wkb.phase_minus * to_length,
                                    wkb.delta_phi, method, wkb.error_estimate);
  return r;
}

}  // namespace lagphase
