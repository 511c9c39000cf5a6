#include "lagphase/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "lagphase/fields.hpp"
#include "lagphase/report.hpp"
#include "lagphase/sweep.hpp"

namespace lagphase {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Relative difference; falls back to absolute when the reference is zero.
double rel(double value, double reference) {
  return reference == 0.0 ? std::abs(value) : std::abs(value - reference) / std::abs(reference);
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return mean == 0.0 ? *hi - *lo : (*hi - *lo) / std::abs(mean);
}

struct Point {
  double x, y;
};

// 10 radii log-spaced on [0.1, 100] times 10 angles offset from the axes.
std::vector<Point> log_polar_grid() {
  std::vector<Point> pts;
  for (int i = 0; i < 10; ++i) {
    const double r = 0.1 * std::pow(1000.0, i / 9.0);
    for (int j = 0; j < 10; ++j) {
      const double th = (j + 0.5) * 2.0 * kPi / 10.0;
      pts.push_back({r * std::cos(th), r * std::sin(th)});
    }
  }
  return pts;
}

double phi_of(const Report& r, std::string_view method) {
  for (const auto& row : r.rows)
    if (row.method == method && row.quantity == "delta_phi") return row.value;
  throw DomainError("report has no delta_phi row for " + std::string(method));
}

// Worst-case tracker for checks made of several sub-tests, each with its own
// threshold: measured is the largest value/threshold ratio, the limit is 1.
struct Worst {
  double ratio = 0.0;
  std::string detail;

  void add(std::string_view label, double value, double threshold) {
    ratio = std::max(ratio, value / threshold);
    if (std::isnan(value)) ratio = std::numeric_limits<double>::infinity();
    if (!detail.empty()) detail += "; ";
    detail += fmt::format("{}={:.3g} (limit {:.3g})", label, value, threshold);
  }

  CheckOutcome outcome() const {
    CheckOutcome o;
    o.measured = ratio;
    o.threshold = 1.0;
    o.passed = ratio <= 1.0;
    o.detail = detail;
    return o;
  }
};

CheckOutcome force_closed_forms(const Config& cfg) {
  const double e = cfg.beam.charge_e;
  const double p = cfg.electric_line().moment_p();
  const double mu = cfg.solenoid().moment_mu();
  const double v0 = cfg.beam.speed_v0;
  const double c = cfg.constants.c;
  double worst_e = 0.0;
  double worst_m = 0.0;
  for (const auto& pt : log_polar_grid()) {
    const double fe = force_electric_y(e, p, pt.x, pt.y);
    const double qe = force_electric_quadrature(e, p, pt.x, pt.y, cfg.quadrature).force.y;
    worst_e = std::max(worst_e, std::abs(qe - fe) / std::max(1e-10, 1e-8 * std::abs(fe)));
    const double fm = force_magnetic_y(e, mu, v0, c, pt.x, pt.y);
    const double qm = force_magnetic_quadrature(e, mu, v0, c, pt.x, pt.y, cfg.quadrature).force.y;
    worst_m = std::max(worst_m, std::abs(qm - fm) / std::max(1e-10, 1e-8 * std::abs(fm)));
  }
  Worst w;
  w.add("electric |dF|/tol", worst_e, 1.0);
  w.add("magnetic |dF|/tol", worst_m, 1.0);
  return w.outcome();
}

CheckOutcome lag_chain(const Config& cfg) {
  Worst w;
  Config c = cfg;
  c.force_model = ForceModel::Newton3;
  const std::array<std::pair<const char*, CouplingSpec>, 2> cases{
      {{"electric", c.electric_coupling()}, {"magnetic", c.magnetic_coupling()}}};
  for (const auto& [label, coupling] : cases) {
    const auto plus = lag_displacement_quadrature(coupling, c.beam, Side::Plus, c.quadrature);
    const auto minus = lag_displacement_quadrature(coupling, c.beam, Side::Minus, c.quadrature);
    w.add(fmt::format("{} dy+", label),
          rel(plus.value, lag_displacement(coupling, c.beam, Side::Plus)), 1e-8);
    w.add(fmt::format("{} dY", label),
          rel(plus.value - minus.value, relative_displacement(coupling, c.beam)), 1e-8);
  }
  return w.outcome();
}

CheckOutcome ode_convergence(const Config& cfg) {
  const std::array<double, 3> strengths{1e-2, 1e-3, 1e-4};
  std::vector<ConvergenceSample> dY_err;
  std::vector<ConvergenceSample> beam_err;
  bool bounded = true;
  std::string detail;
  for (double s : strengths) {
    const auto coupling = CouplingSpec::with_strength(CouplingKind::Electric, s, cfg.beam);
    const auto r = trajectory_result(coupling, cfg.beam, cfg.constants.hbar, cfg.ode_config(),
                                     cfg.force_source);
    const double err = rel(r.delta_Y, relative_displacement(coupling, cfg.beam));
    const double err_plus = rel(r.delta_y_plus, lag_displacement(coupling, cfg.beam, Side::Plus));
    bounded = bounded && err <= 10.0 * s;
    dY_err.push_back({s, err});
    beam_err.push_back({s, err_plus});
    detail += fmt::format("s={:g}: dY rel err {:.3g} (limit {:.3g}), dy+ rel err {:.3g}; ", s, err,
                          10.0 * s, err_plus);
  }
  const double order = fit_convergence_order(dY_err);
  const double beam_order = fit_convergence_order(beam_err);
  CheckOutcome o;
  o.measured = order;
  o.threshold = 0.2;
  o.passed = bounded && std::abs(order - 1.0) <= 0.2;
  o.detail = detail + fmt::format("fitted dY order {:.3f} (want 1.0 +- 0.2), per-beam order {:.3f}",
                                  order, beam_order);
  return o;
}

CheckOutcome d_independence(const Config& cfg) {
  const std::array<double, 5> ds{0.5, 1.0, 2.0, 5.0, 10.0};
  BeamParams unit_d = cfg.beam;
  unit_d.slit_half_sep_d = 1.0;
  const auto weak = CouplingSpec::with_strength(CouplingKind::Electric, 1e-4, unit_d);
  std::vector<double> closed;
  std::vector<double> traj;
  for (double d : ds) {
    BeamParams beam = cfg.beam;
    beam.slit_half_sep_d = d;
    closed.push_back(relative_displacement(cfg.electric_coupling(), beam));
    Config c = cfg;
    c.beam = beam;
    traj.push_back(trajectory_result(weak, beam, c.constants.hbar, c.ode_config(), c.force_source)
                       .delta_Y);
  }
  Worst w;
  w.add("closed-form dY spread", spread(closed), 1e-12);
  w.add("trajectory dY spread", spread(traj), 5e-3);
  return w.outcome();
}

CheckOutcome wkb_agreement(const Config& cfg) {
  const double hbar = cfg.constants.hbar;
  const auto sol = cfg.solenoid();
  const auto we = phase_wkb_electric_extrapolated(cfg.beam, cfg.electric_line(), cfg.wkb_config(), hbar);
  const auto wm = phase_wkb_magnetic_extrapolated(cfg.beam, sol, cfg.wkb_config(), cfg.constants);
  Worst w;
  w.add("electric", rel(we.delta_phi, phase_wkb_electric_analytic(cfg.beam, cfg.electric_line(), hbar)),
        1e-6);
  w.add("magnetic",
        rel(wm.delta_phi, phase_flux(cfg.beam.charge_e, sol.b0(), sol.area(), cfg.constants.c, hbar)),
        1e-6);
  return w.outcome();
}

CheckOutcome flux_identity(const Config& cfg) {
  Config c = cfg;
  c.force_model = ForceModel::Newton3;
  const auto sol = c.solenoid();
  const double hbar = c.constants.hbar;
  const double from_lag =
      phase_semiclassical(c.beam, relative_displacement(c.magnetic_coupling(), c.beam), hbar);
  const double flux = phase_flux(c.beam.charge_e, sol.b0(), sol.area(), c.constants.c, hbar);
  const double moment = 4.0 * kPi * c.beam.charge_e * sol.moment_mu() / (c.constants.c * hbar);
  // A few roundings separate the three expressions.
  Worst w;
  w.add("lag vs flux", rel(from_lag, flux), 8.0 * kEps);
  w.add("moment vs flux", rel(moment, flux), 8.0 * kEps);
  return w.outcome();
}

CheckOutcome functional_form(const Config& cfg) {
  const double e = cfg.beam.charge_e;
  const double p = cfg.electric_line().moment_p();
  const double mu = cfg.solenoid().moment_mu();
  const double v0 = cfg.beam.speed_v0;
  const double c = cfg.constants.c;
  double worst = 0.0;
  for (const auto& pt : log_polar_grid()) {
    const double fe = force_electric_y(e, p, pt.x, pt.y) / (e * p);
    const double fm = force_magnetic_y(e, mu, v0, c, pt.x, pt.y) / (e * mu * v0 / c);
    worst = std::max(worst, std::abs(fe + fm) / std::abs(fe));
  }
  Worst w;
  w.add("max |Fe + Fm| / |Fe| (normalised)", worst, 4.0 * kEps);
  return w.outcome();
}

CheckOutcome scaling_laws(const Config& cfg) {
  MethodSet m{true, false, false, true};
  Worst w;

  // Fitted exponent of |phi| against v0 over a decade.
  const auto v0s = parse_sweep_values(fmt::format("{}:{}:10:log", cfg.beam.speed_v0,
                                                  10.0 * cfg.beam.speed_v0));
  const auto ev = run_sweep(cfg, {Case::Electric, "v0", v0s, m});
  for (const char* method : {"ClosedForm", "WkbNumeric"}) {
    std::vector<ConvergenceSample> s;
    for (const auto& pt : ev.points) s.push_back({pt.value, std::abs(phi_of(pt.report, method))});
    w.add(fmt::format("electric {} v0 exponent + 1", method),
          std::abs(fit_convergence_order(s) + 1.0), 0.01);
  }

  auto linearity = [&](Case kind, const char* param, double base,
                       std::initializer_list<const char*> methods) {
    const std::vector<double> ks{1.0, 2.0, 4.0, 8.0};
    std::vector<double> grid;
    for (double k : ks) grid.push_back(k * base);
    const auto sw = run_sweep(cfg, {kind, param, grid, m});
    for (const char* method : methods) {
      const double first = phi_of(sw.points[0].report, method);
      double worst = 0.0;
      for (std::size_t i = 1; i < ks.size(); ++i)
        worst = std::max(worst, rel(phi_of(sw.points[i].report, method) / first, ks[i]));
      w.add(fmt::format("{} linearity in {}", method, param), worst, 1e-10);
    }
  };
  linearity(Case::Electric, "lambda", cfg.lambda, {"ClosedForm", "WkbNumeric"});
  linearity(Case::Magnetic, "b0", cfg.b0, {"ClosedForm", "Flux", "WkbNumeric"});

  const auto mv = run_sweep(cfg, {Case::Magnetic, "v0", v0s, m});
  for (const char* method : {"ClosedForm", "Flux", "WkbNumeric"}) {
    std::vector<double> phis;
    for (const auto& pt : mv.points) phis.push_back(phi_of(pt.report, method));
    w.add(fmt::format("magnetic {} variation in v0", method), spread(phis), 1e-12);
  }
  return w.outcome();
}

CheckOutcome dipole_limit(const Config& cfg) {
  const double p = cfg.electric_line().moment_p();
  const double d = cfg.beam.slit_half_sep_d;
  const std::array<Point, 6> pts{{{1, 0}, {1, 1}, {2, 0.5}, {0.5, 2}, {3, -1}, {-1.5, 0.7}}};
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& pt : pts) {
    std::vector<ConvergenceSample> s;
    for (double eps = 0.1; eps > 0.005; eps /= 2.0) {
      const auto line = ElectricDipoleLine::make(p / (2.0 * eps * d), eps * d);
      const double exact = potential_dipole_line_exact(line, pt.x * d, pt.y * d);
      const double approx = potential_dipole_line_approx(line.moment_p(), pt.x * d, pt.y * d);
      s.push_back({eps, std::abs(exact / approx - 1.0)});
    }
    worst = std::min(worst, fit_convergence_order(s));
  }
  CheckOutcome o;
  o.measured = worst;
  o.threshold = 1.9;
  o.passed = worst >= 1.9;
  o.detail = fmt::format("lowest fitted order over {} points {:.4f} (want >= 1.9)", pts.size(), worst);
  return o;
}

CheckOutcome force_free_control(const Config& cfg) {
  Config none = cfg;
  none.force_model = ForceModel::None;
  Config newton = cfg;
  newton.force_model = ForceModel::Newton3;
  const double hbar = cfg.constants.hbar;

  const auto t_none = trajectory_result(none.magnetic_coupling(), none.beam, hbar,
                                        none.ode_config(), none.force_source);
  const auto t_newton = trajectory_result(newton.magnetic_coupling(), newton.beam, hbar,
                                          newton.ode_config(), newton.force_source);
  const auto w_none = phase_wkb_magnetic_extrapolated(none.beam, none.solenoid(),
                                                      none.wkb_config(), none.constants);
  const auto w_newton = phase_wkb_magnetic_extrapolated(newton.beam, newton.solenoid(),
                                                        newton.wkb_config(), newton.constants);
  CheckOutcome o;
  o.measured = std::abs(t_none.delta_Y) + std::abs(w_none.delta_phi - w_newton.delta_phi);
  o.threshold = 0.0;
  o.passed = t_none.delta_Y == 0.0 && w_none.delta_phi == w_newton.delta_phi;
  o.detail = fmt::format(
      "none: trajectory dY={} wkb phi={}; newton3: trajectory dY={} wkb phi={}",
      format_number(t_none.delta_Y), format_number(w_none.delta_phi),
      format_number(t_newton.delta_Y), format_number(w_newton.delta_phi));
  return o;
}

}  // namespace

const std::vector<Check>& acceptance_checks() {
  static const std::vector<Check> checks = {
      {1, "force closed forms vs quadrature", 10.0, force_closed_forms},
      {2, "lag chain by time quadrature", 5.0, lag_chain},
      {3, "trajectory perturbative convergence", 60.0, ode_convergence},
      {4, "independence of the slit separation", 0.0, d_independence},
      {5, "WKB phase vs semiclassical phase", 10.0, wkb_agreement},
      {6, "flux identity", 0.0, flux_identity},
      {7, "electric/magnetic functional form", 0.0, functional_form},
      {8, "scaling laws from sweeps", 0.0, scaling_laws},
      {9, "dipole limit of the two-line potential", 0.0, dipole_limit},
      {10, "force-free negative control", 0.0, force_free_control},
  };
  return checks;
}

CheckOutcome run_check(const Check& check, const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  CheckOutcome o;
  try {
    o = check.run(cfg);
  } catch (const ConvergenceError& e) {
    o.passed = false;
    o.measured = std::numeric_limits<double>::quiet_NaN();
    o.detail = fmt::format("did not converge: {}", e.what());
  } catch (const DomainError& e) {
    o.passed = false;
    o.measured = std::numeric_limits<double>::quiet_NaN();
    o.detail = fmt::format("domain error: {}", e.what());
  } catch (const ConfigError& e) {
    o.passed = false;
    o.measured = std::numeric_limits<double>::quiet_NaN();
    o.detail = fmt::format("configuration error: {}", e.what());
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.time_limit = check.time_limit;
  if (check.time_limit > 0.0 && o.seconds >= check.time_limit) {
    o.passed = false;
    o.detail += fmt::format("; exceeded time limit {:g} s", check.time_limit);
  }
  return o;
}

std::string format_outcome(const Check& check, const CheckOutcome& o) {
  const std::string limit = o.time_limit > 0.0 ? fmt::format(" / {:g} s", o.time_limit) : "";
  return fmt::format("{} {:>2} {:<40} measured={:.6g} threshold={:g} ({:.2f} s{})  {}",
                     o.passed ? "PASS" : "FAIL", check.id, check.name, o.measured, o.threshold,
                     o.seconds, limit, o.detail);
}

bool run_checks(const Config& cfg, const std::vector<int>& ids, std::ostream& out) {
  bool all = true;
  for (const auto& check : acceptance_checks()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), check.id) == ids.end()) continue;
    const auto o = run_check(check, cfg);
    out << format_outcome(check, o) << '\n' << std::flush;
    all = all && o.passed;
  }
  return all;
}

void list_checks(std::ostream& out) {
  for (const auto& check : acceptance_checks()) {
    out << fmt::format("{:>2}  {}", check.id, check.name);
    if (check.time_limit > 0.0) out << fmt::format("  (limit {:g} s)", check.time_limit);
    out << '\n';
  }
}

}  // namespace lagphase
