#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with adaptive step control.
//
// The step is accepted when max_i |err_i| / (1 + max(|y_i|, |y_new_i|)) is at
// most `tol`, i.e. an absolute tolerance for O(1) components and a relative
// one for large components.  Callers are expected to scale their state so
// that O(1) is the natural magnitude.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "lagphase/core.hpp"

namespace lagphase::ode {

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double max_local_error = 0.0;  // normalised, accepted steps only
};

/// Integrates y' = rhs(t, y) from t0 to t1 (t1 > t0).  `observe(t, y)` is
/// called for the initial state and after every accepted step; it may throw
/// to abort the integration.
template <std::size_t N, typename Rhs, typename Observer>
Stats dopri5(Rhs&& rhs, double t0, std::array<double, N> y, double t1, double tol,
             std::size_t max_steps, double h_initial, Observer&& observe) {
  using State = std::array<double, N>;

  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  // error coefficients: fifth-order minus embedded fourth-order weights
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Stats stats;
  auto axpy = [](const State& base, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = base;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [coef, k] : terms) acc += coef * (*k)[i];
      out[i] += h * acc;
    }
    return out;
  };

  double t = t0;
  double h = std::min(h_initial, t1 - t0);
  State k1 = rhs(t, y);
  ++stats.rhs_evaluations;
  observe(t, y);

  while (t < t1) {
    if (stats.accepted + stats.rejected >= max_steps)
      throw ConvergenceError("ODE step limit exceeded at t = " + std::to_string(t), t, 0.0);
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw ConvergenceError("ODE step size underflow at t = " + std::to_string(t), t, 0.0);
    const bool last = t + h >= t1;
    if (last) h = t1 - t;

    const State k2 = rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State k3 = rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 =
        rhs(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4},
                                             {a65, &k5}}));
    const State y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = rhs(t + h, y_new);
    stats.rhs_evaluations += 6;

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double sc = 1.0 + std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err))
      throw ConvergenceError("ODE produced a non-finite state at t = " + std::to_string(t), t,
                             0.0);

    const double ratio = err / tol;
    if (ratio <= 1.0) {
      t = last ? t1 : t + h;
      y = y_new;
      k1 = k7;  // first-same-as-last
      ++stats.accepted;
      stats.max_local_error = std::max(stats.max_local_error, err);
      observe(t, y);
    } else {
      ++stats.rejected;
    }
    const double factor =
        ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    h *= ratio <= 1.0 ? factor : std::min(factor, 1.0);
  }
  return stats;
}

}  // namespace lagphase::ode
