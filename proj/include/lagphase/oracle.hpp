#pragma once

// High-accuracy numerical machinery shared by the validation paths:
// adaptive Gauss-Kronrod quadrature (finite and compactified infinite
// intervals), Richardson extrapolation and log-log order fitting.
//
// Everything here is deterministic: interval splitting follows a fixed
// priority order and no randomness is involved anywhere.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace lagphase {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_subdivisions = 1'000'000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Integrands must be free of side effects; they may be called concurrently
/// from independent quadratures.
using Integrand = std::function<double(double)>;

/// Adaptive 7/15-point Gauss-Kronrod quadrature on a finite interval.
/// The per-interval error is |K15 - G7| (floored at the rounding level),
/// which overestimates the true error for smooth integrands.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureConfig& cfg);

/// Integral of f over [a, b] where either end may be infinite.  The
/// substitution x = scale * tan(theta) maps the range onto a subset of
/// (-pi/2, pi/2); the integrand must decay at least as fast as 1/x^2 at an
/// infinite end.  `scale` should be the length scale of the integrand.
QuadratureResult integrate_mapped(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg, double scale = 1.0);

/// Integral of f over the whole real line (arctangent compactification).
inline QuadratureResult integrate_infinite(const Integrand& f, const QuadratureConfig& cfg,
                                           double scale = 1.0) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return integrate_mapped(f, -inf, inf, cfg, scale);
}

struct RichardsonSample {
  double h;
  double value;
};

struct Extrapolation {
  double limit;
  double error_estimate;
};

/// Richardson table for samples whose error expands as
/// c1 h^order + c2 h^(order+1) + ...  Each additional sample removes one more
/// power.  The error estimate is the change made by the last column.
Extrapolation richardson_extrapolate(std::span<const RichardsonSample> samples, int order);

struct ConvergenceSample {
  double h;
  double error;
};

/// Least-squares slope of log(error) against log(h).
double fit_convergence_order(std::span<const ConvergenceSample> samples);

}  // namespace lagphase
