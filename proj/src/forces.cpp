#include "lagphase/forces.hpp"

#include <algorithm>
#include <cmath>

namespace lagphase {

namespace {

double rho_squared_checked(double x_e, double y_e) {
  const double rho2 = x_e * x_e + y_e * y_e;
  if (!(std::sqrt(rho2) >= kSingularityGuard))
    throw SingularityError("force evaluated with the charge on the line");
  return rho2;
}

// Integrates the three components of g(z) over the real line.
template <typename Gradient>
ForceEstimate integrate_components(Gradient&& g, double rho, const QuadratureConfig& cfg) {
  const auto fx = integrate_infinite([&](double z) { return g(z).x; }, cfg, rho);
  const auto fy = integrate_infinite([&](double z) { return g(z).y; }, cfg, rho);
  const auto fz = integrate_infinite([&](double z) { return g(z).z; }, cfg, rho);
  const double bound = std::max({fx.error_bound, fy.error_bound, fz.error_bound});
  if (!fx.converged || !fy.converged || !fz.converged)
    throw ConvergenceError("force quadrature did not converge", fy.value, bound);
  return ForceEstimate{Vec3{fx.value, fy.value, fz.value}, bound};
}

}  // namespace

double force_electric_y(double e, double moment_p, double x_e, double y_e) {
  const double rho2 = rho_squared_checked(x_e, y_e);
  return -e * moment_p * 4.0 * x_e * y_e / (rho2 * rho2);
}

double force_magnetic_y(double e, double moment_mu, double v0, double c, double x_e,
                        double y_e) {
  const double rho2 = rho_squared_checked(x_e, y_e);
  return (e * moment_mu * v0 / c) * 4.0 * x_e * y_e / (rho2 * rho2);
}

ForceEstimate force_electric_quadrature(double e, double moment_p, double x_e, double y_e,
                                        const QuadratureConfig& cfg) {
  const double rho2 = rho_squared_checked(x_e, y_e);
  // p dE/dx at (0, 0, z) with separation r - r_e = (-x_e, -y_e, z):
  //   dE/dx = e [x_hat / R^3 - 3 (r - r_e) (x - x_e) / R^5]
  auto gradient = [=](double z) {
    const double r2 = rho2 + z * z;
    const double r = std::sqrt(r2);
    const double inv3 = 1.0 / (r2 * r);
    const double inv5 = inv3 / r2;
    const double dx = -x_e;
    const double k = e * moment_p;
    return Vec3{k * (inv3 - 3.0 * dx * dx * inv5), k * (-3.0 * (-y_e) * dx * inv5),
                k * (-3.0 * z * dx * inv5)};
  };
  return integrate_components(gradient, std::sqrt(rho2), cfg);
}

ForceEstimate force_magnetic_quadrature(double e, double moment_mu, double v0, double c,
                                        double x_e, double y_e, const QuadratureConfig& cfg) {
  const double rho2 = rho_squared_checked(x_e, y_e);
  // grad of mu B_z with B_z = -(e v0 / c) (x - x_e) / R^3, at (0, 0, z).
  auto gradient = [=](double z) {
    const double r2 = rho2 + z * z;
    const double r = std::sqrt(r2);
    const double inv3 = 1.0 / (r2 * r);
    const double inv5 = inv3 / r2;
    const double dx = -x_e;
    const double dy = -y_e;
    const double k = moment_mu * e * v0 / c;
    return Vec3{-k * (inv3 - 3.0 * dx * dx * inv5), k * 3.0 * dx * dy * inv5,
                k * 3.0 * dx * z * inv5};
  };
  return integrate_components(gradient, std::sqrt(rho2), cfg);
}

}  // namespace lagphase
