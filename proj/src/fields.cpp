#include "lagphase/fields.hpp"

#include <algorithm>
#include <cmath>

namespace lagphase {

namespace {

void guard(double distance, const char* what) {
  if (!(distance >= kSingularityGuard)) throw SingularityError(what);
}

}  // namespace

double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

Vec3 efield_of_beam_charge(double e, Vec3 source, Vec3 eval_at) {
  const Vec3 r = eval_at - source;
  const double dist = norm(r);
  guard(dist, "electric field evaluated at the source charge");
  return (e / (dist * dist * dist)) * r;
}

Vec3 bfield_of_moving_charge(double e, double v0, double c, Vec3 source, Vec3 eval_at) {
  const Vec3 r = eval_at - source;
  const double dist = norm(r);
  guard(dist, "magnetic field evaluated at the moving charge");
  const double k = e * v0 / (c * dist * dist * dist);
  return Vec3{k * r.z, 0.0, -k * r.x};
}

double potential_dipole_line_exact(const ElectricDipoleLine& line, double x, double y) {
  const double eps = line.epsilon();
  const double near_sq = (x - eps) * (x - eps) + y * y;
  const double far_sq = (x + eps) * (x + eps) + y * y;
  guard(std::sqrt(std::min(near_sq, far_sq)), "potential evaluated on a line charge");
  // ((x+eps)^2 + y^2) / ((x-eps)^2 + y^2) = 1 + 4 eps x / ((x-eps)^2 + y^2)
  return line.lambda() * std::log1p(4.0 * eps * x / near_sq);
}

double potential_dipole_line_approx(double moment_p, double x, double y) {
  const double r2 = x * x + y * y;
  guard(std::sqrt(r2), "dipole potential evaluated on the dipole line");
  return 2.0 * moment_p * x / r2;
}

Vec3 vector_potential_solenoid(double moment_mu, double x, double y) {
  const double r2 = x * x + y * y;
  guard(std::sqrt(r2), "vector potential evaluated on the solenoid axis");
  const double k = 2.0 * moment_mu / r2;
  return Vec3{-k * y, k * x, 0.0};
}

}  // namespace lagphase
