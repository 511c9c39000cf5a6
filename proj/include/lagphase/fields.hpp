#pragma once

// Pointwise fields and potentials.  Sources sit in the z = 0 plane; the
// dipole line and the solenoid run along the z axis.

#include "lagphase/core.hpp"

namespace lagphase {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(Vec3 a);

/// Evaluations closer than this to a source raise SingularityError.
inline constexpr double kSingularityGuard = 1e-12;

/// Coulomb field of a point charge e at `source`.
Vec3 efield_of_beam_charge(double e, Vec3 source, Vec3 eval_at);

/// Low-velocity magnetic field of a charge moving along +y with speed v0.
Vec3 bfield_of_moving_charge(double e, double v0, double c, Vec3 source, Vec3 eval_at);

/// Potential of the two line charges +lambda at x = +eps and -lambda at
/// x = -eps, evaluated as lambda * log1p(4 eps x / ((x - eps)^2 + y^2)) so
/// the O(eps) difference of logarithms keeps full precision.
double potential_dipole_line_exact(const ElectricDipoleLine& line, double x, double y);

/// Dipole-limit potential 2 p x / (x^2 + y^2).
double potential_dipole_line_approx(double moment_p, double x, double y);

/// Exterior vector potential of a thin solenoid, 2 mu (-y, x, 0) / (x^2 + y^2).
Vec3 vector_potential_solenoid(double moment_mu, double x, double y);

}  // namespace lagphase
