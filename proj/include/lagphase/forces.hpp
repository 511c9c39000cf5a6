#pragma once

// Forces between a beam charge at (x_e, y_e, 0) and the dipole line or
// solenoid on the z axis.  The closed forms give the y-component of the force
// ON the line; the quadrature oracles integrate the defining z-integrals and
// also supply the x-component.

#include "lagphase/fields.hpp"
#include "lagphase/oracle.hpp"

namespace lagphase {

/// How the solenoid's reaction on the passing charge is modelled.
///   Newton3: the charge feels -F_mu (third-law assumption).
///   None:    no classical force on the charge (force-free interpretation).
enum class ForceModel { Newton3, None };

struct ForceEstimate {
  Vec3 force;
  double error_bound = 0.0;  // largest component bound
};

/// y-force on the electric dipole line: -e p 4 x_e y_e / (x_e^2 + y_e^2)^2.
double force_electric_y(double e, double moment_p, double x_e, double y_e);

/// y-force on the solenoid: +(e mu v0 / c) 4 x_e y_e / (x_e^2 + y_e^2)^2.
double force_magnetic_y(double e, double moment_mu, double v0, double c, double x_e, double y_e);

/// Force on the dipole line from z-integration of p dE/dx along the line.
/// Throws ConvergenceError if any component misses its tolerance.
ForceEstimate force_electric_quadrature(double e, double moment_p, double x_e, double y_e,
                                        const QuadratureConfig& cfg);

/// Force on the solenoid from z-integration of grad(mu B_z) along the axis.
ForceEstimate force_magnetic_quadrature(double e, double moment_mu, double v0, double c,
                                        double x_e, double y_e, const QuadratureConfig& cfg);

/// Reaction on the charge under the third-law assumption.
inline Vec3 reaction_on_charge(const Vec3& force_on_line) { return -force_on_line; }

}  // namespace lagphase
