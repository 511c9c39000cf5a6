#include "lagphase/core.hpp"

#include <cmath>

namespace lagphase {

Constants Constants::make(double c, double hbar) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("constants.c must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw DomainError("constants.hbar must be positive");
  return Constants{c, hbar};
}

BeamParams BeamParams::make(double charge, double mass, double v0, double d) {
  if (!std::isfinite(charge)) throw DomainError("beam.charge must be finite");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("beam.mass must be positive");
  if (!(v0 > 0.0) || !std::isfinite(v0)) throw DomainError("beam.v0 must be positive");
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("beam.d must be positive");
  return BeamParams{charge, mass, v0, d};
}

ElectricDipoleLine ElectricDipoleLine::make(double lambda, double epsilon) {
  if (!std::isfinite(lambda)) throw DomainError("electric.lambda must be finite");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("electric.epsilon must be positive");
  return ElectricDipoleLine(lambda, epsilon);
}

SolenoidLine SolenoidLine::make(double b0, double area, const Constants& k) {
  if (!std::isfinite(b0)) throw DomainError("solenoid.b0 must be finite");
  if (!(area > 0.0) || !std::isfinite(area)) throw DomainError("solenoid.area must be positive");
  return SolenoidLine(b0, area, k.c);
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "ClosedForm";
    case Method::Quadrature: return "Quadrature";
    case Method::Trajectory: return "Trajectory";
    case Method::WkbAnalytic: return "WkbAnalytic";
    case Method::WkbNumeric: return "WkbNumeric";
  }
  return "Unknown";
}

PhaseResult PhaseResult::make(double dy_plus, double dy_minus, double delta_phi,
                              Method method, double error_estimate) {
  return PhaseResult{dy_plus, dy_minus, dy_plus - dy_minus, delta_phi, method,
                     error_estimate};
}

}  // namespace lagphase
