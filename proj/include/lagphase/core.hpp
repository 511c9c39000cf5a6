#pragma once

// Domain types shared by every lagphase module.
//
// Units are Gaussian with an explicit speed of light.  The default "desk"
// system takes e = m = v0 = hbar = 1 and c = 137.036, so magnetic effects keep
// their visible 1/c ordering while electric test numbers stay O(1).

#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lagphase {

inline constexpr double kPi = std::numbers::pi_v<double>;

/// Speed of light in the desk unit system (inverse fine-structure constant).
inline constexpr double kDeskSpeedOfLight = 137.036;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Invalid argument or evaluation outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at (or within the guard distance of) a field source.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical method failed to reach its tolerance.  Carries the best
/// estimate reached so callers can still report it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial, double error_bound)
      : std::runtime_error(what), partial_(partial), error_bound_(error_bound) {}

  double partial() const noexcept { return partial_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double partial_;
  double error_bound_;
};

// ---------------------------------------------------------------------------
// Physical parameters
// ---------------------------------------------------------------------------

struct Constants {
  double c = kDeskSpeedOfLight;
  double hbar = 1.0;

  /// Throws DomainError unless both constants are strictly positive.
  static Constants make(double c, double hbar);
};

/// The two particle beams: charges e of mass m moving along x = +d and
/// x = -d in the +y direction with speed v0.
struct BeamParams {
  double charge_e = 1.0;
  double mass_m = 1.0;
  double speed_v0 = 1.0;
  double slit_half_sep_d = 1.0;

  static BeamParams make(double charge, double mass, double v0, double d);

  double momentum() const { return mass_m * speed_v0; }

  /// Soft warning: the treatment is nonrelativistic, v0/c > 0.1 is flagged.
  bool relativistic(const Constants& k) const { return speed_v0 / k.c > 0.1; }
};

/// Two line charges +lambda at x = +epsilon and -lambda at x = -epsilon,
/// parallel to z.  The moment per unit length is fixed at construction.
class ElectricDipoleLine {
 public:
  static ElectricDipoleLine make(double lambda, double epsilon);

  double lambda() const { return lambda_; }
  double epsilon() const { return epsilon_; }
  double moment_p() const { return moment_p_; }

  /// Soft validity check for the dipole limit, epsilon <= 0.1 d.
  bool dipole_limit_ok(double d) const { return epsilon_ <= 0.1 * d; }

 private:
  ElectricDipoleLine(double lambda, double epsilon)
      : lambda_(lambda), epsilon_(epsilon), moment_p_(2.0 * epsilon * lambda) {}

  double lambda_;
  double epsilon_;
  double moment_p_;
};

/// Long thin solenoid along z with interior field B0 and cross-section A.
class SolenoidLine {
 public:
  static SolenoidLine make(double b0, double area, const Constants& k);

  double b0() const { return b0_; }
  double area() const { return area_; }
  double moment_mu() const { return moment_mu_; }
  double surface_current_k() const { return surface_current_k_; }
  double flux() const { return b0_ * area_; }

 private:
  SolenoidLine(double b0, double area, double c)
      : b0_(b0),
        area_(area),
        moment_mu_(b0 * area / (4.0 * kPi)),
        surface_current_k_(b0 * c / (4.0 * kPi)) {}

  double b0_;
  double area_;
  double moment_mu_;
  double surface_current_k_;
};

inline ElectricDipoleLine make_electric_dipole_line(double lambda, double epsilon) {
  return ElectricDipoleLine::make(lambda, epsilon);
}

inline SolenoidLine make_solenoid_line(double b0, double area, const Constants& k) {
  return SolenoidLine::make(b0, area, k);
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

enum class Method { ClosedForm, Quadrature, Trajectory, WkbAnalytic, WkbNumeric };

std::string_view to_string(Method m);

/// Beam side: Plus is the beam at x = +d, Minus the beam at x = -d.
enum class Side { Plus, Minus };

inline double side_sign(Side s) { return s == Side::Plus ? 1.0 : -1.0; }

/// Lag displacements and phase shift from one method.  delta_Y is always
/// derived from the two per-beam lags; error_estimate applies to delta_phi.
struct PhaseResult {
  double delta_y_plus = 0.0;
  double delta_y_minus = 0.0;
  double delta_Y = 0.0;
  double delta_phi = 0.0;
  Method method = Method::ClosedForm;
  double error_estimate = 0.0;

  static PhaseResult make(double dy_plus, double dy_minus, double delta_phi,
                          Method method, double error_estimate = 0.0);
};

}  // namespace lagphase
