#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gen.hpp"
#include "lagphase/core.hpp"

using namespace lagphase;

TEST(ElectricDipoleLine, MomentIsTwiceEpsilonLambda) {
  EXPECT_DOUBLE_EQ(make_electric_dipole_line(1.0, 0.5).moment_p(), 1.0);
  EXPECT_EQ(make_electric_dipole_line(0.0, 1.0).moment_p(), 0.0);
  EXPECT_DOUBLE_EQ(make_electric_dipole_line(-2.0, 0.25).moment_p(), -1.0);
}

TEST(ElectricDipoleLine, RejectsNonPositiveSeparation) {
  EXPECT_THROW(make_electric_dipole_line(1.0, 0.0), DomainError);
  EXPECT_THROW(make_electric_dipole_line(1.0, -0.1), DomainError);
  EXPECT_THROW(make_electric_dipole_line(std::nan(""), 0.1), DomainError);
}

TEST(ElectricDipoleLine, DipoleLimitThresholdIsTenthOfD) {
  const auto line = make_electric_dipole_line(1.0, 0.1);
  EXPECT_TRUE(line.dipole_limit_ok(1.0));
  EXPECT_FALSE(line.dipole_limit_ok(0.99));
}

TEST(SolenoidLine, MomentAndSurfaceCurrent) {
  const auto unit = make_solenoid_line(4.0 * kPi, 1.0, Constants{1.0, 1.0});
  EXPECT_DOUBLE_EQ(unit.moment_mu(), 1.0);
  EXPECT_DOUBLE_EQ(unit.surface_current_k(), 1.0);

  EXPECT_EQ(make_solenoid_line(0.0, 1.0, Constants{}).moment_mu(), 0.0);

  const auto s = make_solenoid_line(1.0, 2.0, Constants{137.036, 1.0});
  EXPECT_NEAR(s.moment_mu(), 0.159155, 5e-7);
  // B0 c / 4 pi = 137.036 / 12.566... = 10.90498
  EXPECT_NEAR(s.surface_current_k(), 10.904978, 5e-6);
  EXPECT_DOUBLE_EQ(s.flux(), 2.0);
}

TEST(SolenoidLine, RejectsNonPositiveArea) {
  EXPECT_THROW(make_solenoid_line(1.0, 0.0, Constants{}), DomainError);
  EXPECT_THROW(make_solenoid_line(1.0, -1.0, Constants{}), DomainError);
  EXPECT_THROW(make_solenoid_line(std::numeric_limits<double>::infinity(), 1.0, Constants{}),
               DomainError);
}

TEST(BeamParams, Validation) {
  EXPECT_NO_THROW(BeamParams::make(-1.0, 1.0, 1.0, 1.0));
  EXPECT_THROW(BeamParams::make(1.0, 0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(BeamParams::make(1.0, 1.0, -1.0, 1.0), DomainError);
  EXPECT_THROW(BeamParams::make(1.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(BeamParams::make(std::nan(""), 1.0, 1.0, 1.0), DomainError);
}

TEST(BeamParams, RelativisticFlag) {
  const Constants k{};
  EXPECT_FALSE((BeamParams{1, 1, 1, 1}.relativistic(k)));
  EXPECT_TRUE((BeamParams{1, 1, 14, 1}.relativistic(k)));
}

TEST(Constants, Validation) {
  EXPECT_NO_THROW(Constants::make(1.0, 1.0));
  EXPECT_THROW(Constants::make(0.0, 1.0), DomainError);
  EXPECT_THROW(Constants::make(1.0, -1.0), DomainError);
}

TEST(Errors, SingularityIsADomainError) {
  EXPECT_THROW(throw SingularityError("x"), DomainError);
  const ConvergenceError e("slow", 1.5, 0.25);
  EXPECT_EQ(e.partial(), 1.5);
  EXPECT_EQ(e.error_bound(), 0.25);
}

TEST(PhaseResult, RelativeLagIsDerivedFromTheBeams) {
  const auto r = PhaseResult::make(-3.0, 2.5, 7.0, Method::Trajectory, 0.1);
  EXPECT_EQ(r.delta_Y, -5.5);
  EXPECT_EQ(r.method, Method::Trajectory);
  EXPECT_EQ(to_string(Method::WkbNumeric), "WkbNumeric");
  EXPECT_EQ(side_sign(Side::Minus), -1.0);
}

TEST(CoreProperty, MomentSignFollowsLambda) {
  testgen::Gen g(3);
  for (int i = 0; i < 500; ++i) {
    const double lambda = g.sign() * g.log_uniform(1e-6, 1e6);
    const double eps = g.log_uniform(1e-6, 1e3);
    const auto line = make_electric_dipole_line(lambda, eps);
    EXPECT_EQ(std::signbit(line.moment_p()), std::signbit(lambda));
    EXPECT_DOUBLE_EQ(line.moment_p(), 2.0 * eps * lambda);
  }
}
