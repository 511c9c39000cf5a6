#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "lagphase/phase.hpp"

using namespace lagphase;

namespace {

const BeamParams kUnit{1.0, 1.0, 1.0, 1.0};
const Constants kDesk{};
const auto kUnitLine = make_electric_dipole_line(0.5, 1.0);  // p = 1; dipole-limit form only
const auto kUnitSolenoid = make_solenoid_line(4.0 * kPi, 1.0, kDesk);  // mu = 1

WkbConfig at(double y_max) {
  WkbConfig w;
  w.y_max = y_max;
  return w;
}

}  // namespace

TEST(Phase, Semiclassical) {
  EXPECT_DOUBLE_EQ(phase_semiclassical(kUnit, -4.0 * kPi, 1.0), -4.0 * kPi);
  EXPECT_NEAR(phase_semiclassical(kUnit, 4.0 * kPi / 137.036, 1.0), 0.0917012, 5e-8);
  EXPECT_EQ(phase_semiclassical(kUnit, 0.0, 1.0), 0.0);
  EXPECT_THROW(phase_semiclassical(kUnit, 1.0, 0.0), DomainError);
}

TEST(Phase, Flux) {
  EXPECT_NEAR(phase_flux(1, 4.0 * kPi, 1, 137.036, 1), 0.0917012, 5e-8);
  EXPECT_EQ(phase_flux(1, 0, 1, 137.036, 1), 0.0);
  EXPECT_THROW(phase_flux(1, 1, 1, 0, 1), DomainError);
}

TEST(Phase, ElectricAnalytic) {
  EXPECT_DOUBLE_EQ(phase_wkb_electric_analytic(kUnit, kUnitLine, 1.0), -4.0 * kPi);
}

TEST(WkbElectric, TruncatedPathsApproachTheAnalyticPhase) {
  const auto r = phase_wkb_electric(kUnit, kUnitLine, at(1e4), 1.0);
  EXPECT_NEAR(r.delta_phi, -4.0 * kPi, 1e-3 * 4.0 * kPi);
  EXPECT_LE(std::abs(r.delta_phi + 4.0 * kPi), r.error_estimate);

  BeamParams d2 = kUnit;
  d2.slit_half_sep_d = 2.0;
  const auto r2 = phase_wkb_electric(d2, kUnitLine, at(1e4), 1.0);
  EXPECT_NEAR(r2.delta_phi, r.delta_phi, 2e-3 * std::abs(r.delta_phi));
}

TEST(WkbElectric, ZeroMomentGivesExactlyZero) {
  const auto r = phase_wkb_electric(kUnit, make_electric_dipole_line(0.0, 0.01), {}, 1.0);
  EXPECT_EQ(r.delta_phi, 0.0);
}

TEST(WkbElectric, ExtrapolationReachesTheLimit) {
  const auto r = phase_wkb_electric_extrapolated(kUnit, kUnitLine, {}, 1.0);
  EXPECT_NEAR(r.delta_phi, -4.0 * kPi, 1e-6 * 4.0 * kPi);
  EXPECT_LE(std::abs(r.delta_phi + 4.0 * kPi), r.error_estimate + 1e-15);
  EXPECT_NEAR(r.phase_plus, -r.phase_minus, 1e-12);
}

TEST(WkbElectric, ValidityFlag) {
  EXPECT_TRUE(phase_wkb_electric(kUnit, kUnitLine, {}, 1.0).validity_warning);
  const auto weak = make_electric_dipole_line(0.0005, 1.0);
  const auto r = phase_wkb_electric(kUnit, weak, {}, 1.0);
  EXPECT_FALSE(r.validity_warning);
  EXPECT_NEAR(r.validity, 4.0 * weak.moment_p(), 1e-15);
}

TEST(WkbElectric, ExactRootNeedsARealMomentum) {
  WkbConfig w;
  w.expansion = WkbExpansion::ExactRoot;
  EXPECT_THROW(phase_wkb_electric(kUnit, kUnitLine, w, 1.0), DomainError);
}

TEST(WkbElectric, ExactRootDiffersAtSecondRelativeOrder) {
  // In the phase difference the even (second-order) part of the root cancels
  // between the paths, so the absolute gap is third order and the relative
  // gap is second order in the expansion parameter.
  std::vector<double> rel_gap;
  for (double p : {0.01, 0.005, 0.0025}) {
    const auto line = make_electric_dipole_line(p / 2.0, 1.0);
    WkbConfig first;
    WkbConfig exact;
    exact.expansion = WkbExpansion::ExactRoot;
    const double a = phase_wkb_electric_extrapolated(kUnit, line, first, 1.0).delta_phi;
    const double b = phase_wkb_electric_extrapolated(kUnit, line, exact, 1.0).delta_phi;
    rel_gap.push_back(std::abs(b / a - 1.0));
  }
  EXPECT_NEAR(rel_gap[0] / rel_gap[1], 4.0, 0.2);
  EXPECT_NEAR(rel_gap[1] / rel_gap[2], 4.0, 0.2);
}

TEST(WkbElectric, TwoLinePotentialApproachesDipoleLimit) {
  WkbConfig two;
  two.potential = PotentialForm::TwoLine;
  for (double eps : {0.1, 0.01}) {
    const auto line = make_electric_dipole_line(1.0 / (2.0 * eps), eps);
    const double a = phase_wkb_electric_extrapolated(kUnit, line, {}, 1.0).delta_phi;
    const double b = phase_wkb_electric_extrapolated(kUnit, line, two, 1.0).delta_phi;
    EXPECT_LT(std::abs(b / a - 1.0), 2.0 * eps * eps) << eps;
  }
}

TEST(WkbMagnetic, TruncatedAndExtrapolated) {
  const double want = phase_flux(1, 4.0 * kPi, 1, 137.036, 1);
  const auto r = phase_wkb_magnetic(kUnit, kUnitSolenoid, at(1e4), kDesk);
  EXPECT_NEAR(r.delta_phi, 0.0917012, 1e-3 * 0.0917012);
  EXPECT_LE(std::abs(r.delta_phi - want), r.error_estimate);
  const auto x = phase_wkb_magnetic_extrapolated(kUnit, kUnitSolenoid, {}, kDesk);
  EXPECT_NEAR(x.delta_phi, want, 1e-6 * want);
}

TEST(WkbMagnetic, ZeroFieldGivesExactlyZero) {
  const auto r = phase_wkb_magnetic(kUnit, make_solenoid_line(0.0, 1.0, kDesk), {}, kDesk);
  EXPECT_EQ(r.delta_phi, 0.0);
}

TEST(WkbProperty, AgreesWithSemiclassicalPhase) {
  testgen::Gen g(41);
  for (int i = 0; i < 25; ++i) {
    const BeamParams b{g.sign() * g.log_uniform(0.1, 10), g.log_uniform(0.1, 10),
                       g.log_uniform(0.1, 10), g.log_uniform(0.1, 10)};
    const double hbar = g.log_uniform(0.1, 10);
    const Constants k{g.log_uniform(10, 1000), hbar};
    const auto line = make_electric_dipole_line(g.sign() * g.log_uniform(0.01, 10), 0.01);
    const auto sol = make_solenoid_line(g.sign() * g.log_uniform(0.1, 100), g.log_uniform(0.01, 10), k);

    const double want_e = phase_semiclassical(
        b, relative_displacement(CouplingSpec::electric(b, line), b), hbar);
    const auto we = phase_wkb_electric_extrapolated(b, line, {}, hbar);
    EXPECT_NEAR(we.delta_phi, want_e, std::max(we.error_estimate, 1e-6 * std::abs(want_e))) << i;

    const double want_m = phase_semiclassical(
        b, relative_displacement(CouplingSpec::magnetic(b, sol, k), b), hbar);
    const auto wm = phase_wkb_magnetic_extrapolated(b, sol, {}, k);
    EXPECT_NEAR(wm.delta_phi, want_m, std::max(wm.error_estimate, 1e-6 * std::abs(want_m))) << i;
    EXPECT_NEAR(want_m, phase_flux(b.charge_e, sol.b0(), sol.area(), k.c, hbar),
                1e-14 * std::abs(want_m));
  }
}

TEST(Results, ClosedFormChain) {
  const auto c = CouplingSpec::electric(kUnit, kUnitLine);
  const auto r = closed_form_result(c, kUnit, 1.0);
  EXPECT_EQ(r.method, Method::ClosedForm);
  EXPECT_DOUBLE_EQ(r.delta_y_plus, -2.0 * kPi);
  EXPECT_DOUBLE_EQ(r.delta_Y, -4.0 * kPi);
  EXPECT_DOUBLE_EQ(r.delta_phi, -4.0 * kPi);
  EXPECT_EQ(r.error_estimate, 0.0);
}

TEST(Results, QuadratureErrorIsInPhaseUnits) {
  BeamParams b = kUnit;
  b.mass_m = 3.0;
  const auto c = CouplingSpec::electric(b, kUnitLine);
  const auto r = quadrature_result(c, b, 0.5, {});
  EXPECT_NEAR(r.delta_phi, phase_semiclassical(b, relative_displacement(c, b), 0.5),
              r.error_estimate + 1e-14);
  EXPECT_GT(r.error_estimate, 0.0);
}

TEST(Results, WkbLagsConvertThroughTheMomentum) {
  BeamParams b = kUnit;
  b.speed_v0 = 2.0;
  const auto w = phase_wkb_electric_extrapolated(b, kUnitLine, {}, 1.0);
  const auto r = wkb_result(w, b, 1.0, Method::WkbNumeric);
  EXPECT_DOUBLE_EQ(r.delta_y_plus, w.phase_plus / 2.0);
  EXPECT_DOUBLE_EQ(r.delta_phi, w.delta_phi);
  EXPECT_NEAR(r.delta_Y, relative_displacement(CouplingSpec::electric(b, kUnitLine), b), 1e-10);
}

TEST(Results, TrajectoryErrorEstimateIsPositive) {
  const auto c = CouplingSpec::with_strength(CouplingKind::Electric, 1e-3, kUnit);
  const auto r = trajectory_result(c, kUnit, 1.0, OdeConfig{}, ForceSource::ClosedFormY);
  EXPECT_GT(r.error_estimate, 0.0);
  EXPECT_NEAR(r.delta_Y, relative_displacement(c, kUnit), 1e-3 * std::abs(r.delta_Y));
}
