#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "lagphase/config.hpp"

using namespace lagphase;

TEST(Config, DefaultsAreTheUnitSystem) {
  const Config c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(c.electric_line().moment_p(), 1.0);
  EXPECT_DOUBLE_EQ(c.solenoid().moment_mu(), 1.0);
  EXPECT_DOUBLE_EQ(c.constants.c, 137.036);
  EXPECT_TRUE(c.warnings().empty());
}

TEST(Config, ParsesKeysCommentsAndBlankLines) {
  const Config c = parse_config(
      "# unit beam, stronger line\n"
      "\n"
      "beam.v0 = 2.5   # trailing comment\n"
      "electric.lambda=3\n"
      "force_model = none\n"
      "ode.force_source = full_quadrature_xy\n"
      "wkb.expansion = exact_root\n"
      "wkb.potential = two_line\n"
      "ode.tail_correction = false\n"
      "quadrature.max_subdivisions = 500\n");
  EXPECT_EQ(c.beam.speed_v0, 2.5);
  EXPECT_EQ(c.lambda, 3.0);
  EXPECT_EQ(c.force_model, ForceModel::None);
  EXPECT_EQ(c.force_source, ForceSource::FullQuadratureXY);
  EXPECT_EQ(c.wkb.expansion, WkbExpansion::ExactRoot);
  EXPECT_EQ(c.wkb.potential, PotentialForm::TwoLine);
  EXPECT_FALSE(c.ode.tail_correction);
  EXPECT_EQ(c.quadrature.max_subdivisions, 500u);
}

TEST(Config, LaterKeysOverrideEarlier) {
  EXPECT_EQ(parse_config("beam.d = 2\nbeam.d = 3\n").beam.slit_half_sep_d, 3.0);
}

TEST(Config, ErrorsNameTheLine) {
  try {
    parse_config("beam.d = 1\nbeam.speed = 2\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("beam.speed"), std::string::npos);
  }
}

TEST(Config, RejectsMalformedValues) {
  Config c;
  EXPECT_THROW(apply_setting(c, "beam.v0", "fast"), ConfigError);
  EXPECT_THROW(apply_setting(c, "beam.v0", "1.0x"), ConfigError);
  EXPECT_THROW(apply_setting(c, "beam.v0", "inf"), ConfigError);
  EXPECT_THROW(apply_setting(c, "force_model", "newton"), ConfigError);
  EXPECT_THROW(apply_setting(c, "ode.tail_correction", "maybe"), ConfigError);
  EXPECT_THROW(apply_setting(c, "ode.max_steps", "2.5"), ConfigError);
  EXPECT_THROW(apply_override(c, "beam.v0"), ConfigError);
  EXPECT_THROW(parse_config("beam.v0 =\n"), ConfigError);
}

TEST(Config, ValidationWrapsDomainErrors) {
  EXPECT_THROW(parse_config("beam.v0 = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("electric.epsilon = -1\n"), ConfigError);
  EXPECT_THROW(parse_config("solenoid.area = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("constants.c = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("ode.y_start = 5\n"), ConfigError);
  EXPECT_THROW(parse_config("quadrature.rel_tol = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("wkb.y_max = -1\n"), ConfigError);
}

TEST(Config, SoftWarnings) {
  const Config wide = parse_config("electric.epsilon = 0.5\nelectric.lambda = 1\n");
  ASSERT_EQ(wide.warnings().size(), 1u);
  const Config fast = parse_config("beam.v0 = 20\n");
  ASSERT_EQ(fast.warnings().size(), 1u);
}

TEST(Config, KeyValuesRoundTrip) {
  Config c = parse_config(
      "beam.v0 = 0.1\nelectric.epsilon = 0.003\nsolenoid.b0 = 1.2345678901234567\n"
      "force_model = none\nwkb.y_max = 123.5\nconstants.hbar = 0.7\n");
  std::string text;
  for (const auto& [k, v] : to_key_values(c)) text += k + " = " + v + "\n";
  const Config back = parse_config(text);
  EXPECT_EQ(to_key_values(back), to_key_values(c));
  EXPECT_EQ(back.b0, c.b0);
  EXPECT_EQ(back.epsilon, c.epsilon);
}

TEST(Config, LoadsFromFile) {
  const std::string path = ::testing::TempDir() + "lagphase_config_test.cfg";
  {
    std::ofstream f(path);
    f << "beam.d = 4\n";
  }
  EXPECT_EQ(load_config(path).beam.slit_half_sep_d, 4.0);
  std::remove(path.c_str());
  EXPECT_THROW(load_config(path), ConfigError);
}

TEST(Config, EngineSettingsShareTheQuadrature) {
  Config c;
  c.quadrature.rel_tol = 1e-11;
  EXPECT_EQ(c.ode_config().force_quadrature.rel_tol, 1e-11);
  EXPECT_EQ(c.wkb_config().quadrature.rel_tol, 1e-11);
}
