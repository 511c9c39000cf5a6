#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lagphase/report.hpp"
#include "lagphase/sweep.hpp"
#include "lagphase/verify.hpp"

using namespace lagphase;

namespace {

const Row* find(const Report& r, std::string_view method, std::string_view quantity) {
  for (const auto& row : r.rows)
    if (row.method == method && row.quantity == quantity) return &row;
  return nullptr;
}

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(LAGPHASE_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Methods, Parse) {
  const auto m = MethodSet::parse("closed, wkb");
  EXPECT_TRUE(m.closed);
  EXPECT_FALSE(m.quadrature);
  EXPECT_FALSE(m.trajectory);
  EXPECT_TRUE(m.wkb);
  EXPECT_EQ(MethodSet::parse("all").to_string(), "closed,quadrature,trajectory,wkb");
  EXPECT_THROW(MethodSet::parse("closed,fast"), ConfigError);
}

TEST(Report, ElectricUnitTable) {
  const auto r = run_electric(Config{}, MethodSet::parse("closed,quadrature,wkb"));
  ASSERT_NE(find(r, "ClosedForm", "delta_Y"), nullptr);
  EXPECT_NEAR(find(r, "ClosedForm", "delta_Y")->value, -12.56637, 5e-6);
  EXPECT_NEAR(find(r, "ClosedForm", "delta_phi")->value, -12.56637, 5e-6);
  EXPECT_NEAR(find(r, "Quadrature", "delta_phi")->value, -4.0 * kPi, 1e-7);
  EXPECT_NEAR(find(r, "WkbNumeric", "delta_phi")->value, -4.0 * kPi, 1e-9);
  EXPECT_NEAR(find(r, "ClosedForm", "delta_vy_plus@y=0")->value, -2.0, 1e-15);
  EXPECT_NE(find(r, "WkbNumeric-ClosedForm", "delta_phi_difference"), nullptr);
  EXPECT_TRUE(r.failures.empty());
}

TEST(Report, StrongElectricTrajectoryFailsCleanly) {
  // With p = 1 the unit beam cannot pass the barrier; that method is
  // reported as a failure and its rows are left out.
  const auto r = run_electric(Config{}, MethodSet::parse("closed,trajectory"));
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_NE(r.failures[0].find("Trajectory"), std::string::npos);
  EXPECT_EQ(find(r, "Trajectory", "delta_Y"), nullptr);
  EXPECT_NE(find(r, "ClosedForm", "delta_Y"), nullptr);
}

TEST(Report, WeakElectricTrajectoryTracksClosedForm) {
  Config c;
  c.lambda = 50.0 * 1e-4 / (4.0 * kPi);  // strength 1e-4
  const auto r = run_electric(c, MethodSet::parse("closed,trajectory"));
  ASSERT_TRUE(r.failures.empty());
  const double want = find(r, "ClosedForm", "delta_Y")->value;
  EXPECT_NEAR(find(r, "Trajectory", "delta_Y")->value, want, 1e-3 * std::abs(want));
}

TEST(Report, ZeroMomentGivesAnAllZeroTable) {
  Config c;
  c.lambda = 0.0;
  const auto r = run_electric(c, MethodSet{});
  EXPECT_TRUE(r.failures.empty());
  for (const auto& row : r.rows) EXPECT_EQ(row.value, 0.0) << row.method << ' ' << row.quantity;
}

TEST(Report, MagneticUnitTable) {
  const auto r = run_magnetic(Config{}, MethodSet{});
  EXPECT_TRUE(r.failures.empty());
  EXPECT_NEAR(find(r, "ClosedForm", "delta_phi")->value, 0.0917012, 5e-8);
  EXPECT_NEAR(find(r, "Flux", "delta_phi")->value, 0.0917012, 5e-8);
  EXPECT_NEAR(find(r, "WkbNumeric", "delta_phi")->value, 0.0917012, 5e-8);
  EXPECT_NEAR(find(r, "Trajectory", "delta_Y")->value, 0.0917012, 1e-3);
}

TEST(Report, ForceFreeModelKeepsTheWkbPhase) {
  Config none;
  none.force_model = ForceModel::None;
  const auto a = run_magnetic(none, MethodSet{});
  const auto b = run_magnetic(Config{}, MethodSet{});
  EXPECT_EQ(find(a, "Trajectory", "delta_Y")->value, 0.0);
  EXPECT_EQ(find(a, "ClosedForm", "delta_Y")->value, 0.0);
  EXPECT_EQ(find(a, "WkbNumeric", "delta_phi")->value, find(b, "WkbNumeric", "delta_phi")->value);
}

TEST(Report, ZeroFieldGivesAnAllZeroTable) {
  Config c;
  c.b0 = 0.0;
  for (const auto& row : run_magnetic(c, MethodSet{}).rows) EXPECT_EQ(row.value, 0.0) << row.method;
}

TEST(Output, NumbersAndCsv) {
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(-12.566370614359172), "-12.5663706144");
  Table t;
  t.key_columns = {"index"};
  t.lines.push_back({{"0"}, Row{"A,B", "q", 1.0, 0.0}});
  std::ostringstream os;
  write_csv(os, t);
  EXPECT_EQ(os.str(), "index,method,quantity,value,error_estimate\n0,\"A,B\",q,1,0\n");
}

TEST(Output, StructuredEmbedsTheManifest) {
  const auto m = make_manifest(Config{}, "lagphase electric");
  std::ostringstream os;
  write_structured(os, to_table(run_magnetic(Config{}, MethodSet::parse("closed"))), m);
  const auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j["manifest"]["command_line"], "lagphase electric");
  EXPECT_EQ(j["manifest"]["config"]["constants.c"], "137.036");
  EXPECT_EQ(j["rows"][0]["method"], "ClosedForm");
}

TEST(Sweep, ParameterNamesAndGrids) {
  EXPECT_EQ(sweep_key("b0"), "solenoid.b0");
  EXPECT_THROW(sweep_key("mass"), ConfigError);
  EXPECT_EQ(parse_sweep_values("1,2.5,4"), (std::vector<double>{1, 2.5, 4}));
  const auto lin = parse_sweep_values("0:1:5");
  ASSERT_EQ(lin.size(), 5u);
  EXPECT_DOUBLE_EQ(lin[1], 0.25);
  const auto log = parse_sweep_values("1:100:3:log");
  EXPECT_NEAR(log[1], 10.0, 1e-12);
  EXPECT_THROW(parse_sweep_values("1:2"), ConfigError);
  EXPECT_THROW(parse_sweep_values("0:1:3:log"), ConfigError);
  EXPECT_THROW(parse_sweep_values("a,b"), ConfigError);
}

TEST(Sweep, SeparationSweepKeepsRelativeLag) {
  const auto r = run_sweep(Config{}, {Case::Electric, "d", {0.5, 1, 2, 5, 10}, MethodSet::parse("closed")});
  ASSERT_EQ(r.points.size(), 5u);
  const double ref = find(r.points[0].report, "ClosedForm", "delta_Y")->value;
  for (const auto& p : r.points)
    EXPECT_NEAR(find(p.report, "ClosedForm", "delta_Y")->value, ref, 1e-12 * std::abs(ref));
}

TEST(Sweep, RowsStayInGridOrder) {
  const std::vector<double> v0s{3.0, 1.0, 2.0, 0.5};
  const auto r = run_sweep(Config{}, {Case::Electric, "v0", v0s, MethodSet::parse("closed,wkb")});
  const auto t = to_table(r);
  std::string last_index;
  std::size_t point = 0;
  for (const auto& line : t.lines) {
    if (line.keys[0] != last_index) {
      EXPECT_EQ(line.keys[0], std::to_string(point));
      EXPECT_EQ(line.keys[1], format_number(v0s[point]));
      last_index = line.keys[0];
      ++point;
    }
  }
  EXPECT_EQ(point, v0s.size());
  for (std::size_t i = 0; i < v0s.size(); ++i)
    EXPECT_NEAR(find(r.points[i].report, "ClosedForm", "delta_phi")->value, -4.0 * kPi / v0s[i], 1e-12);
}

TEST(Sweep, InvalidGridPointIsAConfigError) {
  EXPECT_THROW(run_sweep(Config{}, {Case::Electric, "d", {1.0, -1.0}, MethodSet{}}), ConfigError);
  EXPECT_THROW(run_sweep(Config{}, {Case::Electric, "mass", {1.0}, MethodSet{}}), ConfigError);
}

TEST(Verify, ChecksAreNumberedOneToTen) {
  const auto& checks = acceptance_checks();
  ASSERT_EQ(checks.size(), 10u);
  for (std::size_t i = 0; i < checks.size(); ++i) EXPECT_EQ(checks[i].id, static_cast<int>(i + 1));
}

TEST(Verify, LooseOdeToleranceFailsTheTrajectoryCheck) {
  Config c;
  c.ode.local_error_tol = 1e-2;
  const auto o = run_check(acceptance_checks()[2], c);
  EXPECT_FALSE(o.passed);
}

TEST(Verify, OutcomeLineFormat) {
  const auto& check = acceptance_checks()[5];
  const auto o = run_check(check, Config{});
  EXPECT_TRUE(o.passed);
  const auto line = format_outcome(check, o);
  EXPECT_EQ(line.rfind("PASS  6 flux identity", 0), 0u) << line;
}

TEST(Cli, ElectricMatchesTheLibrary) {
  const auto r = cli("electric --methods closed");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ClosedForm,delta_Y,-12.5663706144,0\n"), std::string::npos) << r.out;
}

TEST(Cli, TableIsByteIdenticalAcrossRuns) {
  EXPECT_EQ(cli("magnetic --seedless").out, cli("magnetic --seedless").out);
}

TEST(Cli, OutputFileWithManifestSidecar) {
  const std::string path = ::testing::TempDir() + "lagphase_cli_out.csv";
  const auto r = cli("magnetic --methods closed --out " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(path).rfind("method,quantity,value,error_estimate\n", 0), 0u);
  const auto manifest = nlohmann::json::parse(slurp(path + ".manifest.json"));
  EXPECT_EQ(manifest["tool_version"], std::string(kToolVersion));
  EXPECT_EQ(manifest["config"]["force_model"], "newton3");
  std::remove(path.c_str());
  std::remove((path + ".manifest.json").c_str());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("electric --set beam.v0=-1").code, 2);
  EXPECT_EQ(cli("electric --set nonsense=1").code, 2);
  EXPECT_EQ(cli("electric --config /nonexistent/file.cfg").code, 2);
  EXPECT_EQ(cli("sweep --param mass --values 1,2").code, 2);
  EXPECT_EQ(cli("electric --methods fast").code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("electric --methods closed,trajectory").code, 3);
  EXPECT_EQ(cli("verify --list").code, 0);
  EXPECT_EQ(cli("verify --check 6 --check 7").code, 0);
  EXPECT_EQ(cli("verify --check 3 --set ode.local_error_tol=1e-2").code, 1);
  EXPECT_EQ(cli("verify --check 11").code, 2);
}

TEST(Cli, SweepWritesOneBlockPerPoint) {
  const auto r = cli("sweep --case magnetic --param v0 --values 1,2,4 --methods closed");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("index,v0,method,quantity,value,error_estimate\n", 0), 0u);
  EXPECT_NE(r.out.find("\n2,4,Flux,delta_phi,0.0917012362763,0\n"), std::string::npos) << r.out;
}
