// lagphase: classical lag and quantum phase for the electric and magnetic
// dipole lines.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or configuration
// error, 3 numerical non-convergence.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lagphase/report.hpp"
#include "lagphase/sweep.hpp"
#include "lagphase/verify.hpp"

namespace {

using namespace lagphase;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string methods = "all";
  std::string out;
  std::string format = "table";
  bool seedless = false;
};

Config resolve_config(const Options& opt) {
  Config cfg = opt.config_path.empty() ? Config{} : load_config(opt.config_path);
  for (const auto& o : opt.overrides) apply_override(cfg, o);
  cfg.validate();
  return cfg;
}

void emit(const Options& opt, const Table& table, const RunManifest& manifest) {
  const bool structured = opt.format == "structured";
  auto write = [&](std::ostream& os) {
    if (structured) write_structured(os, table, manifest);
    else write_csv(os, table);
  };
  if (opt.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(opt.out);
  if (!file) throw ConfigError("cannot write '" + opt.out + "'");
  write(file);
  // Delimited tables reference a sidecar manifest; structured output embeds it.
  if (!structured) {
    std::ofstream side(opt.out + ".manifest.json");
    if (!side) throw ConfigError("cannot write '" + opt.out + ".manifest.json'");
    write_manifest_json(side, manifest);
  }
}

int report_messages(const std::vector<std::string>& warnings,
                    const std::vector<std::string>& failures) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& f : failures) std::cerr << "error: " << f << '\n';
  return failures.empty() ? kExitOk : kExitNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  std::string command_line;
  for (int i = 0; i < argc; ++i) {
    if (i) command_line += ' ';
    command_line += argv[i];
  }

  CLI::App app{"Classical lag and quantum phase shift for electric and magnetic dipole lines"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config_path, "key = value configuration file");
  app.add_option("--set", opt.overrides, "override one key (key=value), repeatable");
  app.add_option("--methods", opt.methods, "comma list of closed,quadrature,trajectory,wkb or all");
  app.add_option("--out", opt.out, "output file (default: stdout)");
  app.add_option("--format", opt.format, "table or structured")
      ->check(CLI::IsMember({"table", "structured"}));
  app.add_flag("--seedless", opt.seedless,
               "assert a deterministic run; no random numbers are used anywhere");

  auto* electric = app.add_subcommand("electric", "electric dipole line report");
  auto* magnetic = app.add_subcommand("magnetic", "solenoid report");

  auto* sweep = app.add_subcommand("sweep", "one report per grid point of a parameter");
  std::string sweep_case = "electric";
  std::string sweep_param;
  std::string sweep_values;
  sweep->add_option("--case", sweep_case, "electric or magnetic")
      ->check(CLI::IsMember({"electric", "magnetic"}));
  sweep->add_option("--param", sweep_param, "d, v0, lambda, epsilon, b0, area or c")->required();
  sweep->add_option("--values", sweep_values, "a,b,c or start:stop:count[:log]")->required();

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  bool list_only = false;
  std::vector<int> check_ids;
  verify->add_flag("--list", list_only, "list the checks without running them");
  verify->add_option("--check", check_ids, "run only this check id, repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed() && list_only) {
      list_checks(std::cout);
      return kExitOk;
    }
    const Config cfg = resolve_config(opt);
    RunManifest manifest = make_manifest(cfg, command_line);
    manifest.seedless = true;

    if (verify->parsed()) {
      for (int id : check_ids)
        if (id < 1 || id > static_cast<int>(acceptance_checks().size()))
          throw ConfigError("no check with id " + std::to_string(id));
      return run_checks(cfg, check_ids, std::cout) ? kExitOk : kExitVerifyFailed;
    }

    const MethodSet methods = MethodSet::parse(opt.methods);
    if (electric->parsed() || magnetic->parsed()) {
      const auto report = run_case(electric->parsed() ? Case::Electric : Case::Magnetic, cfg, methods);
      emit(opt, to_table(report), manifest);
      return report_messages(report.warnings, report.failures);
    }

    SweepSpec spec;
    spec.kind = sweep_case == "magnetic" ? Case::Magnetic : Case::Electric;
    spec.parameter = sweep_param;
    sweep_key(sweep_param);  // reject unknown names before parsing values
    spec.values = parse_sweep_values(sweep_values);
    spec.methods = methods;
    const auto result = run_sweep(cfg, spec);
    emit(opt, to_table(result), manifest);
    std::vector<std::string> warnings;
    std::vector<std::string> failures;
    for (std::size_t i = 0; i < result.points.size(); ++i) {
      for (const auto& w : result.points[i].report.warnings)
        warnings.push_back("point " + std::to_string(i) + ": " + w);
      for (const auto& f : result.points[i].report.failures)
        failures.push_back("point " + std::to_string(i) + ": " + f);
    }
    return report_messages(warnings, failures);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  }
}
