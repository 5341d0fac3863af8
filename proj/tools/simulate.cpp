// simulate run --config PATH [--set key=value]...
// simulate verify --suite NAME
//
// Exit codes: 0 success, 1 solver halt by overflow or degenerate director,
// 2 configuration error. Failed verification also exits with 1.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcflow/lcflow.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kHalted = 1;
constexpr int kConfigError = 2;

int do_run(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read config '%s'\n", path.c_str());
    return kConfigError;
  }
  std::stringstream text;
  text << in.rdbuf();

  lcflow::SimulationConfig config;
  try {
    config = lcflow::load_config(text.str(), overrides);
  } catch (const lcflow::ConfigError& e) {
    std::fprintf(stderr, "config error in '%s': %s\n", path.c_str(), e.what());
    return kConfigError;
  }

  lcflow::RunReport report;
  try {
    report = lcflow::run(config);
  } catch (const lcflow::UnderResolvedError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const lcflow::RangeError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const lcflow::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kHalted;
  }

  const auto& r = report.final_record;
  std::printf("halt_reason     %s\n", std::string(lcflow::to_string(report.halt_reason)).c_str());
  if (!report.halt_message.empty()) std::printf("halt_message    %s\n", report.halt_message.c_str());
  std::printf("final_time      %.10g\n", report.final_time);
  std::printf("steps           %zu\n", report.steps);
  std::printf("energy          %.10g\n", r.energy);
  std::printf("monitor_accum   %.10g\n", r.monitor_accum);
  std::printf("energy_residual %.3e\n", report.energy_residual);
  if (report.gronwall_c) {
    std::printf("gronwall_c      %.6g\n", *report.gronwall_c);
  } else {
    std::printf("gronwall_c      undefined\n");
  }
  if (!report.timeseries_path.empty()) {
    std::printf("timeseries      %s\n", report.timeseries_path.string().c_str());
  }

  switch (report.halt_reason) {
    case lcflow::HaltReason::overflow:
    case lcflow::HaltReason::degenerate_director:
      return kHalted;
    default:
      return kOk;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral nematic liquid crystal flow on a periodic box"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto* run_cmd = app.add_subcommand("run", "Run a simulation from a config file");
  run_cmd->add_option("--config", config_path, "Config file")->required();
  run_cmd->add_option("--set", overrides, "Override a config entry (key=value)")
      ->allow_extra_args(false);

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run an acceptance suite");
  verify_cmd->add_option("--suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(lcflow::verify_suites()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (run_cmd->parsed()) return do_run(config_path, overrides);
  return lcflow::run_suite(suite) ? kOk : kHalted;
}
