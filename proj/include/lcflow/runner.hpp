#pragma once

// Simulation loop: build the scenario, advance it, integrate the blow-up
// monitor every step, record diagnostics, and stop at t_max, when the
// monitor crosses monitor_max, or when the solver fails.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcflow/config.hpp"
#include "lcflow/io.hpp"

namespace lcflow {

enum class HaltReason { t_max_reached, monitor_exceeded, overflow, degenerate_director };

inline std::string_view to_string(HaltReason h) {
  switch (h) {
    case HaltReason::t_max_reached: return "t_max_reached";
    case HaltReason::monitor_exceeded: return "monitor_exceeded";
    case HaltReason::overflow: return "overflow";
    case HaltReason::degenerate_director: return "degenerate_director";
  }
  return "unknown";
}

struct RunReport {
  HaltReason halt_reason = HaltReason::t_max_reached;
  double final_time = 0.0;
  DiagnosticsRecord final_record;
  /// Fitted Gronwall constant; empty when the envelope is undefined.
  std::optional<double> gronwall_c;
  double energy_residual = 0.0;
  std::size_t steps = 0;
  std::string halt_message;
  std::vector<DiagnosticsRecord> history;
  std::filesystem::path timeseries_path;  ///< empty when nothing was written
};

/// Output directory after applying the SIM_OUTPUT_DIR override.
inline std::string effective_output_dir(const SimulationConfig& config) {
  if (const char* env = std::getenv("SIM_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return config.output_dir;
}

struct RunCallbacks {
  /// Called with each new record (after it is appended to the history).
  std::function<void(const DiagnosticsRecord&)> on_record;
};

/// Run a configured simulation. An empty output directory disables all file
/// output. Solver failures end the run with a halt reason instead of
/// propagating; I/O failures throw IoError.
inline RunReport run(const SimulationConfig& config, const RunCallbacks& callbacks = {}) {
  const Grid grid = config.grid();
  const PhysicsParams params = config.physics();
  params.validate();
  config.policy.validate();
  const DiagnosticsOptions diag_opts{config.nu, config.oversample_linf};
  const StepOptions step_opts{config.policy.integrator, false};

  const std::string out_dir = effective_output_dir(config);
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
  }

  RunReport report;
  FluidState state = make_scenario(grid, config.scenario);

  auto record = [&](const FluidState& s, double integrand, double accum) {
    DiagnosticsRecord r = diagnose(s, diag_opts);
    r.monitor_integrand = integrand;
    r.monitor_accum = accum;
    report.history.push_back(r);
    if (callbacks.on_record) callbacks.on_record(r);
  };
  auto snapshot = [&](const FluidState& s, std::size_t n) {
    if (out_dir.empty()) return;
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%08zu.elcf", n);
    write_snapshot(s, std::filesystem::path(out_dir) / name);
  };

  DiagnosticsRecord last;  // integrand/accum at the current state
  last.t = state.t();
  last.monitor_integrand = blowup_integrand(state, config.oversample_linf);
  last.monitor_accum = 0.0;
  record(state, last.monitor_integrand, 0.0);
  if (config.snapshot_every > 0) snapshot(state, 0);

  const double t_max = config.policy.t_max;
  // Times within this distance of t_max count as arrived, so a fixed dt that
  // divides t_max does not leave a round-off-sized final step.
  const double t_eps = 1e-12 * std::max(1.0, t_max);
  bool recorded_current = true;
  report.halt_reason = HaltReason::t_max_reached;

  while (state.t() < t_max - t_eps) {
    double dt = suggest_dt(state, config.policy);
    if (t_max - (state.t() + dt) <= t_eps) dt = t_max - state.t();

    try {
      state = step(state, params, dt, step_opts);
    } catch (const NumericalOverflowError& e) {
      report.halt_reason = HaltReason::overflow;
      report.halt_message = e.what();
      break;
    } catch (const DegenerateDirectorError& e) {
      report.halt_reason = HaltReason::degenerate_director;
      report.halt_message = e.what();
      break;
    }
    if (t_max - state.t() <= t_eps) state.set_t(t_max);
    ++report.steps;

    const double integrand = blowup_integrand(state, config.oversample_linf);
    const double accum = accumulate_monitor(last, integrand, dt);
    last.t = state.t();
    last.monitor_integrand = integrand;
    last.monitor_accum = accum;
    recorded_current = false;

    if (report.steps % static_cast<std::size_t>(config.record_every) == 0) {
      record(state, integrand, accum);
      recorded_current = true;
    }
    if (config.snapshot_every > 0 &&
        report.steps % static_cast<std::size_t>(config.snapshot_every) == 0) {
      snapshot(state, report.steps);
    }
    if (accum > config.monitor_max) {
      report.halt_reason = HaltReason::monitor_exceeded;
      break;
    }
  }

  // The last good state always closes the history.
  if (!recorded_current) record(state, last.monitor_integrand, last.monitor_accum);

  report.final_time = state.t();
  report.final_record = report.history.back();
  report.energy_residual = energy_residual(report.history);
  try {
    report.gronwall_c = gronwall_envelope(report.history);
  } catch (const EnvelopeUndefinedError&) {
    report.gronwall_c.reset();
  }

  if (!out_dir.empty()) {
    report.timeseries_path = std::filesystem::path(out_dir) / "timeseries.csv";
    write_timeseries(report.history, report.timeseries_path);
  }
  return report;
}

}  // namespace lcflow
