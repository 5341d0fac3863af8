#pragma once

// Run configuration in a line-based `key = value` format. `#` starts a
// comment, blank lines are ignored, keys may appear at most once, unknown
// keys are rejected. Overrides (`key=value`, e.g. from the command line)
// replace file values before validation.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcflow/dynamics.hpp"
#include "lcflow/scenarios.hpp"

namespace lcflow {

struct SimulationConfig {
  int dim = 2;
  int res = 64;
  double length = 2.0 * std::numbers::pi;
  double nu = 1.0;
  ScenarioSpec scenario;
  StepPolicy policy;
  double monitor_max = 1e6;
  int record_every = 10;
  int snapshot_every = 0;
  std::string output_dir = "output";
  bool oversample_linf = false;

  PhysicsParams physics() const { return {nu}; }
  Grid grid() const { return Grid(dim, res, length); }
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "dim",          "res",         "length",         "nu",
      "scenario",     "scenario.k",  "scenario.amplitude", "scenario.seed",
      "scenario.slope", "dt",        "cfl_factor",     "integrator",
      "t_max",        "monitor_max", "record_every",   "snapshot_every",
      "output_dir",   "oversample_linf"};
  return keys;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct ConfigEntry {
  std::string value;
  int line = 0;  // 0 for overrides
};

inline bool is_known_key(std::string_view key) {
  for (const auto& k : config_keys()) {
    if (k == key) return true;
  }
  return false;
}

inline double parse_real(const std::string& key, const ConfigEntry& e) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError("value '" + e.value + "' for '" + key + "' is not a finite number", e.line,
                      key);
  }
  return v;
}

inline long long parse_integer(const std::string& key, const ConfigEntry& e) {
  long long v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("value '" + e.value + "' for '" + key + "' is not an integer", e.line, key);
  }
  return v;
}

inline bool parse_bool(const std::string& key, const ConfigEntry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ConfigError("value '" + e.value + "' for '" + key + "' is not a boolean", e.line, key);
}

inline void range_violation(const std::string& key, const ConfigEntry& e, const std::string& rule) {
  throw ConfigError("'" + key + "' out of range: " + rule, e.line, key);
}

inline std::map<std::string, ConfigEntry> parse_entries(std::string_view text) {
  std::map<std::string, ConfigEntry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value'", line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no, key);
    if (!is_known_key(key)) throw ConfigError("unknown key '" + key + "'", line_no, key);
    if (entries.contains(key)) {
      throw ConfigError("duplicate key '" + key + "' (first set on line " +
                            std::to_string(entries[key].line) + ")",
                        line_no, key);
    }
    entries[key] = {value, line_no};
  }
  return entries;
}

}  // namespace detail

/// Parse and validate configuration text. `overrides` are `key=value` strings
/// applied after the file (they may replace file keys).
inline SimulationConfig load_config(std::string_view text,
                                    const std::vector<std::string>& overrides = {}) {
  using detail::ConfigEntry;
  auto entries = detail::parse_entries(text);
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "' is not key=value");
    const std::string key(detail::trim(std::string_view(o).substr(0, eq)));
    const std::string value(detail::trim(std::string_view(o).substr(eq + 1)));
    if (!detail::is_known_key(key)) throw ConfigError("unknown key '" + key + "'", 0, key);
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", 0, key);
    entries[key] = {value, 0};
  }

  for (const char* required : {"dim", "res", "scenario", "t_max"}) {
    if (!entries.contains(required)) {
      throw ConfigError(std::string("missing required key '") + required + "'", 0, required);
    }
  }

  SimulationConfig c;
  auto has = [&](const char* k) { return entries.contains(k); };
  auto at = [&](const char* k) -> const ConfigEntry& { return entries.at(k); };
  auto real = [&](const char* k) { return detail::parse_real(k, at(k)); };
  auto integer = [&](const char* k) { return detail::parse_integer(k, at(k)); };

  const auto dim = integer("dim");
  if (dim != 2 && dim != 3) detail::range_violation("dim", at("dim"), "must be 2 or 3");
  c.dim = static_cast<int>(dim);

  const auto res = integer("res");
  if (res < 8 || res > (1 << 14) || (res & (res - 1)) != 0) {
    detail::range_violation("res", at("res"), "must be a power of two >= 8");
  }
  c.res = static_cast<int>(res);

  if (has("length")) {
    c.length = real("length");
    if (!(c.length > 0.0)) detail::range_violation("length", at("length"), "must be > 0");
  }
  if (has("nu")) {
    c.nu = real("nu");
    if (!(c.nu > 0.0)) detail::range_violation("nu", at("nu"), "must be > 0");
  }

  c.scenario.name = at("scenario").value;
  bool known_scenario = false;
  for (const auto& n : registered_scenarios()) known_scenario |= (n == c.scenario.name);
  if (!known_scenario) {
    detail::range_violation("scenario", at("scenario"), "unknown scenario '" + c.scenario.name + "'");
  }
  if (has("scenario.k")) {
    const auto k = integer("scenario.k");
    if (k == 0) detail::range_violation("scenario.k", at("scenario.k"), "must be nonzero");
    c.scenario.parameters["k"] = static_cast<double>(k);
  }
  if (has("scenario.amplitude")) {
    const double a = real("scenario.amplitude");
    if (!(a > 0.0)) detail::range_violation("scenario.amplitude", at("scenario.amplitude"), "must be > 0");
    c.scenario.parameters["amplitude"] = a;
  }
  if (has("scenario.seed")) {
    const auto s = integer("scenario.seed");
    if (s < 0 || s > (1LL << 53)) {
      detail::range_violation("scenario.seed", at("scenario.seed"), "must be in [0, 2^53]");
    }
    c.scenario.parameters["seed"] = static_cast<double>(s);
  }
  if (has("scenario.slope")) {
    const double s = real("scenario.slope");
    if (!(s > c.dim / 2.0 + 1.0)) {
      detail::range_violation("scenario.slope", at("scenario.slope"), "must exceed dim/2 + 1");
    }
    c.scenario.parameters["slope"] = s;
  }

  if (has("dt")) {
    const double dt = real("dt");
    if (!(dt > 0.0)) detail::range_violation("dt", at("dt"), "must be > 0");
    c.policy.dt = dt;
  }
  if (has("cfl_factor")) {
    c.policy.cfl_factor = real("cfl_factor");
    if (!(c.policy.cfl_factor > 0.0 && c.policy.cfl_factor <= 1.0)) {
      detail::range_violation("cfl_factor", at("cfl_factor"), "must be in (0, 1]");
    }
  }
  if (has("integrator")) {
    auto i = parse_integrator(at("integrator").value);
    if (!i) detail::range_violation("integrator", at("integrator"), "must be IF-RK2 or IF-RK4");
    c.policy.integrator = *i;
  }
  c.policy.t_max = real("t_max");
  if (!(c.policy.t_max >= 0.0)) detail::range_violation("t_max", at("t_max"), "must be >= 0");

  if (has("monitor_max")) {
    c.monitor_max = real("monitor_max");
    if (!(c.monitor_max > 0.0)) detail::range_violation("monitor_max", at("monitor_max"), "must be > 0");
  }
  if (has("record_every")) {
    const auto r = integer("record_every");
    if (r < 1 || r > (1 << 30)) detail::range_violation("record_every", at("record_every"), "must be >= 1");
    c.record_every = static_cast<int>(r);
  }
  if (has("snapshot_every")) {
    const auto s = integer("snapshot_every");
    if (s < 0 || s > (1 << 30)) {
      detail::range_violation("snapshot_every", at("snapshot_every"), "must be >= 0");
    }
    c.snapshot_every = static_cast<int>(s);
  }
  if (has("output_dir")) c.output_dir = at("output_dir").value;
  if (has("oversample_linf")) c.oversample_linf = detail::parse_bool("oversample_linf", at("oversample_linf"));
  return c;
}

}  // namespace lcflow
