#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lcflow/lcflow.hpp"

using namespace lcflow;
using Catch::Matchers::WithinAbs;
namespace fs = std::filesystem;

namespace {

const std::string kMinimal = "dim = 2\nres = 64\nscenario = taylor_green\nt_max = 1\n";

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lcflow_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

SimulationConfig small(const std::string& scenario, double t_max) {
  SimulationConfig c = load_config("dim = 2\nres = 16\nscenario = " + scenario +
                                   "\nt_max = " + std::to_string(t_max) + "\n");
  c.output_dir.clear();
  return c;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value) {
      ::setenv("SIM_OUTPUT_DIR", value, 1);
    } else {
      ::unsetenv("SIM_OUTPUT_DIR");
    }
  }
  ~EnvGuard() { ::unsetenv("SIM_OUTPUT_DIR"); }
};

}  // namespace

TEST_CASE("minimal config gets defaults") {
  const SimulationConfig c = load_config(kMinimal);
  CHECK(c.dim == 2);
  CHECK(c.res == 64);
  CHECK(c.scenario.name == "taylor_green");
  CHECK(c.policy.t_max == 1.0);
  CHECK(c.nu == 1.0);
  CHECK_THAT(c.length, WithinAbs(2 * std::numbers::pi, 0.0));
  CHECK(c.policy.cfl_factor == 0.5);
  CHECK_FALSE(c.policy.dt.has_value());
  CHECK(c.policy.integrator == Integrator::if_rk4);
  CHECK(c.record_every == 10);
  CHECK(c.snapshot_every == 0);
  CHECK(c.monitor_max == 1e6);
  CHECK(c.output_dir == "output");
  CHECK_FALSE(c.oversample_linf);
}

TEST_CASE("config accepts every documented key, comments and blank lines") {
  const std::string text =
      "# full config\n"
      "dim = 3   # trailing comment\n"
      "res = 32\n"
      "\n"
      "length = 6.5\n"
      "nu = 0.25\n"
      "scenario = random_smooth\n"
      "scenario.k = 2\n"
      "scenario.amplitude = 0.75\n"
      "scenario.seed = 17\n"
      "scenario.slope = 3.5\n"
      "dt = 0.002\n"
      "cfl_factor = 0.3\n"
      "integrator = IF-RK2\n"
      "t_max = 0.5\n"
      "monitor_max = 1e4\n"
      "record_every = 3\n"
      "snapshot_every = 7\n"
      "output_dir = out/run1\n"
      "oversample_linf = true\n";
  const SimulationConfig c = load_config(text);
  CHECK(c.dim == 3);
  CHECK(c.res == 32);
  CHECK(c.length == 6.5);
  CHECK(c.nu == 0.25);
  CHECK(c.scenario.get("k", 0) == 2);
  CHECK(c.scenario.get("amplitude", 0) == 0.75);
  CHECK(c.scenario.get("seed", 0) == 17);
  CHECK(c.scenario.get("slope", 0) == 3.5);
  CHECK(c.policy.dt == 0.002);
  CHECK(c.policy.cfl_factor == 0.3);
  CHECK(c.policy.integrator == Integrator::if_rk2);
  CHECK(c.monitor_max == 1e4);
  CHECK(c.record_every == 3);
  CHECK(c.snapshot_every == 7);
  CHECK(c.output_dir == "out/run1");
  CHECK(c.oversample_linf);
  CHECK(config_keys().size() == 18);
}

TEST_CASE("config rejections carry a line number or key") {
  auto error_of = [](const std::string& text, const std::vector<std::string>& over = {}) {
    try {
      (void)load_config(text, over);
    } catch (const ConfigError& e) {
      return std::pair{e.line(), e.key()};
    }
    FAIL("config was accepted: " << text);
    return std::pair{-1, std::string()};
  };
  CHECK(error_of(kMinimal + "nu = -1\n").second == "nu");
  CHECK(error_of(kMinimal + "dim = 3\n") == std::pair{5, std::string("dim")});
  CHECK(error_of(kMinimal + "colour = red\n").first == 5);
  CHECK(error_of("dim = 2\nres 64\n").first == 2);
  CHECK(error_of("dim = 2\n = 4\n").first == 2);
  CHECK(error_of("dim =\n").first == 1);
  CHECK(error_of("res = 64\nscenario = taylor_green\nt_max = 1\n").second == "dim");
  CHECK(error_of("dim = 4\nres = 64\nscenario = taylor_green\nt_max = 1\n") == std::pair{1, std::string("dim")});
  CHECK(error_of("dim = 2\nres = 48\nscenario = taylor_green\nt_max = 1\n").second == "res");
  CHECK(error_of("dim = 2\nres = 4\nscenario = taylor_green\nt_max = 1\n").second == "res");
  CHECK(error_of("dim = two\nres = 64\nscenario = taylor_green\nt_max = 1\n").second == "dim");
  CHECK(error_of(kMinimal + "length = 0\n").second == "length");
  CHECK(error_of(kMinimal + "dt = 0\n").second == "dt");
  CHECK(error_of(kMinimal + "cfl_factor = 1.5\n").second == "cfl_factor");
  CHECK(error_of(kMinimal + "integrator = euler\n").second == "integrator");
  CHECK(error_of(kMinimal + "monitor_max = 0\n").second == "monitor_max");
  CHECK(error_of(kMinimal + "record_every = 0\n").second == "record_every");
  CHECK(error_of(kMinimal + "snapshot_every = -1\n").second == "snapshot_every");
  CHECK(error_of(kMinimal + "oversample_linf = maybe\n").second == "oversample_linf");
  CHECK(error_of(kMinimal + "scenario.k = 0\n").second == "scenario.k");
  CHECK(error_of(kMinimal + "scenario.slope = 2\n").second == "scenario.slope");
  CHECK(error_of(kMinimal + "scenario.seed = -4\n").second == "scenario.seed");
  CHECK(error_of(kMinimal + "scenario.amplitude = nan\n").second == "scenario.amplitude");
  CHECK(error_of("dim = 2\nres = 64\nscenario = vortex\nt_max = 1\n").second == "scenario");
  CHECK(error_of(kMinimal, {"bogus=1"}).second == "bogus");
  CHECK(error_of(kMinimal, {"res"}).first == 0);
}

TEST_CASE("overrides replace file values before validation") {
  const SimulationConfig c = load_config(kMinimal, {"res=32", "nu = 0.5", "scenario=winding_director"});
  CHECK(c.res == 32);
  CHECK(c.nu == 0.5);
  CHECK(c.scenario.name == "winding_director");
  CHECK_NOTHROW(load_config("res = 64\nscenario = taylor_green\nt_max = 1\n", {"dim=2"}));
}

TEST_CASE("time series CSV format") {
  CHECK(format_timeseries({}) ==
        "t,u_l2,grad_d_l2,omega_l2,omega_linf,grad_d_linf,hess_d_l2,energy,dissipation,"
        "monitor_integrand,monitor_accum,sphere_norm_err,sphere_identity_err\n");
  DiagnosticsRecord zero;
  zero.t = 0.5;
  CHECK(format_timeseries(std::vector{zero}) ==
        std::string(kTimeseriesHeader) + "\n0.5,0,0,0,0,0,0,0,0,0,0,0,0\n");

  const fs::path dir = scratch_dir("csv");
  fs::create_directories(dir);
  write_timeseries({}, dir / "empty.csv");
  CHECK(slurp(dir / "empty.csv") == std::string(kTimeseriesHeader) + "\n");

  std::vector<DiagnosticsRecord> h;
  const FluidState s = random_smooth(Grid(2, 16), 4);
  for (int i = 0; i < 3; ++i) {
    DiagnosticsRecord r = diagnose(s);
    r.t = 0.1 * i + 1.0 / 3.0;
    r.monitor_accum = std::exp(i) / 7.0;
    h.push_back(r);
  }
  write_timeseries(h, dir / "h.csv");
  const auto back = read_timeseries(dir / "h.csv");
  REQUIRE(back.size() == h.size());
  for (std::size_t i = 0; i < h.size(); ++i) CHECK(back[i] == h[i]);
  CHECK_THROWS_AS(write_timeseries(h, dir / "missing" / "x.csv"), IoError);
  CHECK_THROWS_AS(read_timeseries(dir / "nope.csv"), IoError);
  CHECK_THROWS_AS(parse_timeseries("t,u\n"), FormatError);
  CHECK_THROWS_AS(parse_timeseries(std::string(kTimeseriesHeader) + "\n1,2\n"), FormatError);
  fs::remove_all(dir);
}

TEST_CASE("snapshot round trip, size formula and format errors") {
  const fs::path dir = scratch_dir("snap");
  fs::create_directories(dir);
  for (int dim : {2, 3}) {
    const Grid g(dim, 8, 3.25);
    FluidState s = random_smooth(g, 6);
    s.set_t(1.0 / 3.0);
    const fs::path p = dir / ("s" + std::to_string(dim) + ".elcf");
    write_snapshot(s, p);
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= 8;
    CHECK(fs::file_size(p) == 5 + 1 + 4 + 16 + (dim + 3) * n * 8);
    CHECK(snapshot_size(dim, 8) == fs::file_size(p));
    const FluidState r = read_snapshot(p);
    CHECK(r.t() == s.t());
    CHECK(r.grid() == s.grid());
    CHECK(max_abs_diff(r.u(), s.u()) == 0.0);
    CHECK(max_abs_diff(r.d(), s.d()) == 0.0);
    CHECK(diagnose(r) == diagnose(s));

    const auto bytes = encode_snapshot(s);
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "ELCF");
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == dim);
    CHECK(bytes[6] == 8);  // res, little-endian
    CHECK(bytes[7] == 0);

    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_snapshot(bad), FormatError);
    bad = bytes;
    bad[4] = 2;
    CHECK_THROWS_AS(decode_snapshot(bad), FormatError);
    bad = bytes;
    bad.resize(bytes.size() - 1);
    CHECK_THROWS_AS(decode_snapshot(bad), FormatError);
    bad.resize(12);
    CHECK_THROWS_AS(decode_snapshot(bad), FormatError);
    bad = bytes;
    bad.push_back(0);
    CHECK_THROWS_AS(decode_snapshot(bad), FormatError);
  }
  CHECK_THROWS_AS(read_snapshot(dir / "missing.elcf"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("run examples") {
  SECTION("winding director accumulates the constant integrand") {
    SimulationConfig c = small("winding_director", 2.0);
    c.policy.dt = 0.05;
    const RunReport r = run(c);
    CHECK(r.halt_reason == HaltReason::t_max_reached);
    CHECK(r.final_time == 2.0);
    CHECK_THAT(r.final_record.monitor_accum, WithinAbs(2.0, 1e-8));
  }
  SECTION("Taylor-Green has a zero 2D monitor") {
    SimulationConfig c = small("taylor_green", 0.5);
    c.monitor_max = 1e-6;
    const RunReport r = run(c);
    CHECK(r.halt_reason == HaltReason::t_max_reached);
    CHECK(r.final_record.monitor_accum == 0.0);
  }
  SECTION("a tiny threshold halts random data early") {
    SimulationConfig c = small("random_smooth", 1.0);
    c.monitor_max = 1e-12;
    const RunReport r = run(c);
    CHECK(r.halt_reason == HaltReason::monitor_exceeded);
    CHECK(r.steps == 1);
    CHECK(r.final_record.monitor_accum > 1e-12);
    CHECK(r.final_time < 1.0);
  }
  SECTION("an unstable step halts with overflow and a complete report") {
    SimulationConfig c = small("random_smooth", 500.0);
    c.scenario.parameters = {{"seed", 3}, {"amplitude", 50.0}};
    c.policy.dt = 5.0;
    const RunReport r = run(c);
    CHECK((r.halt_reason == HaltReason::overflow || r.halt_reason == HaltReason::degenerate_director));
    CHECK_FALSE(r.halt_message.empty());
    CHECK(r.final_time < 500.0);
    CHECK(r.history.back() == r.final_record);
  }
}

TEST_CASE("run records, snapshots and files") {
  const fs::path dir = scratch_dir("run");
  SimulationConfig c = small("random_smooth", 0.1);
  c.policy.dt = 0.01;
  c.record_every = 3;
  c.snapshot_every = 4;
  c.output_dir = dir.string();
  const RunReport r = run(c);
  CHECK(r.steps == 10);
  // records at steps 0, 3, 6, 9 and the final step 10
  REQUIRE(r.history.size() == 5);
  CHECK(r.history[1].t == Catch::Approx(0.03));
  CHECK(r.history.back().t == 0.1);
  for (std::size_t i = 1; i < r.history.size(); ++i) {
    CHECK(r.history[i].monitor_accum >= r.history[i - 1].monitor_accum);
  }
  CHECK(r.timeseries_path == dir / "timeseries.csv");
  CHECK(read_timeseries(r.timeseries_path) == r.history);
  for (const char* name : {"snapshot_00000000.elcf", "snapshot_00000004.elcf", "snapshot_00000008.elcf"}) {
    CHECK(fs::exists(dir / name));
  }
  CHECK_FALSE(fs::exists(dir / "snapshot_00000010.elcf"));
  const FluidState snap = read_snapshot(dir / "snapshot_00000004.elcf");
  CHECK(snap.t() == Catch::Approx(0.04));

  // identical configs give identical CSV text
  const std::string first = slurp(r.timeseries_path);
  (void)run(c);
  CHECK(slurp(dir / "timeseries.csv") == first);
  fs::remove_all(dir);
}

TEST_CASE("SIM_OUTPUT_DIR overrides the configured directory") {
  const fs::path dir = scratch_dir("env");
  SimulationConfig c = small("winding_director", 0.1);
  c.output_dir = "should_not_be_used";
  {
    EnvGuard env(dir.string().c_str());
    CHECK(effective_output_dir(c) == dir.string());
    const RunReport r = run(c);
    CHECK(r.timeseries_path == dir / "timeseries.csv");
    CHECK(fs::exists(dir / "timeseries.csv"));
  }
  CHECK_FALSE(fs::exists("should_not_be_used"));
  EnvGuard unset(nullptr);
  CHECK(effective_output_dir(c) == "should_not_be_used");
  fs::remove_all(dir);
}

TEST_CASE("run surfaces I/O failures with the path") {
  const fs::path file = scratch_dir("blocker");
  std::ofstream(file) << "x";
  SimulationConfig c = small("winding_director", 0.1);
  c.output_dir = (file / "sub").string();
  try {
    (void)run(c);
    FAIL("expected an I/O error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(file.string()) != std::string::npos);
  }
  fs::remove(file);
}
