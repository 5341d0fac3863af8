#include <catch_amalgamated.hpp>

#include "lcflow/lcflow.hpp"
#include "oracles.hpp"

using namespace lcflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using P = std::array<double, 3>;

namespace {

FluidState shifted(const FluidState& s, int shift) {
  const Grid& g = s.grid();
  const std::size_t res = static_cast<std::size_t>(g.res());
  FluidState out = s;
  // roll along the first axis by `shift` points
  const std::size_t stride = g.points() / res;
  for (Field* f : {&out.u(), &out.d()}) {
    const Field& src = (f == &out.u()) ? s.u() : s.d();
    for (int c = 0; c < f->components(); ++c) {
      auto in = src.values(c);
      auto o = f->values(c);
      for (std::size_t i = 0; i < in.size(); ++i) {
        const std::size_t row = i / stride;
        const std::size_t col = i % stride;
        o[((row + shift) % res) * stride + col] = in[i];
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("blowup_integrand examples") {
  const Grid g2(2, 32);
  CHECK_THAT(blowup_integrand(winding_director(g2, 1)), WithinAbs(1.0, 1e-12));
  CHECK(blowup_integrand(taylor_green(g2)) == 0.0);
  const Grid g3(3, 16);
  const Field u = sample(g3, 3, [](const P& x, int c) { return c == 2 ? std::sin(x[0]) : 0.0; });
  const Field d = sample(g3, 3, [](const P& x, int c) {
    return c == 0 ? std::cos(x[0]) : c == 1 ? std::sin(x[0]) : 0.0;
  });
  CHECK_THAT(blowup_integrand(FluidState(u, d, 0.0)), WithinAbs(frozen::frozen_3d_integrand, 1e-10));
}

TEST_CASE("property: the 2D integrand ignores the velocity") {
  const Grid g(2, 16);
  for (int seed = 0; seed < 3; ++seed) {
    const FluidState s = random_smooth(g, seed);
    FluidState t = s;
    for (double& v : t.u().all_values()) v = 3.0 * v + 0.5;
    CHECK(blowup_integrand(s) == blowup_integrand(t));
  }
}

TEST_CASE("oversampled L-infinity norms agree on resolved tones and never fall below collocation") {
  const Grid g(2, 16);
  const FluidState w = winding_director(g, 1);
  CHECK_THAT(blowup_integrand(w, true), WithinAbs(1.0, 1e-12));
  for (int seed = 0; seed < 3; ++seed) {
    const FluidState s = random_smooth(g, seed);
    CHECK(director_gradient_linf(s, true) >= director_gradient_linf(s, false) - 1e-12);
    CHECK(vorticity_linf(s, true) >= vorticity_linf(s, false) - 1e-12);
  }
}

TEST_CASE("accumulate_monitor examples") {
  DiagnosticsRecord prev;
  prev.monitor_integrand = 1.0;
  // constant integrand 1 over [0, 2] with an irregular partition
  double b = 0.0;
  for (double dt : {0.3, 0.7, 0.25, 0.75}) {
    prev.monitor_accum = b;
    b = accumulate_monitor(prev, 1.0, dt);
  }
  CHECK(b == 2.0);

  // integrand t on [0, 1]
  DiagnosticsRecord r;
  for (int i = 0; i < 1000; ++i) {
    r.monitor_accum = accumulate_monitor(r, (i + 1) * 1e-3, 1e-3);
    r.monitor_integrand = (i + 1) * 1e-3;
  }
  CHECK_THAT(r.monitor_accum, WithinAbs(0.5, 1e-6));

  prev.monitor_accum = 0.75;
  CHECK(accumulate_monitor(prev, 5.0, 0.0) == 0.75);
  CHECK_THROWS_AS(accumulate_monitor(prev, 1.0, -1e-3), RangeError);
}

TEST_CASE("energy_and_dissipation examples") {
  const Grid g(2, 32);
  const auto z = energy_and_dissipation(FluidState(Field(g, 2), Field(g, 3), 0.0));
  CHECK(z.energy == 0.0);
  CHECK(z.dissipation == 0.0);
  const auto w = energy_and_dissipation(winding_director(g, 1));
  CHECK_THAT(w.energy, WithinRel(frozen::winding_energy, 1e-12));
  CHECK_THAT(w.dissipation, WithinAbs(0.0, 1e-20));
  const auto tg = energy_and_dissipation(taylor_green(g));
  CHECK_THAT(tg.energy, WithinRel(frozen::tg_energy0, 1e-12));
  CHECK_THAT(tg.dissipation, WithinRel(frozen::tg_dissipation0, 1e-12));
  // nu enters the viscous part only
  CHECK_THAT(energy_and_dissipation(taylor_green(g), 0.5).dissipation,
             WithinRel(0.5 * frozen::tg_dissipation0, 1e-12));
}

TEST_CASE("controlled_norms examples") {
  const Grid g(2, 32);
  const auto z = controlled_norms(FluidState(Field(g, 2), Field(g, 3), 0.0));
  CHECK(z.omega_l2 == 0.0);
  CHECK(z.hess_d_l2 == 0.0);
  const auto w = controlled_norms(winding_director(g, 1));
  CHECK_THAT(w.omega_l2, WithinAbs(0.0, 1e-10));
  CHECK_THAT(w.hess_d_l2, WithinAbs(frozen::winding_lap_l2, 1e-10));
  const auto tg = controlled_norms(taylor_green(g));
  CHECK_THAT(tg.omega_l2, WithinAbs(frozen::tg_omega_l2, 1e-10));
  CHECK_THAT(tg.hess_d_l2, WithinAbs(0.0, 1e-10));
}

TEST_CASE("diagnose fills every column consistently") {
  const Grid g(2, 32);
  const FluidState s = random_smooth(g, 3);
  const DiagnosticsRecord r = diagnose(s);
  const auto ed = energy_and_dissipation(s);
  const auto norms = controlled_norms(s);
  const auto cr = constraint_residual(s);
  CHECK(r.t == s.t());
  CHECK(r.energy == ed.energy);
  CHECK(r.dissipation == ed.dissipation);
  CHECK(r.omega_l2 == norms.omega_l2);
  CHECK(r.hess_d_l2 == norms.hess_d_l2);
  CHECK(r.sphere_norm_err == cr.norm_error);
  CHECK(r.sphere_identity_err == cr.identity_error);
  CHECK(r.monitor_integrand == blowup_integrand(s));
  CHECK_THAT(r.u_l2 * r.u_l2 + r.grad_d_l2 * r.grad_d_l2, WithinRel(r.energy, 1e-12));
  for (double v : {r.u_l2, r.grad_d_l2, r.omega_l2, r.omega_linf, r.grad_d_linf, r.hess_d_l2, r.energy,
                   r.dissipation, r.monitor_integrand, r.sphere_norm_err, r.sphere_identity_err}) {
    CHECK(v >= 0.0);
  }
}

TEST_CASE("property: norms are invariant under integer grid shifts") {
  for (int dim : {2, 3}) {
    const Grid g(dim, 16);
    const FluidState s = random_smooth(g, 21);
    for (int shift : {1, 5}) {
      const DiagnosticsRecord a = diagnose(s);
      const DiagnosticsRecord b = diagnose(shifted(s, shift));
      CHECK_THAT(b.u_l2, WithinAbs(a.u_l2, 1e-12));
      CHECK_THAT(b.grad_d_l2, WithinAbs(a.grad_d_l2, 1e-12));
      CHECK_THAT(b.omega_l2, WithinAbs(a.omega_l2, 1e-12));
      CHECK_THAT(b.omega_linf, WithinAbs(a.omega_linf, 1e-12));
      CHECK_THAT(b.grad_d_linf, WithinAbs(a.grad_d_linf, 1e-12));
      CHECK_THAT(b.hess_d_l2, WithinAbs(a.hess_d_l2, 1e-12));
      CHECK_THAT(b.energy, WithinAbs(a.energy, 1e-12 * a.energy));
      CHECK_THAT(b.dissipation, WithinAbs(a.dissipation, 1e-12 * a.dissipation));
      CHECK_THAT(b.monitor_integrand, WithinAbs(a.monitor_integrand, 1e-12));
    }
  }
}

TEST_CASE("energy_residual examples") {
  DiagnosticsRecord r;
  r.energy = 5.0;
  CHECK(energy_residual(std::vector{r}) == 0.0);

  // exact Taylor-Green law sampled on a grid of times: E = E0 e^{-4t}, D = 4E
  std::vector<DiagnosticsRecord> h;
  for (int i = 0; i <= 1000; ++i) {
    DiagnosticsRecord x;
    x.t = i * 1e-3;
    x.energy = frozen::tg_energy0 * std::exp(-4 * x.t);
    x.dissipation = 4 * x.energy;
    h.push_back(x);
  }
  CHECK(energy_residual(h) < 1e-4);

  std::swap(h[3], h[4]);
  CHECK_THROWS_AS(energy_residual(h), RangeError);
}

TEST_CASE("energy residual of short simulated runs") {
  const Grid g(2, 32);
  std::vector<DiagnosticsRecord> w;
  std::vector<DiagnosticsRecord> tg;
  FluidState a = winding_director(g, 1);
  FluidState b = taylor_green(g);
  for (int i = 0; i <= 100; ++i) {
    if (i > 0) {
      a = step(a, {}, 1e-2);
      b = step(b, {}, 1e-2);
    }
    w.push_back(diagnose(a));
    tg.push_back(diagnose(b));
  }
  CHECK(energy_residual(w) < 1e-10);
  // trapezoid error in the dissipation integral dominates: O(dt^2)
  CHECK(energy_residual(tg) < 1e-3);
  // the recorded energy follows the closed form
  CHECK_THAT(tg.back().energy, WithinRel(frozen::tg_energy0 * std::exp(-4.0), 1e-9));
}

TEST_CASE("gronwall_envelope examples") {
  std::vector<DiagnosticsRecord> flat(5);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    flat[i].t = 0.1 * i;
    flat[i].hess_d_l2 = frozen::winding_lap_l2;
    flat[i].monitor_accum = 0.1 * i;
  }
  CHECK(gronwall_envelope(flat) == 0.0);

  std::vector<DiagnosticsRecord> decay(5);
  for (std::size_t i = 0; i < decay.size(); ++i) {
    decay[i].t = 0.1 * i;
    decay[i].omega_l2 = std::exp(-0.2 * i);
  }
  CHECK(gronwall_envelope(decay) == 0.0);

  std::vector<DiagnosticsRecord> synthetic;
  for (int i = 0; i <= 50; ++i) {
    DiagnosticsRecord r;
    r.t = 0.02 * i;
    r.monitor_accum = std::sin(r.t) + r.t;
    r.omega_l2 = std::sqrt(7.0 * std::exp(2.0 * r.monitor_accum));
    synthetic.push_back(r);
  }
  CHECK_THAT(gronwall_envelope(synthetic), WithinAbs(2.0, 1e-9));

  // growth with B = 0 is undefined
  std::vector<DiagnosticsRecord> bad = decay;
  bad[3].omega_l2 = 5.0;
  CHECK_THROWS_AS(gronwall_envelope(bad), EnvelopeUndefinedError);
  // growth from zero initial norms is undefined too
  std::vector<DiagnosticsRecord> from_zero(3);
  for (std::size_t i = 0; i < 3; ++i) {
    from_zero[i].t = i;
    from_zero[i].monitor_accum = i;
  }
  from_zero[2].omega_l2 = 1.0;
  CHECK_THROWS_AS(gronwall_envelope(from_zero), EnvelopeUndefinedError);
}

TEST_CASE("Taylor-Green energy residual at res 64, dt 1e-3 up to t = 1") {
  const Grid g(2, 64);
  std::vector<DiagnosticsRecord> h;
  FluidState s = taylor_green(g);
  h.push_back(diagnose(s));
  for (int i = 0; i < 1000; ++i) {
    s = step(s, {}, 1e-3);
    h.push_back(diagnose(s));
  }
  CHECK(energy_residual(h) < 1e-4);
}
