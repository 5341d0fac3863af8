// Recompute every frozen constant from the independent oracles.

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using oracle::Point;

TEST_CASE("quadrature oracle integrates known trigonometric integrals") {
  CHECK_THAT(oracle::integrate([](const Point&) { return 1.0; }, 2), WithinRel(4 * oracle::pi * oracle::pi, 1e-12));
  CHECK_THAT(oracle::integrate([](const Point& x) { return std::sin(x[0]) * std::sin(x[0]); }, 2),
             WithinRel(2 * oracle::pi * oracle::pi, 1e-13));
  CHECK_THAT(oracle::integrate([](const Point& x) { return std::cos(x[2]) * std::cos(x[2]); }, 3, 12),
             WithinRel(4 * oracle::pi * oracle::pi * oracle::pi, 1e-12));
}

TEST_CASE("Taylor-Green initial energy") {
  const double e = oracle::integrate(
      [](const Point& x) { return oracle::tg_u1(x) * oracle::tg_u1(x) + oracle::tg_u2(x) * oracle::tg_u2(x); }, 2);
  CHECK_THAT(e, WithinRel(frozen::tg_energy0, 1e-13));
}

TEST_CASE("Taylor-Green vorticity L2 norm from differenced velocity") {
  auto omega = [](const Point& x) {
    return oracle::diff(oracle::tg_u2, x, 0) - oracle::diff(oracle::tg_u1, x, 1);
  };
  const double n2 = oracle::integrate([&](const Point& x) { return omega(x) * omega(x); }, 2, 16);
  CHECK_THAT(std::sqrt(n2), WithinRel(frozen::tg_omega_l2, 1e-9));
}

TEST_CASE("Taylor-Green dissipation 2 int |grad u|^2") {
  auto integrand = [](const Point& x) {
    double s = 0.0;
    for (auto f : {oracle::tg_u1, oracle::tg_u2}) {
      for (int a = 0; a < 2; ++a) {
        const double g = oracle::diff(f, x, a);
        s += g * g;
      }
    }
    return 2.0 * s;
  };
  CHECK_THAT(oracle::integrate(integrand, 2, 16), WithinRel(frozen::tg_dissipation0, 1e-9));
}

TEST_CASE("winding director energy and Laplacian norm") {
  auto d1 = [](const Point& x) { return std::cos(x[0]); };
  auto d2 = [](const Point& x) { return std::sin(x[0]); };
  auto grad2 = [&](const Point& x) {
    const double a = oracle::diff(d1, x, 0);
    const double b = oracle::diff(d2, x, 0);
    return a * a + b * b;
  };
  CHECK_THAT(oracle::integrate(grad2, 2, 16), WithinRel(frozen::winding_energy, 1e-9));
  auto lap2 = [&](const Point& x) {
    const double a = oracle::diff2(d1, x, 0) + oracle::diff2(d1, x, 1);
    const double b = oracle::diff2(d2, x, 0) + oracle::diff2(d2, x, 1);
    return a * a + b * b;
  };
  CHECK_THAT(std::sqrt(oracle::integrate(lap2, 2, 16)), WithinRel(frozen::winding_lap_l2, 1e-6));
}

TEST_CASE("3D frozen monitor integrand for u=(0,0,sin x1), d=(cos x1, sin x1, 0)") {
  auto u3 = [](const Point& x) { return std::sin(x[0]); };
  auto d1 = [](const Point& x) { return std::cos(x[0]); };
  auto d2 = [](const Point& x) { return std::sin(x[0]); };
  double omega_max = 0.0;
  double grad_max = 0.0;
  for (int i = 0; i < 64; ++i) {
    const Point x{2 * oracle::pi * i / 64, 0.3, 1.1};
    // curl (0,0,u3) = (d2 u3, -d1 u3, 0)
    const double w1 = oracle::diff(u3, x, 1);
    const double w2 = -oracle::diff(u3, x, 0);
    omega_max = std::max(omega_max, std::hypot(w1, w2));
    const double a = oracle::diff(d1, x, 0);
    const double b = oracle::diff(d2, x, 0);
    grad_max = std::max(grad_max, a * a + b * b);
  }
  CHECK_THAT(omega_max + grad_max, WithinAbs(frozen::frozen_3d_integrand, 1e-9));
}

TEST_CASE("Taylor-Green pressure sign by substitution into the momentum equation") {
  // Steady part: u.grad u + grad p = 0 must hold for p = +(cos2x1 + cos2x2)/4.
  for (const Point x : {Point{0.3, 1.7, 0}, Point{2.2, 0.4, 0}, Point{4.0, 5.5, 0}}) {
    const double u1 = oracle::tg_u1(x);
    const double u2 = oracle::tg_u2(x);
    const double adv1 = u1 * oracle::diff(oracle::tg_u1, x, 0) + u2 * oracle::diff(oracle::tg_u1, x, 1);
    const double adv2 = u1 * oracle::diff(oracle::tg_u2, x, 0) + u2 * oracle::diff(oracle::tg_u2, x, 1);
    CHECK_THAT(adv1 + oracle::diff(oracle::tg_pressure, x, 0), WithinAbs(0.0, 1e-10));
    CHECK_THAT(adv2 + oracle::diff(oracle::tg_pressure, x, 1), WithinAbs(0.0, 1e-10));
    // the opposite sign leaves twice the advection behind
    CHECK(std::abs(adv1 - oracle::diff(oracle::tg_pressure, x, 0)) > 1e-3);
  }
}

TEST_CASE("angle heat flow solves d_t = Laplacian d + |grad d|^2 d with u = 0") {
  for (const double t : {0.0, 0.4, 1.0}) {
    for (const Point x : {Point{0.3, 1.0, 0}, Point{2.9, 0.0, 0}, Point{5.1, 3.0, 0}}) {
      for (int m = 0; m < 2; ++m) {
        auto dm = [m](const Point& y, double s) {
          const double p = oracle::angle(y, s);
          return m == 0 ? std::cos(p) : std::sin(p);
        };
        const double h = 1e-3;
        const double dt = (45 * (dm(x, t + h) - dm(x, t - h)) - 9 * (dm(x, t + 2 * h) - dm(x, t - 2 * h)) +
                           (dm(x, t + 3 * h) - dm(x, t - 3 * h))) / (60 * h);
        auto at_t = [&](const Point& y) { return dm(y, t); };
        auto c0 = [&](const Point& y) { return std::cos(oracle::angle(y, t)); };
        auto c1 = [&](const Point& y) { return std::sin(oracle::angle(y, t)); };
        const double g0 = oracle::diff(c0, x, 0);
        const double g1 = oracle::diff(c1, x, 0);
        const double rhs = oracle::diff2(at_t, x, 0) + (g0 * g0 + g1 * g1) * at_t(x);
        CHECK_THAT(dt - rhs, WithinAbs(0.0, 1e-6));
      }
    }
  }
}
