#pragma once

// Right-hand sides of the coupled flow and the integrating-factor Runge-Kutta
// steppers. Diffusion (nu lap u, lap d) is integrated exactly through the
// factors exp(-nu |k|^2 h) and exp(-|k|^2 h); transport, the director forcing
// and the cubic term |grad d|^2 d are advanced explicitly.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcflow/state.hpp"

namespace lcflow {

enum class Integrator { if_rk2, if_rk4 };

inline std::string_view to_string(Integrator i) {
  return i == Integrator::if_rk2 ? "IF-RK2" : "IF-RK4";
}

inline std::optional<Integrator> parse_integrator(std::string_view s) {
  if (s == "IF-RK2" || s == "if-rk2" || s == "rk2") return Integrator::if_rk2;
  if (s == "IF-RK4" || s == "if-rk4" || s == "rk4") return Integrator::if_rk4;
  return std::nullopt;
}

struct StepPolicy {
  std::optional<double> dt;  ///< fixed step; CFL-adaptive when empty
  double cfl_factor = 0.5;
  double t_max = 1.0;
  Integrator integrator = Integrator::if_rk4;

  void validate() const {
    if (dt && !(*dt > 0.0)) throw RangeError("dt must be positive");
    if (!(cfl_factor > 0.0 && cfl_factor <= 1.0)) throw RangeError("cfl_factor must be in (0, 1]");
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw RangeError("t_max must be finite and >= 0");
  }
};

struct StepOptions {
  Integrator integrator = Integrator::if_rk4;
  /// Hold d fixed and drop its tendency (pure Navier-Stokes with the
  /// director forcing evaluated on the frozen field).
  bool freeze_director = false;
};

namespace detail {

struct SpectralPair {
  Field u;  // dim components
  Field d;  // 3 components
};

// Explicit part of the velocity tendency: P[-(u.grad u) - lap d . grad d],
// products dealiased.
inline Field momentum_nonlinear(const Field& u_hat, const Field& d_hat) {
  const Grid& g = u_hat.grid();
  auto prod = momentum_products(u_hat, d_hat);
  Field total(g, g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    auto t = total.values(i);
    auto a = prod.advection.values(i);
    auto f = prod.forcing.values(i);
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = -(a[x] + f[x]);
  }
  Field out = total.to_spectral();
  dealias_in_place(g, out.all_coeffs());
  project_in_place(g, out.all_coeffs());
  return out;
}

// Explicit part of the director tendency: |grad d|^2 d - u.grad d, dealiased.
inline Field director_nonlinear(const Field& u_hat, const Field& d_hat) {
  const Grid& g = u_hat.grid();
  const int dim = g.dim();
  const std::size_t n = g.points();
  const Field u = u_hat.to_physical();
  const Field d = d_hat.to_physical();
  const auto grad_d = physical_gradients(d_hat);

  std::vector<double> grad2(n, 0.0);
  for (int a = 0; a < dim; ++a) {
    for (int m = 0; m < 3; ++m) {
      auto v = grad_d[a].values(m);
      for (std::size_t x = 0; x < n; ++x) grad2[x] += v[x] * v[x];
    }
  }
  Field total(g, 3);
  for (int m = 0; m < 3; ++m) {
    auto t = total.values(m);
    auto dm = d.values(m);
    for (std::size_t x = 0; x < n; ++x) t[x] = grad2[x] * dm[x];
    for (int a = 0; a < dim; ++a) {
      auto ua = u.values(a);
      auto da = grad_d[a].values(m);
      for (std::size_t x = 0; x < n; ++x) t[x] -= ua[x] * da[x];
    }
  }
  Field out = total.to_spectral();
  dealias_in_place(g, out.all_coeffs());
  return out;
}

// Diagonal integrating factors exp(-rate |k|^2 h).
inline std::vector<double> decay_factors(const Grid& g, double rate, double h) {
  const auto& k2 = g.k_squared();
  std::vector<double> e(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) e[i] = std::exp(-rate * k2[i] * h);
  return e;
}

// out = e * (a + s * b) component-wise; b may be null.
inline Field combine(const std::vector<double>& e, const Field& a, double s, const Field* b) {
  Field out(a.grid(), a.components(), Space::spectral);
  const std::size_t n = a.grid().modes();
  for (int c = 0; c < a.components(); ++c) {
    auto va = a.coeffs(c);
    auto vo = out.coeffs(c);
    if (b != nullptr) {
      auto vb = b->coeffs(c);
      for (std::size_t i = 0; i < n; ++i) vo[i] = e[i] * (va[i] + s * vb[i]);
    } else {
      for (std::size_t i = 0; i < n; ++i) vo[i] = e[i] * va[i];
    }
  }
  return out;
}

// acc += s * e * b; e may be null (identity).
inline void accumulate(Field& acc, double s, const std::vector<double>* e, const Field& b) {
  const std::size_t n = acc.grid().modes();
  for (int c = 0; c < acc.components(); ++c) {
    auto va = acc.coeffs(c);
    auto vb = b.coeffs(c);
    if (e != nullptr) {
      for (std::size_t i = 0; i < n; ++i) va[i] += (s * (*e)[i]) * vb[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) va[i] += s * vb[i];
    }
  }
}

inline SpectralPair nonlinear(const SpectralPair& y, bool freeze_director) {
  SpectralPair k{momentum_nonlinear(y.u, y.d), Field(y.d.grid(), 3, Space::spectral)};
  if (!freeze_director) k.d = director_nonlinear(y.u, y.d);
  return k;
}

inline void check_finite(const FluidState& s) {
  for (const Field* f : {&s.u(), &s.d()}) {
    for (double v : f->all_values()) {
      if (!std::isfinite(v)) {
        throw NumericalOverflowError("non-finite value at t=" + std::to_string(s.t()) +
                                     " (suspected blow-up or under-resolution)");
      }
    }
  }
}

}  // namespace detail

/// Full velocity tendency P[-u.grad u - lap d . grad d] + nu lap u.
inline Field momentum_rhs(const FluidState& s, const PhysicsParams& params) {
  params.validate();
  const Field u_hat = s.u().to_spectral();
  Field out = detail::momentum_nonlinear(u_hat, s.d().to_spectral());
  const auto& k2 = s.grid().k_squared();
  const std::size_t n = s.grid().modes();
  for (int c = 0; c < out.components(); ++c) {
    auto o = out.coeffs(c);
    auto uh = u_hat.coeffs(c);
    for (std::size_t i = 0; i < n; ++i) o[i] -= params.nu * k2[i] * uh[i];
  }
  return out.to_physical();
}

/// Full director tendency lap d + |grad d|^2 d - u.grad d.
inline Field director_rhs(const FluidState& s) {
  const Field d_hat = s.d().to_spectral();
  Field out = detail::director_nonlinear(s.u().to_spectral(), d_hat);
  const auto& k2 = s.grid().k_squared();
  const std::size_t n = s.grid().modes();
  for (int c = 0; c < 3; ++c) {
    auto o = out.coeffs(c);
    auto dh = d_hat.coeffs(c);
    for (std::size_t i = 0; i < n; ++i) o[i] -= k2[i] * dh[i];
  }
  return out.to_physical();
}

/// Advance the state by dt, renormalize the director, and check for
/// non-finite values.
inline FluidState step(const FluidState& s, const PhysicsParams& params, double dt,
                       const StepOptions& opts = {}) {
  params.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw RangeError("step: dt must be positive");
  const Grid& g = s.grid();
  const detail::SpectralPair y0{s.u().to_spectral(), s.d().to_spectral()};
  const double d_rate = opts.freeze_director ? 0.0 : 1.0;

  detail::SpectralPair y1{Field(g, g.dim(), Space::spectral), Field(g, 3, Space::spectral)};
  if (opts.integrator == Integrator::if_rk2) {
    const auto eu = detail::decay_factors(g, params.nu, dt);
    const auto ed = detail::decay_factors(g, d_rate, dt);
    const auto k1 = detail::nonlinear(y0, opts.freeze_director);
    const detail::SpectralPair a{detail::combine(eu, y0.u, dt, &k1.u),
                                 detail::combine(ed, y0.d, dt, &k1.d)};
    const auto k2 = detail::nonlinear(a, opts.freeze_director);
    y1.u = detail::combine(eu, y0.u, 0.0, nullptr);
    y1.d = detail::combine(ed, y0.d, 0.0, nullptr);
    detail::accumulate(y1.u, 0.5 * dt, &eu, k1.u);
    detail::accumulate(y1.u, 0.5 * dt, nullptr, k2.u);
    detail::accumulate(y1.d, 0.5 * dt, &ed, k1.d);
    detail::accumulate(y1.d, 0.5 * dt, nullptr, k2.d);
  } else {
    const auto eu = detail::decay_factors(g, params.nu, dt);
    const auto ed = detail::decay_factors(g, d_rate, dt);
    const auto eu2 = detail::decay_factors(g, params.nu, 0.5 * dt);
    const auto ed2 = detail::decay_factors(g, d_rate, 0.5 * dt);

    const auto k1 = detail::nonlinear(y0, opts.freeze_director);
    const detail::SpectralPair a{detail::combine(eu2, y0.u, 0.5 * dt, &k1.u),
                                 detail::combine(ed2, y0.d, 0.5 * dt, &k1.d)};
    const auto k2 = detail::nonlinear(a, opts.freeze_director);

    detail::SpectralPair b{detail::combine(eu2, y0.u, 0.0, nullptr),
                           detail::combine(ed2, y0.d, 0.0, nullptr)};
    detail::accumulate(b.u, 0.5 * dt, nullptr, k2.u);
    detail::accumulate(b.d, 0.5 * dt, nullptr, k2.d);
    const auto k3 = detail::nonlinear(b, opts.freeze_director);

    detail::SpectralPair c{detail::combine(eu, y0.u, 0.0, nullptr),
                           detail::combine(ed, y0.d, 0.0, nullptr)};
    detail::accumulate(c.u, dt, &eu2, k3.u);
    detail::accumulate(c.d, dt, &ed2, k3.d);
    const auto k4 = detail::nonlinear(c, opts.freeze_director);

    y1.u = detail::combine(eu, y0.u, 0.0, nullptr);
    y1.d = detail::combine(ed, y0.d, 0.0, nullptr);
    const double w = dt / 6.0;
    detail::accumulate(y1.u, w, &eu, k1.u);
    detail::accumulate(y1.u, 2.0 * w, &eu2, k2.u);
    detail::accumulate(y1.u, 2.0 * w, &eu2, k3.u);
    detail::accumulate(y1.u, w, nullptr, k4.u);
    detail::accumulate(y1.d, w, &ed, k1.d);
    detail::accumulate(y1.d, 2.0 * w, &ed2, k2.d);
    detail::accumulate(y1.d, 2.0 * w, &ed2, k3.d);
    detail::accumulate(y1.d, w, nullptr, k4.d);
  }

  FluidState next(y1.u.to_physical(), opts.freeze_director ? s.d() : y1.d.to_physical(),
                  s.t() + dt);
  detail::check_finite(next);
  if (opts.freeze_director) return next;
  return normalize_director(next);
}

/// max over grid points of the Frobenius norm of grad d.
inline double grad_director_linf(const FluidState& s) {
  const auto grad_d = detail::physical_gradients(s.d().to_spectral());
  std::vector<double> g2(s.grid().points(), 0.0);
  for (const auto& ga : grad_d) {
    for (int c = 0; c < 3; ++c) {
      auto v = ga.values(c);
      for (std::size_t x = 0; x < g2.size(); ++x) g2[x] += v[x] * v[x];
    }
  }
  return std::sqrt(*std::max_element(g2.begin(), g2.end()));
}

/// CFL step cfl * dx / max(|u|_inf, |grad d|_inf, 1), capped by the time
/// remaining to t_max. A fixed dt in the policy is returned (also capped).
inline double suggest_dt(const FluidState& s, const StepPolicy& policy) {
  policy.validate();
  const double remaining = std::max(policy.t_max - s.t(), 0.0);
  if (policy.dt) return std::min(*policy.dt, remaining);
  const double speed = std::max({max_magnitude(s.u()), grad_director_linf(s), 1.0});
  return std::min(policy.cfl_factor * s.grid().spacing() / speed, remaining);
}

}  // namespace lcflow
