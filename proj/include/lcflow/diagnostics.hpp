#pragma once

// Norms and functionals monitored along a run: the blow-up integrand and its
// running time integral, the controlled L2 norms of vorticity and Hessian of
// the director, the energy law, and a fitted Gronwall constant.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lcflow/dynamics.hpp"

namespace lcflow {

struct DiagnosticsRecord {
  double t = 0.0;
  double u_l2 = 0.0;
  double grad_d_l2 = 0.0;
  double omega_l2 = 0.0;
  double omega_linf = 0.0;
  double grad_d_linf = 0.0;
  double hess_d_l2 = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double monitor_integrand = 0.0;
  double monitor_accum = 0.0;
  double sphere_norm_err = 0.0;
  double sphere_identity_err = 0.0;

  friend bool operator==(const DiagnosticsRecord&, const DiagnosticsRecord&) = default;
};

struct DiagnosticsOptions {
  double nu = 1.0;
  /// Evaluate L-infinity norms on a 2x zero-padded grid instead of the
  /// collocation points.
  bool oversample_linf = false;
};

namespace detail {

// Spectral field -> physical samples on a grid with twice the resolution.
// Nyquist modes are dropped.
inline Field zero_pad_2x(const Field& f_hat) {
  const Grid& g = f_hat.grid();
  const Grid fine(g.dim(), 2 * g.res(), g.length());
  Field out(fine, f_hat.components(), Space::spectral);
  const int half = g.res() / 2;
  for (std::size_t i = 0; i < g.modes(); ++i) {
    std::array<int, 3> m{0, 0, 0};
    bool nyquist = false;
    for (int a = 0; a < g.dim(); ++a) {
      m[a] = g.mode_numbers(a)[i];
      if (std::abs(m[a]) == half) nyquist = true;
    }
    if (nyquist) continue;
    const std::size_t j = fine.mode_index(m);
    for (int c = 0; c < f_hat.components(); ++c) out.coeffs(c)[j] = f_hat.coeffs(c)[i];
  }
  return out.to_physical();
}

// max over points of the Euclidean norm across all components of all fields.
inline double max_pointwise_norm(const std::vector<Field>& fields, bool oversample) {
  std::vector<Field> phys;
  phys.reserve(fields.size());
  for (const auto& f : fields) {
    phys.push_back(oversample ? zero_pad_2x(f.to_spectral()) : f.to_physical());
  }
  const std::size_t n = phys.front().grid().points();
  std::vector<double> sq(n, 0.0);
  for (const auto& f : phys) {
    for (int c = 0; c < f.components(); ++c) {
      auto v = f.values(c);
      for (std::size_t x = 0; x < n; ++x) sq[x] += v[x] * v[x];
    }
  }
  return std::sqrt(*std::max_element(sq.begin(), sq.end()));
}

inline std::vector<Field> director_gradients(const FluidState& s) {
  const Field d_hat = s.d().to_spectral();
  std::vector<Field> g;
  for (int a = 0; a < s.grid().dim(); ++a) g.push_back(gradient(d_hat, a));
  return g;
}

}  // namespace detail

/// Pointwise maximum of |omega| (scalar in 2D, Euclidean norm in 3D).
inline double vorticity_linf(const FluidState& s, bool oversample = false) {
  return detail::max_pointwise_norm({curl(s.u())}, oversample);
}

/// Pointwise maximum of the Frobenius norm of grad d.
inline double director_gradient_linf(const FluidState& s, bool oversample = false) {
  return detail::max_pointwise_norm(detail::director_gradients(s), oversample);
}

/// |omega|_inf + |grad d|_inf^2 in 3D, |grad d|_inf^2 in 2D.
inline double blowup_integrand(const FluidState& s, bool oversample = false) {
  const double g = director_gradient_linf(s, oversample);
  if (s.grid().dim() == 2) return g * g;
  return vorticity_linf(s, oversample) + g * g;
}

/// Trapezoidal update of the monitor integral from the previous record.
inline double accumulate_monitor(const DiagnosticsRecord& prev, double curr_integrand, double dt) {
  if (!(dt >= 0.0)) throw RangeError("accumulate_monitor: dt must be non-negative");
  return prev.monitor_accum + dt * 0.5 * (prev.monitor_integrand + curr_integrand);
}

struct EnergyDissipation {
  double energy = 0.0;       ///< integral of |u|^2 + |grad d|^2
  double dissipation = 0.0;  ///< 2 * integral of nu |grad u|^2 + |lap d + |grad d|^2 d|^2
};

inline EnergyDissipation energy_and_dissipation(const FluidState& s, double nu = 1.0) {
  const Grid& g = s.grid();
  const std::size_t n = g.points();
  const Field u_hat = s.u().to_spectral();
  const Field d_hat = s.d().to_spectral();

  EnergyDissipation r;
  r.energy = integral_of_square(s.u());
  double grad_u2 = 0.0;
  std::vector<double> grad_d2(n, 0.0);
  for (int a = 0; a < g.dim(); ++a) {
    grad_u2 += integral_of_square(gradient(u_hat, a));
    const Field gd = gradient(d_hat, a).to_physical();
    for (int m = 0; m < 3; ++m) {
      auto v = gd.values(m);
      for (std::size_t x = 0; x < n; ++x) grad_d2[x] += v[x] * v[x];
    }
  }
  double grad_d_int = 0.0;
  for (double v : grad_d2) grad_d_int += v;
  r.energy += grad_d_int * g.cell_volume();

  const Field lap_d = laplacian(d_hat).to_physical();
  double tension = 0.0;
  for (int m = 0; m < 3; ++m) {
    auto lap = lap_d.values(m);
    auto dm = s.d().values(m);
    for (std::size_t x = 0; x < n; ++x) {
      const double t = lap[x] + grad_d2[x] * dm[x];
      tension += t * t;
    }
  }
  r.dissipation = 2.0 * (nu * grad_u2 + tension * g.cell_volume());
  return r;
}

struct ControlledNorms {
  double omega_l2 = 0.0;
  double hess_d_l2 = 0.0;
};

/// (|omega|_L2, |grad^2 d|_L2); the Hessian norm is evaluated as |lap d|_L2,
/// which is equal on the torus.
inline ControlledNorms controlled_norms(const FluidState& s) {
  return {l2_norm(curl(s.u())), l2_norm(laplacian(s.d()))};
}

/// L2 norm of the full second-derivative tensor of d, assembled entry by
/// entry. Used to check it against |lap d|_L2.
inline double hessian_l2(const Field& d) {
  const Field d_hat = d.to_spectral();
  double acc = 0.0;
  for (int a = 0; a < d.grid().dim(); ++a) {
    for (int b = 0; b < d.grid().dim(); ++b) {
      acc += integral_of_square(second_derivative(d_hat, a, b));
    }
  }
  return std::sqrt(acc);
}

/// Every monitored quantity at the current state. monitor_accum is left at
/// zero; the caller owns the time integration.
inline DiagnosticsRecord diagnose(const FluidState& s, const DiagnosticsOptions& opts = {}) {
  DiagnosticsRecord r;
  r.t = s.t();
  const auto ed = energy_and_dissipation(s, opts.nu);
  const auto norms = controlled_norms(s);
  r.u_l2 = l2_norm(s.u());
  r.grad_d_l2 = 0.0;
  for (const auto& gd : detail::director_gradients(s)) r.grad_d_l2 += integral_of_square(gd);
  r.grad_d_l2 = std::sqrt(r.grad_d_l2);
  r.omega_l2 = norms.omega_l2;
  r.omega_linf = vorticity_linf(s, opts.oversample_linf);
  r.grad_d_linf = director_gradient_linf(s, opts.oversample_linf);
  r.hess_d_l2 = norms.hess_d_l2;
  r.energy = ed.energy;
  r.dissipation = ed.dissipation;
  r.monitor_integrand = s.grid().dim() == 2 ? r.grad_d_linf * r.grad_d_linf
                                            : r.omega_linf + r.grad_d_linf * r.grad_d_linf;
  const auto cr = constraint_residual(s);
  r.sphere_norm_err = cr.norm_error;
  r.sphere_identity_err = cr.identity_error;
  return r;
}

namespace detail {

inline void check_time_order(std::span<const DiagnosticsRecord> history) {
  if (history.empty()) throw RangeError("history is empty");
  for (std::size_t i = 1; i < history.size(); ++i) {
    if (history[i].t < history[i - 1].t) {
      throw RangeError("history times are not ordered at record " + std::to_string(i));
    }
  }
}

}  // namespace detail

/// max_t |E(t) + int_0^t D - E(0)| / max(E(0), 1), with the dissipation
/// integral taken by the trapezoid rule over the records.
inline double energy_residual(std::span<const DiagnosticsRecord> history) {
  detail::check_time_order(history);
  const double e0 = history.front().energy;
  const double scale = std::max(e0, 1.0);
  double dissipated = 0.0;
  double worst = 0.0;
  for (std::size_t i = 1; i < history.size(); ++i) {
    const double h = history[i].t - history[i - 1].t;
    dissipated += 0.5 * h * (history[i].dissipation + history[i - 1].dissipation);
    worst = std::max(worst, std::abs(history[i].energy + dissipated - e0) / scale);
  }
  return worst;
}

/// Relative growth of the controlled norms below which they count as
/// non-increasing (absorbs round-off in stationary runs).
inline constexpr double kEnvelopeGrowthTolerance = 1e-9;

/// Smallest C >= 0 with |omega(t)|^2 + |lap d(t)|^2 <= (same at t=0) *
/// exp(C * B(t)) for every record, B being monitor_accum.
inline double gronwall_envelope(std::span<const DiagnosticsRecord> history) {
  detail::check_time_order(history);
  auto controlled = [](const DiagnosticsRecord& r) {
    return r.omega_l2 * r.omega_l2 + r.hess_d_l2 * r.hess_d_l2;
  };
  const double base = controlled(history.front());
  double c = 0.0;
  for (const auto& r : history) {
    const double lhs = controlled(r);
    if (lhs <= base * (1.0 + kEnvelopeGrowthTolerance)) continue;
    if (!(r.monitor_accum > 0.0) || base == 0.0) {
      throw EnvelopeUndefinedError("controlled norms grew at t=" + std::to_string(r.t) +
                                   " with zero monitor integral or zero initial norms");
    }
    c = std::max(c, std::log(lhs / base) / r.monitor_accum);
  }
  return c;
}

}  // namespace lcflow
