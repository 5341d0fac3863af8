#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lcflow/spectral.hpp"

namespace lcflow {

/// Director samples shorter than this are treated as a loss of resolution.
inline constexpr double kDegenerateDirector = 1e-6;

struct PhysicsParams {
  double nu = 1.0;  ///< kinematic viscosity

  void validate() const {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw RangeError("nu must be positive");
  }
};

/// Velocity u (dim components), director d (3 components, unit length) and
/// time t. Both fields are kept in the physical representation.
class FluidState {
 public:
  explicit FluidState(const Grid& grid, double t = 0.0)
      : u_(grid, grid.dim()), d_(grid, 3), t_(t) {}

  FluidState(Field u, Field d, double t) : u_(u.to_physical()), d_(d.to_physical()), t_(t) {
    if (u_.components() != u_.grid().dim()) throw ShapeError("velocity needs dim components");
    if (d_.components() != 3) throw ShapeError("director needs 3 components");
    if (!(u_.grid() == d_.grid())) throw ShapeError("velocity and director grids differ");
  }

  const Grid& grid() const noexcept { return u_.grid(); }
  const Field& u() const noexcept { return u_; }
  const Field& d() const noexcept { return d_; }
  Field& u() noexcept { return u_; }
  Field& d() noexcept { return d_; }
  double t() const noexcept { return t_; }
  void set_t(double t) noexcept { t_ = t; }

 private:
  Field u_;
  Field d_;
  double t_;
};

/// Divide the director by its pointwise length. Throws
/// DegenerateDirectorError where |d| < kDegenerateDirector.
inline FluidState normalize_director(const FluidState& s) {
  FluidState out = s;
  Field& d = out.d();
  auto d0 = d.values(0);
  auto d1 = d.values(1);
  auto d2 = d.values(2);
  for (std::size_t i = 0; i < d0.size(); ++i) {
    const double len = std::sqrt(d0[i] * d0[i] + d1[i] * d1[i] + d2[i] * d2[i]);
    if (!(len >= kDegenerateDirector)) {
      throw DegenerateDirectorError("director length " + std::to_string(len) +
                                    " below threshold at sample " + std::to_string(i));
    }
    d0[i] /= len;
    d1[i] /= len;
    d2[i] /= len;
  }
  return out;
}

namespace detail {

// First derivatives of every component of f, indexed [axis] -> Field with
// f.components() components, all physical.
inline std::vector<Field> physical_gradients(const Field& spectral_f) {
  std::vector<Field> out;
  out.reserve(spectral_f.grid().dim());
  for (int a = 0; a < spectral_f.grid().dim(); ++a) {
    out.push_back(gradient(spectral_f, a).to_physical());
  }
  return out;
}

// Physical-space products that drive the momentum equation:
//   advection_i = sum_j u_j d_j u_i
//   forcing_i   = sum_m (lap d)_m d_i d_m
struct MomentumProducts {
  Field advection;
  Field forcing;
};

inline MomentumProducts momentum_products(const Field& u_hat, const Field& d_hat) {
  const Grid& g = u_hat.grid();
  const int dim = g.dim();
  const std::size_t n = g.points();
  const Field u = u_hat.to_physical();
  const auto grad_u = physical_gradients(u_hat);
  const auto grad_d = physical_gradients(d_hat);
  const Field lap_d = laplacian(d_hat).to_physical();

  MomentumProducts p{Field(g, dim), Field(g, dim)};
  for (int i = 0; i < dim; ++i) {
    auto adv = p.advection.values(i);
    auto frc = p.forcing.values(i);
    for (int j = 0; j < dim; ++j) {
      auto uj = u.values(j);
      auto dj_ui = grad_u[j].values(i);
      for (std::size_t x = 0; x < n; ++x) adv[x] += uj[x] * dj_ui[x];
    }
    for (int m = 0; m < 3; ++m) {
      auto lm = lap_d.values(m);
      auto di_dm = grad_d[i].values(m);
      for (std::size_t x = 0; x < n; ++x) frc[x] += lm[x] * di_dm[x];
    }
  }
  return p;
}

}  // namespace detail

/// Pressure from the Poisson equation lap p = -div(u.grad u + lap d . grad d),
/// solved spectrally with zero mean. Returned in physical representation.
inline Field recover_pressure(const FluidState& s, const PhysicsParams& params) {
  params.validate();
  const Grid& g = s.grid();
  const Field u_hat = s.u().to_spectral();
  const Field d_hat = s.d().to_spectral();
  auto prod = detail::momentum_products(u_hat, d_hat);
  Field rhs(g, g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    auto r = rhs.values(i);
    auto a = prod.advection.values(i);
    auto f = prod.forcing.values(i);
    for (std::size_t x = 0; x < r.size(); ++x) r[x] = a[x] + f[x];
  }
  const Field div = divergence(dealias(rhs));
  Field p(g, 1, Space::spectral);
  auto src = div.coeffs(0);
  auto dst = p.coeffs(0);
  const auto& k2 = g.k_squared();
  // -|k|^2 p_hat = -div_hat  =>  p_hat = div_hat / |k|^2
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = k2[i] == 0.0 ? Complex{} : src[i] / k2[i];
  }
  return p.to_physical();
}

struct ConstraintResidual {
  double norm_error = 0.0;      ///< max | |d| - 1 |
  double identity_error = 0.0;  ///< max | |grad d|^2 + d . lap d |
};

/// Discrete residuals of the sphere constraint and of the identity
/// |grad d|^2 + d . lap d = 0 that it implies.
inline ConstraintResidual constraint_residual(const FluidState& s) {
  const Grid& g = s.grid();
  const Field& d = s.d();
  const Field d_hat = d.to_spectral();
  const auto grad_d = detail::physical_gradients(d_hat);
  const Field lap_d = laplacian(d_hat).to_physical();

  const std::size_t n = g.points();
  std::vector<double> len2(n, 0.0);
  std::vector<double> grad2(n, 0.0);
  std::vector<double> d_lap(n, 0.0);
  for (int m = 0; m < 3; ++m) {
    auto dm = d.values(m);
    auto lm = lap_d.values(m);
    for (std::size_t x = 0; x < n; ++x) {
      len2[x] += dm[x] * dm[x];
      d_lap[x] += dm[x] * lm[x];
    }
    for (int a = 0; a < g.dim(); ++a) {
      auto v = grad_d[a].values(m);
      for (std::size_t x = 0; x < n; ++x) grad2[x] += v[x] * v[x];
    }
  }

  ConstraintResidual r;
  for (std::size_t x = 0; x < n; ++x) {
    r.norm_error = std::max(r.norm_error, std::abs(std::sqrt(len2[x]) - 1.0));
    r.identity_error = std::max(r.identity_error, std::abs(grad2[x] + d_lap[x]));
  }
  return r;
}

}  // namespace lcflow
