#pragma once

// Exact spectral differential operators on the periodic grid. Every operator
// accepts a field in either representation and returns a fresh field in the
// spectral representation; the input is never modified.

#include <cstddef>
#include <optional>
#include <string>

#include "lcflow/field.hpp"

namespace lcflow {

namespace detail {

// i * k * z without the NaN-handling path of complex multiplication.
inline Complex times_i(double k, Complex z) { return {-k * z.imag(), k * z.real()}; }

inline void check_axis(const Grid& g, int axis) {
  if (axis < 0 || axis >= g.dim()) {
    throw InvalidAxisError("axis " + std::to_string(axis) + " invalid for dim " +
                           std::to_string(g.dim()));
  }
}

inline void check_vector(const Field& v, const char* op) {
  if (v.components() != v.grid().dim()) {
    throw ShapeError(std::string(op) + ": expected " + std::to_string(v.grid().dim()) +
                     " components, got " + std::to_string(v.components()));
  }
}

// out += i k_axis * in, component-wise on raw coefficient spans.
inline void add_derivative(const Grid& g, int axis, std::span<const Complex> in,
                           std::span<Complex> out) {
  const auto& k = g.wavenumbers(axis);
  for (std::size_t i = 0; i < in.size(); ++i) out[i] += times_i(k[i], in[i]);
}

}  // namespace detail

/// d f / d x_axis for every component of f.
inline Field gradient(const Field& f, int axis) {
  detail::check_axis(f.grid(), axis);
  std::optional<Field> tmp;
  const Field& s = detail::as_spectral(f, tmp);
  Field out(s.grid(), s.components(), Space::spectral);
  for (int c = 0; c < s.components(); ++c) {
    detail::add_derivative(s.grid(), axis, s.coeffs(c), out.coeffs(c));
  }
  return out;
}

/// Second derivative d^2 f / dx_a dx_b using the same wavenumber tables as
/// gradient, so it agrees with gradient(gradient(f, a), b) exactly.
inline Field second_derivative(const Field& f, int a, int b) {
  detail::check_axis(f.grid(), a);
  detail::check_axis(f.grid(), b);
  std::optional<Field> tmp;
  const Field& s = detail::as_spectral(f, tmp);
  Field out(s.grid(), s.components(), Space::spectral);
  const auto& ka = s.grid().wavenumbers(a);
  const auto& kb = s.grid().wavenumbers(b);
  for (int c = 0; c < s.components(); ++c) {
    auto in = s.coeffs(c);
    auto o = out.coeffs(c);
    for (std::size_t i = 0; i < in.size(); ++i) o[i] = -ka[i] * kb[i] * in[i];
  }
  return out;
}

/// Component-wise Laplacian: multiplication by -|k|^2.
inline Field laplacian(const Field& f) {
  std::optional<Field> tmp;
  const Field& s = detail::as_spectral(f, tmp);
  Field out(s.grid(), s.components(), Space::spectral);
  const auto& k2 = s.grid().k_squared();
  for (int c = 0; c < s.components(); ++c) {
    auto in = s.coeffs(c);
    auto o = out.coeffs(c);
    for (std::size_t i = 0; i < in.size(); ++i) o[i] = -k2[i] * in[i];
  }
  return out;
}

/// sum_j d v_j / d x_j; v must have dim components.
inline Field divergence(const Field& v) {
  detail::check_vector(v, "divergence");
  std::optional<Field> tmp;
  const Field& s = detail::as_spectral(v, tmp);
  Field out(s.grid(), 1, Space::spectral);
  for (int j = 0; j < s.grid().dim(); ++j) {
    detail::add_derivative(s.grid(), j, s.coeffs(j), out.coeffs(0));
  }
  return out;
}

/// Curl of v. In 3D a 3-component field; in 2D the scalar d1 v2 - d2 v1.
inline Field curl(const Field& v) {
  detail::check_vector(v, "curl");
  std::optional<Field> tmp;
  const Field& s = detail::as_spectral(v, tmp);
  const Grid& g = s.grid();
  if (g.dim() == 2) {
    Field out(g, 1, Space::spectral);
    const auto& k0 = g.wavenumbers(0);
    const auto& k1 = g.wavenumbers(1);
    auto v0 = s.coeffs(0);
    auto v1 = s.coeffs(1);
    auto o = out.coeffs(0);
    for (std::size_t i = 0; i < o.size(); ++i) {
      o[i] = detail::times_i(k0[i], v1[i]) - detail::times_i(k1[i], v0[i]);
    }
    return out;
  }
  Field out(g, 3, Space::spectral);
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3;
    const int b = (c + 2) % 3;
    // (curl v)_c = d_a v_b - d_b v_a
    const auto& ka = g.wavenumbers(a);
    const auto& kb = g.wavenumbers(b);
    auto va = s.coeffs(a);
    auto vb = s.coeffs(b);
    auto o = out.coeffs(c);
    for (std::size_t i = 0; i < o.size(); ++i) {
      o[i] = detail::times_i(ka[i], vb[i]) - detail::times_i(kb[i], va[i]);
    }
  }
  return out;
}

namespace detail {

// In-place Leray projection of dim spectral components:
// v_hat <- v_hat - k (k . v_hat) / |k|^2. Modes with |k| = 0 pass through.
inline void project_in_place(const Grid& g, std::span<Complex> data) {
  const int dim = g.dim();
  const std::size_t n = g.modes();
  const auto& k2 = g.k_squared();
  for (std::size_t i = 0; i < n; ++i) {
    if (k2[i] == 0.0) continue;
    Complex kv{};
    for (int j = 0; j < dim; ++j) kv += g.wavenumbers(j)[i] * data[j * n + i];
    const Complex s = kv / k2[i];
    for (int j = 0; j < dim; ++j) data[j * n + i] -= g.wavenumbers(j)[i] * s;
  }
}

inline void dealias_in_place(const Grid& g, std::span<Complex> data) {
  const auto& keep = g.dealias_mask();
  const std::size_t n = g.modes();
  for (std::size_t base = 0; base < data.size(); base += n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i]) data[base + i] = Complex{};
    }
  }
}

}  // namespace detail

/// Projection onto divergence-free fields, P = I - grad lap^-1 div.
inline Field leray_project(const Field& v) {
  detail::check_vector(v, "leray_project");
  Field out = v.to_spectral();
  detail::project_in_place(out.grid(), out.all_coeffs());
  return out;
}

/// 2/3 rule: zero every mode with some |k_j| > res/3.
inline Field dealias(const Field& f) {
  Field out = f.to_spectral();
  detail::dealias_in_place(out.grid(), out.all_coeffs());
  return out;
}

}  // namespace lcflow
