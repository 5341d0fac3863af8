#pragma once

// Multi-component real field on a Grid. A Field is current in exactly one
// representation: physical samples or spectral coefficients. The transform
// pair is normalized so that the mode-0 coefficient equals the spatial mean:
//
//   f_hat(k) = (1/N) sum_x f(x) exp(-i k.x),   f(x) = sum_k f_hat(k) exp(i k.x)
//
// With that convention discrete Parseval reads
//   sum_x |f(x)|^2 dV = V * sum_k |f_hat(k)|^2      (full spectrum).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcflow/grid.hpp"

namespace lcflow {

enum class Space { physical, spectral };

class Field {
 public:
  /// Zero-initialized field with the given number of components.
  Field(Grid grid, int components, Space space = Space::physical)
      : grid_(std::move(grid)), components_(components), space_(space) {
    if (components < 1) throw ShapeError("field needs at least one component");
    if (space_ == Space::physical) {
      physical_.assign(grid_.points() * components_, 0.0);
    } else {
      spectral_.assign(grid_.modes() * components_, Complex{});
    }
  }

  const Grid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  Space space() const noexcept { return space_; }
  bool is_physical() const noexcept { return space_ == Space::physical; }
  bool is_spectral() const noexcept { return space_ == Space::spectral; }

  std::span<double> values(int c) {
    require(Space::physical, c);
    return {physical_.data() + offset(c), grid_.points()};
  }
  std::span<const double> values(int c) const {
    require(Space::physical, c);
    return {physical_.data() + offset(c), grid_.points()};
  }

  std::span<Complex> coeffs(int c) {
    require(Space::spectral, c);
    return {spectral_.data() + c * grid_.modes(), grid_.modes()};
  }
  std::span<const Complex> coeffs(int c) const {
    require(Space::spectral, c);
    return {spectral_.data() + c * grid_.modes(), grid_.modes()};
  }

  /// All physical samples, component-major.
  std::span<const double> all_values() const {
    require(Space::physical, 0);
    return physical_;
  }
  std::span<double> all_values() {
    require(Space::physical, 0);
    return physical_;
  }
  std::span<const Complex> all_coeffs() const {
    require(Space::spectral, 0);
    return spectral_;
  }
  std::span<Complex> all_coeffs() {
    require(Space::spectral, 0);
    return spectral_;
  }

  /// Spectral representation of this field (transform if needed).
  Field to_spectral() const {
    if (is_spectral()) return *this;
    Field out(grid_, components_, Space::spectral);
    const double inv_n = 1.0 / static_cast<double>(grid_.points());
    for (int c = 0; c < components_; ++c) {
      auto dst = out.coeffs(c);
      grid_.plans().forward(values(c).data(), dst.data());
      for (auto& z : dst) z *= inv_n;
    }
    return out;
  }

  /// Physical representation of this field (transform if needed).
  Field to_physical() const {
    if (is_physical()) return *this;
    Field out(grid_, components_, Space::physical);
    for (int c = 0; c < components_; ++c) {
      grid_.plans().inverse(coeffs(c).data(), out.values(c).data());
    }
    return out;
  }

  /// Extract one component as a scalar field in the current representation.
  Field component(int c) const {
    Field out(grid_, 1, space_);
    if (is_physical()) {
      std::ranges::copy(values(c), out.values(0).begin());
    } else {
      std::ranges::copy(coeffs(c), out.coeffs(0).begin());
    }
    return out;
  }

 private:
  std::size_t offset(int c) const noexcept { return static_cast<std::size_t>(c) * grid_.points(); }

  void require(Space s, int c) const {
    if (space_ != s) {
      throw std::logic_error(s == Space::physical ? "field is not in physical representation"
                                                  : "field is not in spectral representation");
    }
    if (c < 0 || c >= components_) {
      throw ShapeError("component index " + std::to_string(c) + " out of range");
    }
  }

  Grid grid_;
  int components_;
  Space space_;
  // Component blocks are multiples of 64 samples / 5 modes long, so every
  // block start keeps the allocator's alignment.
  detail::AlignedVector<double> physical_;
  detail::AlignedVector<Complex> spectral_;
};

namespace detail {

// f itself when already spectral, otherwise its transform parked in storage.
inline const Field& as_spectral(const Field& f, std::optional<Field>& storage) {
  if (f.is_spectral()) return f;
  storage.emplace(f.to_spectral());
  return *storage;
}

}  // namespace detail

/// transform_forward: physical -> spectral.
inline Field transform_forward(const Field& f) {
  if (!f.is_physical()) throw std::logic_error("transform_forward needs a physical field");
  return f.to_spectral();
}

/// Inverse transform: spectral -> physical.
inline Field transform_inverse(const Field& f) {
  if (!f.is_spectral()) throw std::logic_error("transform_inverse needs a spectral field");
  return f.to_physical();
}

/// Sample a component-wise function of position into a physical field.
/// fn(x, c) returns component c at position x.
inline Field sample(const Grid& grid, int components,
                    const std::function<double(const std::array<double, 3>&, int)>& fn) {
  Field f(grid, components);
  for (int c = 0; c < components; ++c) {
    auto v = f.values(c);
    for (std::size_t i = 0; i < grid.points(); ++i) v[i] = fn(grid.position(i), c);
  }
  return f;
}

/// max over grid points and components of |f|.
inline double max_abs(const Field& f) {
  const Field p = f.to_physical();
  double m = 0.0;
  for (double v : p.all_values()) m = std::max(m, std::abs(v));
  return m;
}

/// max over grid points of the pointwise Euclidean norm across components.
inline double max_magnitude(const Field& f) {
  const Field p = f.to_physical();
  double m = 0.0;
  for (std::size_t i = 0; i < p.grid().points(); ++i) {
    double s = 0.0;
    for (int c = 0; c < p.components(); ++c) s += p.values(c)[i] * p.values(c)[i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

/// Quadrature of |f|^2 over one torus cell: sum_x |f(x)|^2 dV.
inline double integral_of_square(const Field& f) {
  const Field p = f.to_physical();
  double s = 0.0;
  for (double v : p.all_values()) s += v * v;
  return s * p.grid().cell_volume();
}

/// V * sum over the full spectrum of |f_hat|^2, accounting for the modes
/// omitted by the half layout.
inline double spectral_integral_of_square(const Field& f) {
  const Field s = f.to_spectral();
  const auto& w = s.grid().mode_weights();
  double acc = 0.0;
  for (int c = 0; c < s.components(); ++c) {
    auto z = s.coeffs(c);
    for (std::size_t i = 0; i < z.size(); ++i) acc += w[i] * std::norm(z[i]);
  }
  return acc * s.grid().volume();
}

inline double l2_norm(const Field& f) { return std::sqrt(integral_of_square(f)); }

/// max |a - b| over all samples; both fields must share grid and shape.
inline double max_abs_diff(const Field& a, const Field& b) {
  if (a.components() != b.components() || !(a.grid() == b.grid())) {
    throw ShapeError("max_abs_diff: field shapes differ");
  }
  const Field pa = a.to_physical();
  const Field pb = b.to_physical();
  double m = 0.0;
  auto va = pa.all_values();
  auto vb = pb.all_values();
  for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

}  // namespace lcflow
