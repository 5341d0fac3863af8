#pragma once

// Initial-condition generators.
//
// random_smooth draws its coefficients from std::mt19937_64 (whose output
// sequence is fixed by the C++ standard) and maps each 64-bit draw to a double
// in [0, 1) as (x >> 11) * 2^-53. No std distribution is used, so a seed
// reproduces the same field on every conforming platform.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lcflow/state.hpp"

namespace lcflow {

struct ScenarioSpec {
  std::string name;
  std::map<std::string, double> parameters;

  double get(const std::string& key, double fallback) const {
    auto it = parameters.find(key);
    return it == parameters.end() ? fallback : it->second;
  }
};

inline const std::vector<std::string>& registered_scenarios() {
  static const std::vector<std::string> names{"taylor_green", "winding_director", "random_smooth"};
  return names;
}

/// Taylor-Green vortex with a constant director (0, 0, 1).
///   2D: u = A (sin x cos y, -cos x sin y)
///   3D: u = A (sin x cos y cos z, -cos x sin y cos z, 0)
inline FluidState taylor_green(const Grid& grid, double amplitude = 1.0) {
  if (!(amplitude > 0.0)) throw RangeError("taylor_green: amplitude must be positive");
  const double s = 2.0 * std::numbers::pi / grid.length();
  const bool three = grid.dim() == 3;
  Field u = sample(grid, grid.dim(), [&](const std::array<double, 3>& x, int c) {
    const double z = three ? std::cos(s * x[2]) : 1.0;
    switch (c) {
      case 0: return amplitude * std::sin(s * x[0]) * std::cos(s * x[1]) * z;
      case 1: return -amplitude * std::cos(s * x[0]) * std::sin(s * x[1]) * z;
      default: return 0.0;
    }
  });
  Field d = sample(grid, 3, [](const std::array<double, 3>&, int c) { return c == 2 ? 1.0 : 0.0; });
  return FluidState(std::move(u), std::move(d), 0.0);
}

/// u = 0, d = (cos k x, sin k x, 0): a stationary harmonic map.
inline FluidState winding_director(const Grid& grid, int k = 1) {
  if (k == 0) throw RangeError("winding_director: k must be nonzero");
  if (3 * std::abs(k) >= grid.res()) {
    throw UnderResolvedError("winding_director: |k|=" + std::to_string(std::abs(k)) +
                             " not resolved at res=" + std::to_string(grid.res()));
  }
  const double s = 2.0 * std::numbers::pi / grid.length();
  Field d = sample(grid, 3, [&](const std::array<double, 3>& x, int c) {
    switch (c) {
      case 0: return std::cos(k * s * x[0]);
      case 1: return std::sin(k * s * x[0]);
      default: return 0.0;
    }
  });
  return FluidState(Field(grid, grid.dim()), std::move(d), 0.0);
}

namespace detail {

/// Largest mode index used by random_smooth. Fixed (not tied to res) so the
/// same seed gives the same continuous field on every sufficiently fine grid.
inline constexpr int kRandomBand = 8;

class PortableUniform {
 public:
  explicit PortableUniform(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * static_cast<double>(engine_() >> 11) * 0x1.0p-53 - 1.0; }

 private:
  std::mt19937_64 engine_;
};

// Band-limited random real field: every mode with 0 < max|m_j| <= band gets a
// coefficient of magnitude (1 + |k|)^-slope times a uniform complex draw.
inline Field random_spectral_field(const Grid& g, int components, PortableUniform& rng,
                                   double slope) {
  const int band = std::min(kRandomBand, g.res() / 3);
  const int dim = g.dim();
  const double scale = 2.0 * std::numbers::pi / g.length();
  Field f(g, components, Space::spectral);
  std::array<int, 3> lo{-band, -band, -band};
  std::array<int, 3> hi{band, band, band};
  if (dim == 2) lo[2] = hi[2] = 0;
  for (int a = lo[0]; a <= hi[0]; ++a) {
    for (int b = lo[1]; b <= hi[1]; ++b) {
      for (int c = lo[2]; c <= hi[2]; ++c) {
        std::array<int, 3> m{a, b, c};
        // Keep one representative of each +-m pair: the last nonzero
        // component must be positive.
        int last = 0;
        for (int j = dim - 1; j >= 0; --j) {
          if (m[j] != 0) {
            last = m[j];
            break;
          }
        }
        if (last <= 0) continue;
        double k2 = 0.0;
        for (int j = 0; j < dim; ++j) k2 += scale * m[j] * scale * m[j];
        const double mag = std::pow(1.0 + std::sqrt(k2), -slope);
        for (int comp = 0; comp < components; ++comp) {
          const double re = rng.symmetric();
          const double im = rng.symmetric();
          const Complex z = mag * Complex(re, im);
          auto co = f.coeffs(comp);
          if (m[dim - 1] > 0) {
            co[g.mode_index(m)] = z;
          } else {
            // Last component zero: both m and -m are stored.
            std::array<int, 3> neg{-m[0], -m[1], -m[2]};
            co[g.mode_index(m)] = z;
            co[g.mode_index(neg)] = std::conj(z);
          }
        }
      }
    }
  }
  return f;
}

// Scale so that the RMS of the pointwise vector norm equals `rms`.
inline Field scale_to_rms(const Field& f, double rms) {
  const double current = std::sqrt(spectral_integral_of_square(f) / f.grid().volume());
  Field out = f.to_spectral();
  if (current > 0.0) {
    for (auto& z : out.all_coeffs()) z *= rms / current;
  }
  return out;
}

}  // namespace detail

/// Random band-limited data: u is a projected random field with spectral
/// slope `slope` and RMS `amplitude`; d normalizes (0,0,1) plus a random
/// perturbation of the same RMS.
inline FluidState random_smooth(const Grid& grid, std::uint64_t seed, double slope = 4.0,
                                double amplitude = 0.5) {
  if (!(slope > grid.dim() / 2.0 + 1.0)) {
    throw RangeError("random_smooth: slope must exceed dim/2 + 1");
  }
  if (!(amplitude > 0.0)) throw RangeError("random_smooth: amplitude must be positive");
  detail::PortableUniform rng(seed);
  Field u = leray_project(detail::random_spectral_field(grid, grid.dim(), rng, slope));
  u = detail::scale_to_rms(u, amplitude).to_physical();
  Field p = detail::scale_to_rms(detail::random_spectral_field(grid, 3, rng, slope), amplitude)
                .to_physical();
  auto pz = p.values(2);
  for (auto& v : pz) v += 1.0;
  return normalize_director(FluidState(std::move(u), std::move(p), 0.0));
}

/// Build a state from a spec by name. Parameters: k (winding_director),
/// amplitude (taylor_green, random_smooth), seed and slope (random_smooth).
inline FluidState make_scenario(const Grid& grid, const ScenarioSpec& spec) {
  if (spec.name == "taylor_green") return taylor_green(grid, spec.get("amplitude", 1.0));
  if (spec.name == "winding_director") {
    const double k = spec.get("k", 1.0);
    if (k != std::round(k)) throw RangeError("winding_director: k must be an integer");
    return winding_director(grid, static_cast<int>(k));
  }
  if (spec.name == "random_smooth") {
    const double seed = spec.get("seed", 0.0);
    if (seed < 0.0 || seed != std::round(seed)) {
      throw RangeError("random_smooth: seed must be a non-negative integer");
    }
    return random_smooth(grid, static_cast<std::uint64_t>(seed), spec.get("slope", 4.0),
                         spec.get("amplitude", 0.5));
  }
  throw RangeError("unknown scenario '" + spec.name + "'");
}

}  // namespace lcflow
