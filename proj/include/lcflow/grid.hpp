#pragma once

// Uniform periodic grid on the torus [0, L)^dim together with its FFT plans
// and wavenumber tables.
//
// Physical samples are stored row-major with the last axis fastest. Spectral
// coefficients use the real-to-complex half layout: the last axis keeps only
// the non-negative modes 0..res/2, every other axis keeps all res modes in
// FFT order (0, 1, ..., res/2-1, -res/2, ..., -1).

#include <fftw3.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <new>
#include <numbers>
#include <string>
#include <vector>

#include "lcflow/error.hpp"

namespace lcflow {

using Complex = std::complex<double>;

namespace detail {

/// std::allocator replacement backed by fftw_malloc, so field storage has the
/// SIMD alignment FFTW plans assume.
template <typename T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <typename U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    void* p = fftw_malloc(n * sizeof(T));
    if (p == nullptr && n != 0) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }

  template <typename U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

template <typename T>
using AlignedVector = std::vector<T, FftwAllocator<T>>;

/// Owns one r2c and one c2r plan for a single scalar component.
class FftPlans {
 public:
  FftPlans(int dim, int res) : real_size_(1), complex_size_(1) {
    std::array<int, 3> n{res, res, res};
    for (int a = 0; a < dim - 1; ++a) {
      real_size_ *= static_cast<std::size_t>(res);
      complex_size_ *= static_cast<std::size_t>(res);
    }
    real_size_ *= static_cast<std::size_t>(res);
    complex_size_ *= static_cast<std::size_t>(res / 2 + 1);

    // FFTW_ESTIMATE leaves the planning buffers untouched and picks the same
    // plan every time, which keeps runs bit-reproducible.
    AlignedVector<double> r(real_size_);
    AlignedVector<Complex> c(complex_size_);
    const unsigned flags = FFTW_ESTIMATE;
    forward_ = fftw_plan_dft_r2c(dim, n.data(), r.data(),
                                 reinterpret_cast<fftw_complex*>(c.data()), flags);
    inverse_ = fftw_plan_dft_c2r(dim, n.data(),
                                 reinterpret_cast<fftw_complex*>(c.data()), r.data(), flags);
    if (forward_ == nullptr || inverse_ == nullptr) {
      throw Error("FFTW plan creation failed");
    }
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  ~FftPlans() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }

  // Unnormalized DFT; input is preserved. Both pointers must be
  // fftw_malloc-aligned.
  void forward(const double* in, Complex* out) const {
    fftw_execute_dft_r2c(forward_, const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
  }

  // Unnormalized inverse DFT; c2r destroys its input, so work on a copy.
  void inverse(const Complex* in, double* out) const {
    AlignedVector<Complex> scratch(in, in + complex_size_);
    fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(scratch.data()), out);
  }

 private:
  std::size_t real_size_;
  std::size_t complex_size_;
  fftw_plan forward_{};
  fftw_plan inverse_{};
};

/// Per-mode tables shared by every copy of a Grid.
struct GridTables {
  GridTables(int dim, int res) : plans(dim, res) {}

  FftPlans plans;
  // Derivative wavenumbers per axis (Nyquist forced to zero), |k|^2 built
  // from them, integer mode numbers, and the 2/3-rule mask.
  std::array<std::vector<double>, 3> k;
  std::vector<double> k2;
  std::array<std::vector<int>, 3> mode;
  std::vector<unsigned char> keep;
  // Multiplicity of each stored mode in the full spectrum (1 or 2).
  std::vector<double> weight;
};

}  // namespace detail

class Grid {
 public:
  Grid(int dim, int res, double length = 2.0 * std::numbers::pi)
      : dim_(dim), res_(res), length_(length) {
    if (dim != 2 && dim != 3) {
      throw RangeError("grid dim must be 2 or 3, got " + std::to_string(dim));
    }
    if (res < 8 || (res & (res - 1)) != 0) {
      throw RangeError("grid res must be a power of two >= 8, got " + std::to_string(res));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
      throw RangeError("grid length must be positive and finite");
    }
    tables_ = std::make_shared<detail::GridTables>(dim, res);
    build_tables();
  }

  int dim() const noexcept { return dim_; }
  int res() const noexcept { return res_; }
  double length() const noexcept { return length_; }

  /// Grid spacing length/res.
  double spacing() const noexcept { return length_ / res_; }
  double cell_volume() const noexcept { return std::pow(spacing(), dim_); }
  double volume() const noexcept { return std::pow(length_, dim_); }

  /// Number of physical samples, res^dim.
  std::size_t points() const noexcept { return points_; }
  /// Number of stored spectral coefficients, res^(dim-1) * (res/2+1).
  std::size_t modes() const noexcept { return modes_; }

  /// Coordinate of sample index i along an axis.
  double coordinate(int i) const noexcept { return spacing() * i; }

  /// Physical coordinates of the flat sample index.
  std::array<double, 3> position(std::size_t flat) const noexcept {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = dim_ - 1; a >= 0; --a) {
      x[a] = coordinate(static_cast<int>(flat % res_));
      flat /= res_;
    }
    return x;
  }

  const std::vector<double>& wavenumbers(int axis) const { return tables_->k[axis]; }
  const std::vector<double>& k_squared() const noexcept { return tables_->k2; }
  const std::vector<int>& mode_numbers(int axis) const { return tables_->mode[axis]; }
  const std::vector<unsigned char>& dealias_mask() const noexcept { return tables_->keep; }
  const std::vector<double>& mode_weights() const noexcept { return tables_->weight; }

  /// Flat spectral index of the integer mode vector, reduced modulo res.
  /// Only modes with a non-negative last component are stored; callers
  /// conjugate otherwise.
  std::size_t mode_index(const std::array<int, 3>& m) const {
    const int half = res_ / 2 + 1;
    std::size_t idx = 0;
    for (int a = 0; a < dim_; ++a) {
      const int extent = (a == dim_ - 1) ? half : res_;
      int v = ((m[a] % res_) + res_) % res_;
      if (a == dim_ - 1 && v >= half) {
        throw RangeError("mode_index: last component must be in [0, res/2]");
      }
      idx = idx * static_cast<std::size_t>(extent) + static_cast<std::size_t>(v);
    }
    return idx;
  }

  const detail::FftPlans& plans() const noexcept { return tables_->plans; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.res_ == b.res_ && a.length_ == b.length_;
  }

 private:
  void build_tables() {
    points_ = 1;
    modes_ = 1;
    for (int a = 0; a < dim_; ++a) points_ *= static_cast<std::size_t>(res_);
    for (int a = 0; a < dim_ - 1; ++a) modes_ *= static_cast<std::size_t>(res_);
    modes_ *= static_cast<std::size_t>(res_ / 2 + 1);

    auto& t = *tables_;
    for (int a = 0; a < dim_; ++a) {
      t.k[a].assign(modes_, 0.0);
      t.mode[a].assign(modes_, 0);
    }
    t.k2.assign(modes_, 0.0);
    t.keep.assign(modes_, 1);
    t.weight.assign(modes_, 1.0);

    const double scale = 2.0 * std::numbers::pi / length_;
    const int half = res_ / 2 + 1;
    const int cutoff = res_ / 3;
    std::array<int, 3> extent{res_, res_, res_};
    extent[dim_ - 1] = half;

    for (std::size_t idx = 0; idx < modes_; ++idx) {
      std::size_t rem = idx;
      std::array<int, 3> i{0, 0, 0};
      for (int a = dim_ - 1; a >= 0; --a) {
        i[a] = static_cast<int>(rem % extent[a]);
        rem /= extent[a];
      }
      double k2 = 0.0;
      bool keep = true;
      for (int a = 0; a < dim_; ++a) {
        const int m = (i[a] < res_ / 2 || a == dim_ - 1) ? i[a] : i[a] - res_;
        // For non-last axes index res/2 maps to -res/2; on the last axis it
        // stays +res/2. Either way it is the Nyquist mode.
        const bool nyquist = (i[a] == res_ / 2);
        t.mode[a][idx] = m;
        const double k = nyquist ? 0.0 : scale * m;
        t.k[a][idx] = k;
        k2 += k * k;
        if (std::abs(m) > cutoff) keep = false;
      }
      t.k2[idx] = k2;
      t.keep[idx] = keep ? 1 : 0;
      const int last = i[dim_ - 1];
      t.weight[idx] = (last == 0 || last == res_ / 2) ? 1.0 : 2.0;
    }
  }

  int dim_;
  int res_;
  double length_;
  std::size_t points_ = 0;
  std::size_t modes_ = 0;
  std::shared_ptr<detail::GridTables> tables_;
};

}  // namespace lcflow
