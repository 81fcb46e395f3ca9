#pragma once

// One-dimensional discrete Fourier transforms.
//
//   forward:  F_m = sum_j f_j exp(-2 pi i j m / n)
//   inverse:  f_j = (1/n) sum_m F_m exp(+2 pi i j m / n)
//
// Power-of-two lengths use an iterative radix-2 transform; any other length
// falls back to a direct O(n^2) sum over an exact twiddle table.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "landau/grid.hpp"

namespace landau {

class DftPlan {
 public:
  explicit DftPlan(std::size_t n) : n_(n), pow2_(n != 0 && (n & (n - 1)) == 0) {
    if (n == 0) throw std::invalid_argument("transform length must be positive");
    // Table of exp(-2 pi i k / n), each entry computed directly.
    roots_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      roots_[k] = cplx(std::cos(t), std::sin(t));
    }
    if (pow2_) {
      bitrev_.resize(n);
      std::size_t bits = 0;
      while ((std::size_t{1} << bits) < n) ++bits;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < bits; ++b)
          if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        bitrev_[i] = r;
      }
    }
  }

  std::size_t size() const { return n_; }
  bool radix2() const { return pow2_; }

  /// In-place forward transform. `scratch` must hold n elements for non-power-of-two lengths.
  void forward(std::span<cplx> a, std::span<cplx> scratch = {}) const { transform(a, scratch, false); }

  /// In-place inverse transform, including the 1/n factor.
  void inverse(std::span<cplx> a, std::span<cplx> scratch = {}) const {
    transform(a, scratch, true);
    const double s = 1.0 / static_cast<double>(n_);
    for (auto& v : a) v *= s;
  }

 private:
  cplx root(std::size_t k, bool inv) const { return inv ? std::conj(roots_[k]) : roots_[k]; }

  void transform(std::span<cplx> a, std::span<cplx> scratch, bool inv) const {
    if (a.size() != n_) throw std::invalid_argument("transform length mismatch");
    if (pow2_) {
      radix2(a, inv);
      return;
    }
    std::vector<cplx> local;
    if (scratch.size() < n_) {
      local.resize(n_);
      scratch = local;
    }
    for (std::size_t m = 0; m < n_; ++m) {
      cplx acc = 0.0;
      std::size_t idx = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        acc += a[j] * root(idx, inv);
        idx += m;
        if (idx >= n_) idx -= n_;
      }
      scratch[m] = acc;
    }
    std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(n_), a.begin());
  }

  void radix2(std::span<cplx> a, bool inv) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          const cplx w = root(k * stride, inv);
          const cplx u = a[start + k];
          const cplx v = a[start + k + half] * w;
          a[start + k] = u + v;
          a[start + k + half] = u - v;
        }
      }
    }
  }

  std::size_t n_;
  bool pow2_;
  std::vector<cplx> roots_;
  std::vector<std::size_t> bitrev_;
};

/// Angular wavenumbers in transform order; the Nyquist slot n/2 carries -n/2.
inline std::vector<double> wavenumbers(std::size_t n, double L) {
  if (n % 2 != 0) throw std::invalid_argument("wavenumbers require an even length");
  if (!(L > 0.0)) throw std::invalid_argument("period must be positive");
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / L;
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t m = 0; m < n; ++m) {
    const auto s = static_cast<std::ptrdiff_t>(m);
    k[m] = dk * static_cast<double>(s < half ? s : s - static_cast<std::ptrdiff_t>(n));
  }
  return k;
}

}  // namespace landau
