#pragma once

// Reference implementations used only by the tests. Everything here is built
// directly from the operator definitions with naive sums; nothing calls the
// transform or solver code under test.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "landau/domain.hpp"
#include "landau/eigensolver.hpp"
#include "landau/state.hpp"

namespace oracle {

using landau::cplx;
using Mat = Eigen::MatrixXcd;
inline constexpr double pi = std::numbers::pi;

inline cplx expi(double a) { return {std::cos(a), std::sin(a)}; }

/// Signed integer wavenumber index with the Nyquist slot at -n/2.
inline double wave_index(std::size_t m, std::size_t n) {
  return m < n / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
}

/// Field strength written out from its definition.
inline double field_at(double B0, double lambda, double sigma, int nu, double L1, double x) {
  return B0 * (1.0 + lambda * std::sin(2 * pi * nu * x / L1) + sigma * std::sin(4 * pi * nu * x / L1));
}

/// Zero-mean antiderivative of B - B0, by composite Simpson quadrature.
inline double gauge_by_quadrature(double B0, double lambda, double sigma, int nu, double L1, double x) {
  auto integral = [&](double a, double b) {
    const int n = 2000;
    const double h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * (field_at(B0, lambda, sigma, nu, L1, a + i * h) - B0);
    }
    return s * h / 3.0;
  };
  // Mean of F(x) = int_0^x (B - B0) over one period, by the trapezoid rule.
  const int nm = 256;
  double mean = 0.0;
  double acc = 0.0;
  const double hm = L1 / nm;
  for (int i = 0; i < nm; ++i) {
    mean += acc;
    acc += integral(i * hm, (i + 1) * hm);
  }
  mean /= nm;
  return integral(0.0, x) - mean;
}

/// The spectral Hamiltonian as an explicit matrix: each Fourier multiplier is
/// expanded into its circulant kernel (1/n) sum_m e^{i k_m (x - x')} p_m^2.
inline Mat spectral_matrix(const landau::TorusGeometry& g, const landau::FieldSpec& f, const landau::RealField& V) {
  const auto n1 = g.n1(), n2 = g.n2();
  const double B = f.B0, L1 = g.L1(), L2 = g.L2();
  Mat H = Mat::Zero(static_cast<Eigen::Index>(n1 * n2), static_cast<Eigen::Index>(n1 * n2));
  auto idx = [n2](std::size_t j, std::size_t l) { return static_cast<Eigen::Index>(j * n2 + l); };
  auto xi = [&](std::size_t j) { return j * L1 / n1 - L1 / 2; };
  auto eta = [&](std::size_t l) { return l * L2 / n2 - L2 / 2; };
  for (std::size_t l = 0; l < n2; ++l)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t jp = 0; jp < n1; ++jp) {
        cplx s = 0.0;
        for (std::size_t m = 0; m < n1; ++m) {
          const double k = 2 * pi * wave_index(m, n1) / L1;
          const double p = k + B * eta(l);
          s += expi(k * (static_cast<double>(j) - static_cast<double>(jp)) * L1 / n1) * p * p;
        }
        s /= static_cast<double>(n1);
        H(idx(j, l), idx(jp, l)) += 0.5 * expi(0.5 * B * xi(j) * eta(l)) * s * expi(-0.5 * B * xi(jp) * eta(l));
      }
  for (std::size_t j = 0; j < n1; ++j) {
    const double lam = gauge_by_quadrature(B, f.lambda, f.sigma, f.nu, L1, j * L1 / n1);
    for (std::size_t l = 0; l < n2; ++l)
      for (std::size_t lp = 0; lp < n2; ++lp) {
        cplx s = 0.0;
        for (std::size_t m = 0; m < n2; ++m) {
          const double k = 2 * pi * wave_index(m, n2) / L2;
          const double p = k - B * xi(j) - lam;
          s += expi(k * (static_cast<double>(l) - static_cast<double>(lp)) * L2 / n2) * p * p;
        }
        s /= static_cast<double>(n2);
        H(idx(j, l), idx(j, lp)) += 0.5 * expi(-0.5 * B * xi(j) * eta(l)) * s * expi(0.5 * B * xi(j) * eta(lp));
      }
    for (std::size_t l = 0; l < n2; ++l) H(idx(j, l), idx(j, l)) += V(j, l);
  }
  return H;
}

/// Peierls finite-difference Hamiltonian as an explicit matrix.
inline Mat fd_matrix(const landau::TorusGeometry& g, const landau::FieldSpec& f, const landau::RealField& V) {
  const auto n1 = g.n1(), n2 = g.n2();
  const double B = f.B0, L1 = g.L1(), L2 = g.L2(), h1 = L1 / n1, h2 = L2 / n2;
  const auto N = static_cast<Eigen::Index>(n1 * n2);
  Mat H = Mat::Zero(N, N);
  auto idx = [n2](std::size_t j, std::size_t l) { return static_cast<Eigen::Index>(j * n2 + l); };
  for (std::size_t j = 0; j < n1; ++j) {
    const double x = j * h1, xi = x - L1 / 2;
    const double ay = 0.5 * B * xi + gauge_by_quadrature(B, f.lambda, f.sigma, f.nu, L1, x);
    for (std::size_t l = 0; l < n2; ++l) {
      const double eta = l * h2 - L2 / 2;
      const double ax = -0.5 * B * eta;
      // Forward hops; a hop across the seam carries the boundary phase.
      cplx tx = expi(-h1 * ax);
      if (j + 1 == n1) tx *= expi(0.5 * B * L1 * eta);
      cplx ty = expi(-h2 * ay);
      if (l + 1 == n2) ty *= expi(-0.5 * B * L2 * xi);
      const auto a = idx(j, l), bx = idx((j + 1) % n1, l), by = idx(j, (l + 1) % n2);
      H(a, bx) += -tx / (2 * h1 * h1);
      H(bx, a) += -std::conj(tx) / (2 * h1 * h1);
      H(a, by) += -ty / (2 * h2 * h2);
      H(by, a) += -std::conj(ty) / (2 * h2 * h2);
      H(a, a) += 1.0 / (h1 * h1) + 1.0 / (h2 * h2) + V(j, l);
    }
  }
  return H;
}

/// Column-by-column image of a linear operator on unit vectors.
inline Mat matrix_of(const landau::LinOp& op) {
  const auto n = static_cast<Eigen::Index>(op.dim);
  Mat M(n, n);
  std::vector<cplx> e(op.dim, 0.0), col(op.dim);
  for (Eigen::Index c = 0; c < n; ++c) {
    e[static_cast<std::size_t>(c)] = 1.0;
    op.apply(e, col);
    e[static_cast<std::size_t>(c)] = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) M(r, c) = col[static_cast<std::size_t>(r)];
  }
  return M;
}

/// Ascending eigenvalues of a Hermitian matrix.
inline std::vector<double> eigenvalues(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

/// (floor(j / N) + 1/2) B0 for j = 0..count-1.
inline std::vector<double> landau_levels(std::int64_t N, double B0, std::size_t count) {
  std::vector<double> out;
  for (std::size_t j = 0; j < count; ++j) out.push_back((static_cast<double>(j / static_cast<std::size_t>(N)) + 0.5) * B0);
  return out;
}

/// Lowest eigenvalues of two independent oscillators, (a+1/2) w1 + (b+1/2) w2.
inline std::vector<double> oscillator_levels(double w1, double w2, std::size_t count) {
  std::vector<double> all;
  for (int a = 0; a < 40; ++a)
    for (int b = 0; b < 40; ++b) all.push_back((a + 0.5) * w1 + (b + 0.5) * w2);
  std::sort(all.begin(), all.end());
  all.resize(count);
  return all;
}

inline int euclid_gcd(int a, int b) {
  while (b != 0) {
    const int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Generators

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  int even(int a, int b) { return 2 * integer(a / 2, b / 2); }

  std::vector<cplx> vec(std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx(uniform(-1, 1), uniform(-1, 1));
    return v;
  }

  landau::WaveFunction state(const landau::TorusGeometry& g) {
    landau::WaveFunction psi(g);
    for (auto& z : psi.values) z = cplx(uniform(-1, 1), uniform(-1, 1));
    return psi;
  }

  landau::RealField nonneg_potential(const landau::TorusGeometry& g, double scale) {
    landau::RealField v(g.n1(), g.n2(), 0.0);
    for (auto& x : v) x = uniform(0.0, scale);
    return v;
  }
};

inline double max_abs(const Mat& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace oracle
