#pragma once

// Torus geometry, magnetic field configuration and scalar potentials.
//
// Conventions (hbar = e/c = mass = 1):
//   * the torus is a single chart [0, L1) x [0, L2) sampled at x_j = j*h1,
//     y_l = l*h2;
//   * the gauge origin sits at the chart centre. With xi = x - L1/2 and
//     eta = y - L2/2 the vector potential is
//         A = (-B0*eta/2, B0*xi/2 + Lambda(x)),
//     so curl A = B0 * (1 + lambda*sin(2 pi nu x/L1) + sigma*sin(2 pi (2nu) x/L1));
//   * wavefunctions obey the twisted boundary conditions
//         psi(x + L1, y) = exp(+i B0 L1 eta / 2) psi(x, y)
//         psi(x, y + L2) = exp(-i B0 L2 xi  / 2) psi(x, y),
//     which are consistent only if B0 L1 L2 = 2 pi N for integer N.
//
// Lambda(x) is L1-periodic, so the undulating field leaves both seam phases
// untouched.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "landau/grid.hpp"

namespace landau {

/// Wavenumber multiple of the optional higher harmonic, relative to nu.
inline constexpr int kHarmonicMultiple = 2;

class TorusGeometry {
 public:
  TorusGeometry(double L1, double L2, std::size_t n1, std::size_t n2) : L1_(L1), L2_(L2), n1_(n1), n2_(n2) {
    if (!(std::isfinite(L1) && L1 > 0.0) || !(std::isfinite(L2) && L2 > 0.0))
      throw std::invalid_argument("torus side lengths must be finite and positive");
    if (n1 < 4 || n2 < 4 || n1 % 2 != 0 || n2 % 2 != 0)
      throw std::invalid_argument("grid sizes must be even and >= 4");
  }

  double L1() const { return L1_; }
  double L2() const { return L2_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t size() const { return n1_ * n2_; }
  double h1() const { return L1_ / static_cast<double>(n1_); }
  double h2() const { return L2_ / static_cast<double>(n2_); }
  double area() const { return L1_ * L2_; }

  double x(std::size_t j) const { return static_cast<double>(j) * h1(); }
  double y(std::size_t l) const { return static_cast<double>(l) * h2(); }
  /// Gauge coordinates, measured from the chart centre.
  double xi(double x) const { return x - 0.5 * L1_; }
  double eta(double y) const { return y - 0.5 * L2_; }
  double xi_at(std::size_t j) const { return xi(x(j)); }
  double eta_at(std::size_t l) const { return eta(y(l)); }

  bool operator==(const TorusGeometry&) const = default;

 private:
  double L1_;
  double L2_;
  std::size_t n1_;
  std::size_t n2_;
};

struct FieldSpec {
  double B0 = 0.0;
  double lambda = 0.0;
  int nu = 1;
  double sigma = 0.0;
  /// Set when the field was built from an integer flux count.
  std::optional<std::int64_t> flux;

  bool uniform() const { return lambda == 0.0 && sigma == 0.0; }
  bool operator==(const FieldSpec&) const = default;
};

namespace detail {
inline void check_undulation(int nu, double lambda, double sigma) {
  if (nu < 1) throw std::invalid_argument("undulation count nu must be >= 1");
  if (!std::isfinite(lambda) || !std::isfinite(sigma))
    throw std::invalid_argument("undulation amplitudes must be finite");
}
}  // namespace detail

/// Field with B0 = 2 pi N / (L1 L2), i.e. exactly N flux quanta through the torus.
inline FieldSpec field_from_flux(std::int64_t N, const TorusGeometry& geom, double lambda = 0.0, int nu = 1,
                                 double sigma = 0.0) {
  if (N < 0) throw std::invalid_argument("flux quantum count N must be >= 0");
  detail::check_undulation(nu, lambda, sigma);
  FieldSpec f;
  f.B0 = 2.0 * std::numbers::pi * static_cast<double>(N) / geom.area();
  f.lambda = lambda;
  f.nu = nu;
  f.sigma = sigma;
  f.flux = N;
  return f;
}

/// Field from a raw strength; B0 need not satisfy the Dirac condition.
inline FieldSpec field_from_strength(double B0, double lambda = 0.0, int nu = 1, double sigma = 0.0) {
  if (!std::isfinite(B0)) throw std::invalid_argument("field strength must be finite");
  detail::check_undulation(nu, lambda, sigma);
  return FieldSpec{B0, lambda, nu, sigma, std::nullopt};
}

/// Local field strength B(x).
inline double field_strength(const FieldSpec& f, double x, const TorusGeometry& geom) {
  const double q = 2.0 * std::numbers::pi * f.nu / geom.L1();
  return f.B0 * (1.0 + f.lambda * std::sin(q * x) + f.sigma * std::sin(kHarmonicMultiple * q * x));
}

/// Flux through the torus. The sinusoidal terms integrate to zero over whole periods.
inline double total_flux(const FieldSpec& f, const TorusGeometry& geom) { return f.B0 * geom.area(); }

/// Flux quanta B0 L1 L2 / 2 pi as a real number.
inline double flux_quanta(const FieldSpec& f, const TorusGeometry& geom) {
  return total_flux(f, geom) / (2.0 * std::numbers::pi);
}

/// Distance of the flux count from the nearest integer; 0 means the seam phases commute.
inline double dirac_residual(const FieldSpec& f, const TorusGeometry& geom) {
  const double q = flux_quanta(f, geom);
  return std::abs(q - std::round(q));
}

inline bool dirac_consistent(const FieldSpec& f, const TorusGeometry& geom, double tol = 1e-9) {
  return dirac_residual(f, geom) <= tol;
}

/// Integer flux count, taken from the field when it was built from N, else rounded.
inline std::int64_t flux_count(const FieldSpec& f, const TorusGeometry& geom) {
  if (f.flux) return *f.flux;
  return static_cast<std::int64_t>(std::llround(flux_quanta(f, geom)));
}

/// Periodic gauge function with Lambda'(x) = B(x) - B0 and Lambda(0) = Lambda(L1).
inline double gauge_lambda(const FieldSpec& f, double x, const TorusGeometry& geom) {
  const double pi = std::numbers::pi;
  const double L1 = geom.L1();
  const double q = 2.0 * pi * f.nu / L1;
  const double m = static_cast<double>(kHarmonicMultiple);
  return -f.lambda * f.B0 / q * std::cos(q * x) - f.sigma * f.B0 / (m * q) * std::cos(m * q * x);
}

// ---------------------------------------------------------------------------
// Potentials

struct NoPotential {
  bool operator==(const NoPotential&) const = default;
};

/// 1/2 omega^2 r^2 around the chart midpoint (L1/2, L2/2).
struct HarmonicPotential {
  double omega = 1.0;
  bool operator==(const HarmonicPotential&) const = default;
};

struct TabulatedPotential {
  RealField values;
  bool operator==(const TabulatedPotential&) const = default;
};

using PotentialSpec = std::variant<NoPotential, HarmonicPotential, TabulatedPotential>;

inline std::string potential_kind(const PotentialSpec& p) {
  if (std::holds_alternative<NoPotential>(p)) return "none";
  if (std::holds_alternative<HarmonicPotential>(p)) return "harmonic";
  return "tabulated";
}

inline RealField sample_potential(const PotentialSpec& spec, const TorusGeometry& geom) {
  RealField v(geom.n1(), geom.n2(), 0.0);
  if (const auto* h = std::get_if<HarmonicPotential>(&spec)) {
    if (!(h->omega > 0.0) || !std::isfinite(h->omega))
      throw std::invalid_argument("harmonic frequency must be finite and positive");
    const double w2 = h->omega * h->omega;
    for (std::size_t j = 0; j < geom.n1(); ++j) {
      const double dx = geom.xi_at(j);
      for (std::size_t l = 0; l < geom.n2(); ++l) {
        const double dy = geom.eta_at(l);
        v(j, l) = 0.5 * w2 * (dx * dx + dy * dy);
      }
    }
  } else if (const auto* t = std::get_if<TabulatedPotential>(&spec)) {
    if (t->values.n1() != geom.n1() || t->values.n2() != geom.n2())
      throw std::invalid_argument("tabulated potential shape does not match the grid");
    for (double val : t->values)
      if (!std::isfinite(val)) throw std::invalid_argument("tabulated potential has non-finite entries");
    v = t->values;
  }
  return v;
}

}  // namespace landau
