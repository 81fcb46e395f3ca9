#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include "landau/domain.hpp"
#include "landau/grid.hpp"

namespace landau {

/// Complex field on the grid; twisted boundary conditions are implied, not stored.
struct WaveFunction {
  TorusGeometry geom;
  ComplexField values;

  explicit WaveFunction(const TorusGeometry& g) : geom(g), values(g.n1(), g.n2()) {}
  WaveFunction(const TorusGeometry& g, ComplexField v) : geom(g), values(std::move(v)) {
    if (values.n1() != g.n1() || values.n2() != g.n2())
      throw std::invalid_argument("wavefunction shape does not match geometry");
  }

  cplx& operator()(std::size_t j, std::size_t l) { return values(j, l); }
  const cplx& operator()(std::size_t j, std::size_t l) const { return values(j, l); }

  bool finite() const {
    return std::all_of(values.begin(), values.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
  }
};

/// Grid quadrature of the L2 inner product, h1 h2 sum conj(u) v.
inline cplx inner(const WaveFunction& u, const WaveFunction& v) {
  if (!(u.geom == v.geom)) throw std::invalid_argument("inner product of wavefunctions on different grids");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) acc += std::conj(u.values[i]) * v.values[i];
  return acc * (u.geom.h1() * u.geom.h2());
}

inline double norm(const WaveFunction& u) { return std::sqrt(std::max(0.0, inner(u, u).real())); }

inline double max_modulus(const WaveFunction& u) {
  double m = 0.0;
  for (const auto& z : u.values) m = std::max(m, std::abs(z));
  return m;
}

// ---------------------------------------------------------------------------
// Theta-sum start vector

enum class ThetaPhase {
  per_image,  ///< exp(i B0 (n2 L2 xi - n1 L1 eta) / 2): satisfies both seam conditions
  shared,     ///< exp(i B0 (L2 xi - L1 eta) / 2) for every image: does not
};

struct ThetaParams {
  double width = 0.0;
  std::optional<std::pair<double, double>> center;  ///< defaults to the chart midpoint
  int n_max = 3;
  ThetaPhase phase = ThetaPhase::per_image;
};

/// Width min(L1, L2)/8 with three image shells.
inline ThetaParams default_theta_params(const TorusGeometry& geom) {
  ThetaParams p;
  p.width = std::min(geom.L1(), geom.L2()) / 8.0;
  return p;
}

namespace detail {

inline void check_theta(const TorusGeometry& geom, const FieldSpec& field, const ThetaParams& p) {
  if (!dirac_consistent(field, geom))
    throw std::invalid_argument("theta start vector needs an integer flux (Dirac condition violated)");
  const double lmin = std::min(geom.L1(), geom.L2());
  if (!(p.width > 0.0)) throw std::invalid_argument("theta width must be positive");
  if (p.n_max < 1) throw std::invalid_argument("theta n_max must be >= 1");
  if (p.width >= lmin / 4.0) throw std::invalid_argument("theta width must be below min(L1, L2)/4");
  // Nearest dropped image sits at least (n_max + 1/2) periods away.
  const double d = (p.n_max + 0.5) * lmin / p.width;
  if (std::exp(-0.5 * d * d) > 1e-16) throw std::invalid_argument("theta width too large for requested n_max");
}

}  // namespace detail

/// Truncated analytic theta sum at an arbitrary point (x, y).
inline cplx theta_value(const TorusGeometry& geom, const FieldSpec& field, const ThetaParams& p, double x,
                        double y) {
  const double B = field.B0;
  const auto N = flux_count(field, geom);
  const double L1 = geom.L1();
  const double L2 = geom.L2();
  const auto [cx, cy] = p.center.value_or(std::pair{0.5 * L1, 0.5 * L2});
  const double xi = geom.xi(x);
  const double eta = geom.eta(y);
  const double inv2w2 = 1.0 / (2.0 * p.width * p.width);
  cplx acc = 0.0;
  for (int a = -p.n_max; a <= p.n_max; ++a) {
    for (int b = -p.n_max; b <= p.n_max; ++b) {
      const double dx = x + a * L1 - cx;
      const double dy = y + b * L2 - cy;
      const double g = std::exp(-(dx * dx + dy * dy) * inv2w2);
      if (g == 0.0) continue;
      const double ma = p.phase == ThetaPhase::per_image ? a : 1.0;
      const double mb = p.phase == ThetaPhase::per_image ? b : 1.0;
      const double arg = 0.5 * B * (mb * L2 * xi - ma * L1 * eta);
      const double sign = ((N * a * b) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * g * cplx(std::cos(arg), std::sin(arg));
    }
  }
  return acc;
}

/// Theta-sum state sampled on the grid and normalised to unit norm.
inline WaveFunction theta_initial(const TorusGeometry& geom, const FieldSpec& field, const ThetaParams& p) {
  detail::check_theta(geom, field, p);
  WaveFunction psi(geom);
  for (std::size_t j = 0; j < geom.n1(); ++j)
    for (std::size_t l = 0; l < geom.n2(); ++l) psi(j, l) = theta_value(geom, field, p, geom.x(j), geom.y(l));
  const double nrm = norm(psi);
  if (!(nrm > 0.0)) throw std::runtime_error("theta start vector vanished on the grid");
  for (auto& z : psi.values) z /= nrm;
  return psi;
}

struct SeamResidual {
  double boundary_x = 0.0;   ///< max_y |psi(L1,y) - e^{i B0 L1 eta/2} psi(0,y)|
  double boundary_y = 0.0;   ///< max_x |psi(x,L2) - e^{-i B0 L2 xi/2} psi(x,0)|
  double max_modulus = 0.0;  ///< max |psi| over the grid, same (unnormalised) sum

  double relative() const { return max_modulus > 0.0 ? std::max(boundary_x, boundary_y) / max_modulus : 0.0; }
};

/// Seam mismatch of the analytic theta sum; the grid itself has no seam nodes.
inline SeamResidual seam_residual(const TorusGeometry& geom, const FieldSpec& field, const ThetaParams& p) {
  detail::check_theta(geom, field, p);
  const double B = field.B0;
  SeamResidual r;
  for (std::size_t l = 0; l < geom.n2(); ++l) {
    const double y = geom.y(l);
    const double ph = 0.5 * B * geom.L1() * geom.eta(y);
    const cplx lhs = theta_value(geom, field, p, geom.L1(), y);
    const cplx rhs = cplx(std::cos(ph), std::sin(ph)) * theta_value(geom, field, p, 0.0, y);
    r.boundary_x = std::max(r.boundary_x, std::abs(lhs - rhs));
  }
  for (std::size_t j = 0; j < geom.n1(); ++j) {
    const double x = geom.x(j);
    const double ph = -0.5 * B * geom.L2() * geom.xi(x);
    const cplx lhs = theta_value(geom, field, p, x, geom.L2());
    const cplx rhs = cplx(std::cos(ph), std::sin(ph)) * theta_value(geom, field, p, x, 0.0);
    r.boundary_y = std::max(r.boundary_y, std::abs(lhs - rhs));
  }
  for (std::size_t j = 0; j < geom.n1(); ++j)
    for (std::size_t l = 0; l < geom.n2(); ++l)
      r.max_modulus = std::max(r.max_modulus, std::abs(theta_value(geom, field, p, geom.x(j), geom.y(l))));
  return r;
}

// ---------------------------------------------------------------------------
// Magnetic translations

/// (S psi)(x, y) = exp(-i B0 a eta / 2) psi(x + a, y) with a = steps*h1; fetches
/// past the seam pick up the boundary phase. Requires a uniform field and a
/// shift that is a multiple of L1/N, i.e. steps*N = 0 (mod n1).
inline WaveFunction magnetic_translate(const WaveFunction& psi, std::int64_t steps, const FieldSpec& field) {
  const auto& g = psi.geom;
  if (!field.uniform()) throw std::invalid_argument("magnetic translations need a uniform field");
  if (!dirac_consistent(field, g)) throw std::invalid_argument("magnetic translations need an integer flux");
  const auto n1 = static_cast<std::int64_t>(g.n1());
  const auto N = flux_count(field, g);
  if (((steps * N) % n1 + n1) % n1 != 0)
    throw std::invalid_argument("translation is not a multiple of L1/N (steps*N must vanish mod n1)");
  const double B = field.B0;
  const double a = static_cast<double>(steps) * g.h1();
  WaveFunction out(g);
  for (std::int64_t j = 0; j < n1; ++j) {
    const std::int64_t src = j + steps;
    std::int64_t wraps = src / n1;
    if (src % n1 < 0) --wraps;
    const std::int64_t jm = src - wraps * n1;
    for (std::size_t l = 0; l < g.n2(); ++l) {
      const double eta = g.eta_at(l);
      const double ph = -0.5 * B * a * eta + 0.5 * B * g.L1() * eta * static_cast<double>(wraps);
      out(static_cast<std::size_t>(j), l) = cplx(std::cos(ph), std::sin(ph)) * psi(static_cast<std::size_t>(jm), l);
    }
  }
  return out;
}

}  // namespace landau
