#pragma once

// Matrix-free spectral Hamiltonian
//
//   H = 1/2 (-i d_x - A_x)^2 + 1/2 (-i d_y - A_y)^2 + V,
//   A = (-B0 eta/2, B0 xi/2 + Lambda(x)).
//
// psi itself is not periodic, but exp(-i B0 xi eta / 2) psi is L1-periodic in x
// and exp(+i B0 xi eta / 2) psi is L2-periodic in y. Conjugating by those phases
// turns each covariant derivative into an exact Fourier multiplier:
//
//   (-i d_x + B0 eta/2)^2 psi = P+ F_x^-1 (k + B0 eta)^2 F_x P- psi
//   (-i d_y - B0 xi/2 - Lambda)^2 psi = P- F_y^-1 (k - B0 xi - Lambda)^2 F_y P+ psi
//
// with P-/+ = exp(-/+ i B0 xi eta / 2). One transform pair per direction.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "landau/dft.hpp"
#include "landau/domain.hpp"
#include "landau/grid.hpp"
#include "landau/parallel.hpp"
#include "landau/state.hpp"

namespace landau {

struct OperatorTables {
  TorusGeometry geom;
  ComplexField phase_minus;  ///< exp(-i B0 xi_j eta_l / 2)
  ComplexField phase_plus;   ///< exp(+i B0 xi_j eta_l / 2)
  RealField xmult;           ///< (m, l): (k_m + B0 eta_l)^2, k along x
  RealField ymult;           ///< (m, j): (k_m - B0 xi_j - Lambda(x_j))^2, k along y
  RealField v;
};

inline OperatorTables build_tables(const TorusGeometry& geom, const FieldSpec& field, const PotentialSpec& potential) {
  const std::size_t n1 = geom.n1();
  const std::size_t n2 = geom.n2();
  const double B = field.B0;
  OperatorTables t{geom, ComplexField(n1, n2), ComplexField(n1, n2), RealField(n1, n2), RealField(n2, n1),
                   sample_potential(potential, geom)};
  for (std::size_t j = 0; j < n1; ++j) {
    for (std::size_t l = 0; l < n2; ++l) {
      const double arg = 0.5 * B * geom.xi_at(j) * geom.eta_at(l);
      t.phase_minus(j, l) = cplx(std::cos(arg), -std::sin(arg));
      t.phase_plus(j, l) = cplx(std::cos(arg), std::sin(arg));
    }
  }
  const auto kx = wavenumbers(n1, geom.L1());
  const auto ky = wavenumbers(n2, geom.L2());
  for (std::size_t m = 0; m < n1; ++m) {
    for (std::size_t l = 0; l < n2; ++l) {
      const double p = kx[m] + B * geom.eta_at(l);
      t.xmult(m, l) = p * p;
    }
  }
  for (std::size_t m = 0; m < n2; ++m) {
    for (std::size_t j = 0; j < n1; ++j) {
      const double p = ky[m] - B * geom.xi_at(j) - gauge_lambda(field, geom.x(j), geom);
      t.ymult(m, j) = p * p;
    }
  }
  return t;
}

/// Reusable operator: tables plus transform plans. Safe for concurrent apply().
class SpectralHamiltonian {
 public:
  explicit SpectralHamiltonian(OperatorTables tables, Exec exec = Exec::sequential())
      : t_(std::move(tables)), px_(t_.geom.n1()), py_(t_.geom.n2()), exec_(exec) {}

  SpectralHamiltonian(const TorusGeometry& geom, const FieldSpec& field, const PotentialSpec& potential,
                      Exec exec = Exec::sequential())
      : SpectralHamiltonian(build_tables(geom, field, potential), exec) {}

  const OperatorTables& tables() const { return t_; }
  const TorusGeometry& geometry() const { return t_.geom; }
  std::size_t dim() const { return t_.geom.size(); }

  void apply(std::span<const cplx> in, std::span<cplx> out) const {
    const std::size_t n1 = t_.geom.n1();
    const std::size_t n2 = t_.geom.n2();
    if (in.size() != n1 * n2 || out.size() != n1 * n2)
      throw std::invalid_argument("spectral operator: vector length does not match grid");

    // x-pass: one transform per row of fixed y; writes only that row of `out`.
    parallel_for(n2, exec_, [&](std::size_t lb, std::size_t le) {
      std::vector<cplx> buf(n1), scratch(n1);
      for (std::size_t l = lb; l < le; ++l) {
        for (std::size_t j = 0; j < n1; ++j) buf[j] = t_.phase_minus(j, l) * in[j * n2 + l];
        px_.forward(buf, scratch);
        for (std::size_t m = 0; m < n1; ++m) buf[m] *= t_.xmult(m, l);
        px_.inverse(buf, scratch);
        for (std::size_t j = 0; j < n1; ++j) out[j * n2 + l] = 0.5 * t_.phase_plus(j, l) * buf[j];
      }
    });

    // y-pass: one transform per column of fixed x; adds into that column only.
    parallel_for(n1, exec_, [&](std::size_t jb, std::size_t je) {
      std::vector<cplx> buf(n2), scratch(n2);
      for (std::size_t j = jb; j < je; ++j) {
        const std::size_t row = j * n2;
        for (std::size_t l = 0; l < n2; ++l) buf[l] = t_.phase_plus(j, l) * in[row + l];
        py_.forward(buf, scratch);
        for (std::size_t m = 0; m < n2; ++m) buf[m] *= t_.ymult(m, j);
        py_.inverse(buf, scratch);
        for (std::size_t l = 0; l < n2; ++l)
          out[row + l] += 0.5 * t_.phase_minus(j, l) * buf[l] + t_.v(j, l) * in[row + l];
      }
    });
  }

  WaveFunction apply(const WaveFunction& psi) const {
    if (!(psi.geom == t_.geom)) throw std::invalid_argument("spectral operator: wavefunction grid mismatch");
    WaveFunction out(psi.geom);
    apply(psi.values.span(), out.values.span());
    return out;
  }

 private:
  OperatorTables t_;
  DftPlan px_;
  DftPlan py_;
  Exec exec_;
};

inline WaveFunction apply_h_spectral(const WaveFunction& psi, const OperatorTables& tables,
                                     Exec exec = Exec::sequential()) {
  return SpectralHamiltonian(tables, exec).apply(psi);
}

}  // namespace landau
