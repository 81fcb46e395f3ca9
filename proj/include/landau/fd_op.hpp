#pragma once

// Second-order finite-difference Hamiltonian with Peierls link phases.
// Hopping j -> j+1 carries U = exp(-i h A) evaluated at the link midpoint;
// neighbour fetches across a seam are multiplied by the boundary phase.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "landau/domain.hpp"
#include "landau/grid.hpp"
#include "landau/parallel.hpp"
#include "landau/state.hpp"

namespace landau {

struct FdTables {
  TorusGeometry geom;
  ComplexField ux;               ///< link (j,l) -> (j+1,l)
  ComplexField uy;               ///< link (j,l) -> (j,l+1)
  std::vector<cplx> twist_x;     ///< per l: exp(+i B0 L1 eta_l / 2)
  std::vector<cplx> twist_y;     ///< per j: exp(-i B0 L2 xi_j / 2)
  RealField v;
};

inline FdTables build_fd_tables(const TorusGeometry& geom, const FieldSpec& field, const PotentialSpec& potential) {
  const std::size_t n1 = geom.n1();
  const std::size_t n2 = geom.n2();
  const double B = field.B0;
  const double h1 = geom.h1();
  const double h2 = geom.h2();
  FdTables t{geom, ComplexField(n1, n2), ComplexField(n1, n2), std::vector<cplx>(n2), std::vector<cplx>(n1),
             sample_potential(potential, geom)};
  auto expi = [](double a) { return cplx(std::cos(a), std::sin(a)); };
  for (std::size_t j = 0; j < n1; ++j) {
    // A_y does not depend on y, so the link midpoint in y is immaterial.
    const double ay = 0.5 * B * geom.xi_at(j) + gauge_lambda(field, geom.x(j), geom);
    for (std::size_t l = 0; l < n2; ++l) {
      const double ax = -0.5 * B * geom.eta_at(l);
      t.ux(j, l) = expi(-h1 * ax);
      t.uy(j, l) = expi(-h2 * ay);
    }
  }
  for (std::size_t l = 0; l < n2; ++l) t.twist_x[l] = expi(0.5 * B * geom.L1() * geom.eta_at(l));
  for (std::size_t j = 0; j < n1; ++j) t.twist_y[j] = expi(-0.5 * B * geom.L2() * geom.xi_at(j));
  return t;
}

class FdHamiltonian {
 public:
  explicit FdHamiltonian(FdTables tables, Exec exec = Exec::sequential()) : t_(std::move(tables)), exec_(exec) {}
  FdHamiltonian(const TorusGeometry& geom, const FieldSpec& field, const PotentialSpec& potential,
                Exec exec = Exec::sequential())
      : FdHamiltonian(build_fd_tables(geom, field, potential), exec) {}

  const FdTables& tables() const { return t_; }
  std::size_t dim() const { return t_.geom.size(); }

  void apply(std::span<const cplx> in, std::span<cplx> out) const {
    const std::size_t n1 = t_.geom.n1();
    const std::size_t n2 = t_.geom.n2();
    if (in.size() != n1 * n2 || out.size() != n1 * n2)
      throw std::invalid_argument("fd operator: vector length does not match grid");
    const double cx = 0.5 / (t_.geom.h1() * t_.geom.h1());
    const double cy = 0.5 / (t_.geom.h2() * t_.geom.h2());
    parallel_for(n1, exec_, [&](std::size_t jb, std::size_t je) {
      for (std::size_t j = jb; j < je; ++j) {
        const std::size_t jp = (j + 1 == n1) ? 0 : j + 1;
        const std::size_t jm = (j == 0) ? n1 - 1 : j - 1;
        for (std::size_t l = 0; l < n2; ++l) {
          const std::size_t lp = (l + 1 == n2) ? 0 : l + 1;
          const std::size_t lm = (l == 0) ? n2 - 1 : l - 1;
          const cplx psi = in[j * n2 + l];

          cplx right = in[jp * n2 + l];
          if (j + 1 == n1) right *= t_.twist_x[l];
          cplx left = in[jm * n2 + l];
          if (j == 0) left *= std::conj(t_.twist_x[l]);
          cplx up = in[j * n2 + lp];
          if (l + 1 == n2) up *= t_.twist_y[j];
          cplx down = in[j * n2 + lm];
          if (l == 0) down *= std::conj(t_.twist_y[j]);

          const cplx hx = 2.0 * psi - t_.ux(j, l) * right - std::conj(t_.ux(jm, l)) * left;
          const cplx hy = 2.0 * psi - t_.uy(j, l) * up - std::conj(t_.uy(j, lm)) * down;
          out[j * n2 + l] = cx * hx + cy * hy + t_.v(j, l) * psi;
        }
      }
    });
  }

  WaveFunction apply(const WaveFunction& psi) const {
    if (!(psi.geom == t_.geom)) throw std::invalid_argument("fd operator: wavefunction grid mismatch");
    WaveFunction out(psi.geom);
    apply(psi.values.span(), out.values.span());
    return out;
  }

 private:
  FdTables t_;
  Exec exec_;
};

inline WaveFunction apply_h_fd(const WaveFunction& psi, const FdTables& tables, Exec exec = Exec::sequential()) {
  return FdHamiltonian(tables, exec).apply(psi);
}

}  // namespace landau
