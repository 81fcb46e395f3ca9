#include <gtest/gtest.h>

#include "landau/spectral_op.hpp"
#include "landau/state.hpp"
#include "support/oracles.hpp"

using namespace landau;

TEST(Inner, ConstantStateHasAreaNorm) {
  TorusGeometry g(2, 3, 8, 12);
  WaveFunction one(g);
  for (auto& z : one.values) z = 1.0;
  EXPECT_NEAR(inner(one, one).real(), 6.0, 1e-13);
  EXPECT_NEAR(norm(one), std::sqrt(6.0), 1e-13);
  EXPECT_EQ(max_modulus(one), 1.0);
}

TEST(Inner, ConjugateLinearInFirstSlot) {
  TorusGeometry g(2, 2, 8, 8);
  oracle::Gen gen(3);
  auto u = gen.state(g), v = gen.state(g);
  auto iu = u;
  for (auto& z : iu.values) z *= cplx(0, 1);
  const cplx a = inner(iu, v), b = inner(u, v);
  EXPECT_NEAR(std::abs(a - cplx(0, -1) * b), 0.0, 1e-13);
}

TEST(Inner, GridMismatchThrows) {
  WaveFunction a(TorusGeometry(2, 2, 8, 8)), b(TorusGeometry(2, 2, 8, 10));
  EXPECT_THROW(inner(a, b), std::invalid_argument);
  EXPECT_THROW(WaveFunction(TorusGeometry(2, 2, 8, 8), ComplexField(8, 6)), std::invalid_argument);
}

TEST(InnerProperty, HermitianSymmetryAndCauchySchwarz) {
  oracle::Gen gen(4);
  for (int t = 0; t < 100; ++t) {
    TorusGeometry g(gen.uniform(0.5, 4), gen.uniform(0.5, 4), gen.even(4, 16), gen.even(4, 16));
    auto u = gen.state(g), v = gen.state(g);
    EXPECT_NEAR(std::abs(inner(u, v) - std::conj(inner(v, u))), 0.0, 1e-13 * norm(u) * norm(v));
    EXPECT_LE(std::abs(inner(u, v)), norm(u) * norm(v) * (1 + 1e-14));
    EXPECT_GE(inner(u, u).real(), 0.0);
  }
}

// The analytic theta sum satisfies both seam conditions for every integer flux.
TEST(ThetaProperty, SeamResidualVanishes) {
  oracle::Gen gen(5);
  for (int t = 0; t < 40; ++t) {
    TorusGeometry g(gen.uniform(1, 4), gen.uniform(1, 4), gen.even(8, 16), gen.even(8, 16));
    const auto f = field_from_flux(gen.integer(0, 9), g);
    auto p = default_theta_params(g);
    p.center = std::pair{gen.uniform(0, g.L1()), gen.uniform(0, g.L2())};
    const auto r = seam_residual(g, f, p);
    EXPECT_LE(r.boundary_x, 1e-12 * r.max_modulus);
    EXPECT_LE(r.boundary_y, 1e-12 * r.max_modulus);
  }
}

TEST(Theta, ZeroFluxSeamIsExact) {
  TorusGeometry g(2, 2, 16, 16);
  const auto r = seam_residual(g, field_from_flux(0, g), default_theta_params(g));
  EXPECT_LE(r.relative(), 1e-15);
}

TEST(Theta, SharedPhaseBreaksSeam) {
  TorusGeometry g(2, 2, 16, 16);
  auto p = default_theta_params(g);
  p.phase = ThetaPhase::shared;
  p.center = std::pair{0.1, 1.9};
  const auto r = seam_residual(g, field_from_flux(4, g), p);
  EXPECT_GT(r.relative(), 1e-6);
}

TEST(Theta, StableInImageCount) {
  TorusGeometry g(2, 2, 16, 16);
  const auto f = field_from_flux(4, g);
  auto p3 = default_theta_params(g);
  auto p5 = p3;
  p5.n_max = 5;
  const auto a = theta_initial(g, f, p3), b = theta_initial(g, f, p5);
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_LE(std::abs(a.values[i] - b.values[i]), 1e-13);
  EXPECT_NEAR(norm(a), 1.0, 1e-14);
}

TEST(Theta, Preconditions) {
  TorusGeometry g(2, 2, 16, 16);
  EXPECT_THROW(theta_initial(g, field_from_strength(3.3), default_theta_params(g)), std::invalid_argument);
  auto p = default_theta_params(g);
  p.width = 0.6;
  EXPECT_THROW(theta_initial(g, field_from_flux(4, g), p), std::invalid_argument);
  p = default_theta_params(g);
  p.n_max = 0;
  EXPECT_THROW(theta_initial(g, field_from_flux(4, g), p), std::invalid_argument);
  p = default_theta_params(g);
  p.width = 0.45;
  p.n_max = 1;
  EXPECT_THROW(theta_initial(g, field_from_flux(4, g), p), std::invalid_argument);
}

TEST(Translate, FullTurnIsIdentityAndNormPreserved) {
  TorusGeometry g(2, 2, 16, 16);
  const auto f = field_from_flux(4, g);
  oracle::Gen gen(6);
  auto psi = gen.state(g);
  const auto full = magnetic_translate(psi, 16, f);
  for (std::size_t i = 0; i < psi.values.size(); ++i) EXPECT_LE(std::abs(full.values[i] - psi.values[i]), 1e-12);
  for (std::int64_t s : {4, -4, 8, 12}) EXPECT_NEAR(norm(magnetic_translate(psi, s, f)), norm(psi), 1e-12);
}

TEST(Translate, Preconditions) {
  TorusGeometry g(2, 2, 16, 16);
  WaveFunction psi(g);
  EXPECT_THROW(magnetic_translate(psi, 3, field_from_flux(4, g)), std::invalid_argument);
  EXPECT_THROW(magnetic_translate(psi, 4, field_from_flux(4, g, 0.1, 1)), std::invalid_argument);
  EXPECT_THROW(magnetic_translate(psi, 4, field_from_strength(3.3)), std::invalid_argument);
}

// Magnetic translations by L1/N commute with the uniform-field Hamiltonian on
// well-resolved states.
TEST(TranslateProperty, CommutesWithHamiltonian) {
  TorusGeometry g(2, 2, 32, 32);
  const auto f = field_from_flux(4, g);
  SpectralHamiltonian H(g, f, NoPotential{});
  oracle::Gen gen(7);
  for (int t = 0; t < 10; ++t) {
    auto p = default_theta_params(g);
    p.width = 0.45;
    p.center = std::pair{gen.uniform(0, 2), gen.uniform(0, 2)};
    const auto psi = theta_initial(g, f, p);
    const auto a = H.apply(magnetic_translate(psi, 8, f));
    const auto b = magnetic_translate(H.apply(psi), 8, f);
    double d = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      d = std::max(d, std::abs(a.values[i] - b.values[i]));
      scale = std::max(scale, std::abs(b.values[i]));
    }
    EXPECT_LE(d, 1e-10 * scale);
  }
}
