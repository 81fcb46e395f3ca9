#include <gtest/gtest.h>

#include "landau/analysis.hpp"
#include "landau/eigensolver.hpp"
#include "landau/fd_op.hpp"
#include "landau/spectral_op.hpp"
#include "support/oracles.hpp"

using namespace landau;

namespace {

LinOp diagonal(std::vector<double> d) {
  const auto n = d.size();
  return LinOp{n, [d = std::move(d)](std::span<const cplx> in, std::span<cplx> out) {
                 for (std::size_t i = 0; i < in.size(); ++i) out[i] = d[i] * in[i];
               }};
}

SolverConfig with_k(int k) {
  SolverConfig c;
  c.k = k;
  return c;
}

}  // namespace

TEST(Lanczos, DiagonalOneToHundred) {
  std::vector<double> d(100);
  for (int i = 0; i < 100; ++i) d[static_cast<std::size_t>(i)] = 100 - i;
  const auto s = lanczos_smallest(diagonal(d), with_k(5));
  ASSERT_TRUE(s.all_converged());
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(i)], i + 1, 1e-11);
  EXPECT_NEAR(s.scale, 100.0, 1e-9);
}

TEST(Lanczos, RecoversRepeatedEigenvalues) {
  std::vector<double> d(200);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = 2.0 + static_cast<double>(i / 5);
  const auto s = lanczos_smallest(diagonal(d), with_k(12));
  ASSERT_TRUE(s.all_converged());
  for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(s.eigenvalues[i], 2.0 + static_cast<double>(i / 5), 1e-11) << i;
}

TEST(Lanczos, LandauLevelsOnSixteenGrid) {
  TorusGeometry g(2, 2, 16, 16);
  SpectralHamiltonian H(g, field_from_flux(4, g), NoPotential{});
  const auto s = lanczos_smallest(make_linop(H), with_k(20));
  ASSERT_TRUE(s.all_converged());
  const auto exact = oracle::landau_levels(4, 2 * oracle::pi, 20);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(s.eigenvalues[i], exact[i], 1e-10 * exact[i]) << i;
  for (double r : s.residuals) EXPECT_LE(r, 1e-12);
}

TEST(Lanczos, ThetaStartGivesSameSpectrum) {
  TorusGeometry g(2, 2, 16, 16);
  const auto f = field_from_flux(4, g);
  SpectralHamiltonian H(g, f, NoPotential{});
  auto cfg = with_k(8);
  const auto a = lanczos_smallest(make_linop(H), cfg);
  cfg.start = theta_initial(g, f, default_theta_params(g)).values.vec();
  const auto b = lanczos_smallest(make_linop(H), cfg);
  ASSERT_TRUE(b.all_converged());
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i], 1e-11 * a.scale);
}

TEST(Lanczos, DeterministicAtFixedSeed) {
  TorusGeometry g(2, 2, 12, 12);
  SpectralHamiltonian H(g, field_from_flux(3, g, 0.2, 2), NoPotential{});
  const auto a = lanczos_smallest(make_linop(H), with_k(6));
  const auto b = lanczos_smallest(make_linop(H), with_k(6));
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.residuals, b.residuals);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Lanczos, LargerKrylovSpaceSameAnswer) {
  TorusGeometry g(2, 2, 12, 12);
  SpectralHamiltonian H(g, field_from_flux(3, g, 0.2, 2), HarmonicPotential{2.0});
  auto cfg = with_k(6);
  const auto a = lanczos_smallest(make_linop(H), cfg);
  cfg.m = 80;
  const auto b = lanczos_smallest(make_linop(H), cfg);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i], 1e-11 * a.scale);
}

TEST(Lanczos, ReportsNonConvergence) {
  TorusGeometry g(2, 2, 32, 32);
  SpectralHamiltonian H(g, field_from_flux(4, g), NoPotential{});
  auto cfg = with_k(20);
  cfg.max_restarts = 0;
  const auto s = lanczos_smallest(make_linop(H), cfg);
  EXPECT_FALSE(s.all_converged());
  EXPECT_FALSE(s.warnings.empty());
  EXPECT_EQ(s.eigenvalues.size(), 20u);
}

TEST(Lanczos, Preconditions) {
  const auto op = diagonal(std::vector<double>(10, 1.0));
  EXPECT_THROW(lanczos_smallest(op, with_k(0)), std::invalid_argument);
  EXPECT_THROW(lanczos_smallest(op, with_k(8)), std::invalid_argument);
  auto cfg = with_k(2);
  cfg.m = 11;
  EXPECT_THROW(lanczos_smallest(op, cfg), std::invalid_argument);
  cfg = with_k(2);
  cfg.tol = 0;
  EXPECT_THROW(lanczos_smallest(op, cfg), std::invalid_argument);
  cfg = with_k(2);
  cfg.start = std::vector<cplx>(10, 0.0);
  EXPECT_THROW(lanczos_smallest(op, cfg), std::invalid_argument);
}

struct DenseCase {
  std::size_t n1, n2;
  double L1, L2;
  std::int64_t N;
  double lambda;
  int nu;
  double sigma;
  double omega;
  bool fd;
};

class DenseOracle : public ::testing::TestWithParam<DenseCase> {};

// The k lowest Lanczos values agree with a full dense diagonalisation.
TEST_P(DenseOracle, LowestValuesAgree) {
  const auto c = GetParam();
  TorusGeometry g(c.L1, c.L2, c.n1, c.n2);
  const auto f = field_from_flux(c.N, g, c.lambda, c.nu, c.sigma);
  PotentialSpec pot = NoPotential{};
  if (c.omega > 0) pot = HarmonicPotential{c.omega};
  std::vector<double> want;
  Spectrum s;
  const int k = 10;
  if (c.fd) {
    FdHamiltonian H(g, f, pot);
    want = oracle::eigenvalues(oracle::matrix_of(make_linop(H)));
    s = lanczos_smallest(make_linop(H), with_k(k));
  } else {
    SpectralHamiltonian H(g, f, pot);
    want = oracle::eigenvalues(oracle::matrix_of(make_linop(H)));
    s = lanczos_smallest(make_linop(H), with_k(k));
  }
  ASSERT_TRUE(s.all_converged());
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
    EXPECT_NEAR(s.eigenvalues[i], want[i], 1e-11 * s.scale) << i;
}

INSTANTIATE_TEST_SUITE_P(
    Grids, DenseOracle,
    ::testing::Values(DenseCase{4, 4, 2, 2, 1, 0, 1, 0, 0, false}, DenseCase{8, 8, 2, 2, 4, 0, 1, 0, 0, false},
                      DenseCase{6, 10, 2, 3, 3, 0, 1, 0, 0, false}, DenseCase{10, 10, 2, 2, 4, 0.2, 2, 0, 0, false},
                      DenseCase{12, 12, 3, 3, 2, 0, 1, 0, 1.0, false}, DenseCase{12, 16, 2, 2, 6, 0.1, 1, 0.1, 0, false},
                      DenseCase{16, 16, 2, 2, 4, 0.1, 4, 0, 0, false}, DenseCase{20, 20, 2, 2, 3, 0, 1, 0, 0, false},
                      DenseCase{20, 20, 4, 4, 0, 0, 1, 0, 2.0, false}, DenseCase{16, 16, 2, 2, 4, 0.1, 2, 0, 0, true},
                      DenseCase{20, 20, 3, 3, 5, 0, 1, 0, 1.0, true}),
    [](const ::testing::TestParamInfo<DenseCase>& i) {
      const auto& c = i.param;
      return std::string(c.fd ? "fd" : "spectral") + "_grid" + std::to_string(c.n1) + "x" + std::to_string(c.n2) +
             "_N" + std::to_string(c.N) + (c.lambda != 0 ? "_undulating" : "") + (c.sigma != 0 ? "_harmonic2" : "") +
             (c.omega > 0 ? "_well" : "");
    });

TEST(Residual, ExactEigenvectorAndNormalisation) {
  const auto op = diagonal({1, 2, 3, 4});
  std::vector<cplx> e1{0, 1, 0, 0};
  EXPECT_EQ(residual(op, 2.0, e1), 0.0);
  EXPECT_NEAR(residual(op, 1.0, e1), 1.0, 1e-15);
  EXPECT_THROW(residual(op, 2.0, std::vector<cplx>{0, 2, 0, 0}), std::invalid_argument);
  EXPECT_THROW(residual(op, 2.0, std::vector<cplx>{0, 1, 0}), std::invalid_argument);
}

TEST(Densify, DiagonalAndGuards) {
  const auto M = densify(diagonal({1, 2, 3}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(M(i, j), i == j ? cplx(static_cast<double>(i) + 1) : cplx(0));
  EXPECT_THROW(densify(diagonal(std::vector<double>(50, 1.0)), 40), std::invalid_argument);
  LinOp skew{2, [](std::span<const cplx> in, std::span<cplx> out) {
               out[0] = in[1];
               out[1] = -in[0];
             }};
  EXPECT_THROW(densify(skew), std::runtime_error);
}

TEST(HermitianEigen, MatchesReferenceOnRandomMatrices) {
  oracle::Gen gen(31);
  for (int t = 0; t < 5; ++t) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(2, 30));
    DenseMatrix A(n);
    oracle::Mat R(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const cplx z = i == j ? cplx(gen.uniform(-5, 5)) : cplx(gen.uniform(-1, 1), gen.uniform(-1, 1));
        A(i, j) = z;
        A(j, i) = std::conj(z);
        R(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z;
        R(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(z);
      }
    const auto got = hermitian_eigen(A);
    const auto want = oracle::eigenvalues(R);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got.values[i], want[i], 1e-12 * 10);
    // A v = lambda v for every returned column.
    for (std::size_t c = 0; c < n; ++c) {
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += A(i, j) * got.vectors(j, c);
        r = std::max(r, std::abs(s - got.values[c] * got.vectors(i, c)));
      }
      EXPECT_LE(r, 1e-11);
    }
  }
}

// Closed form for a uniform field plus a harmonic well: two oscillators with
// frequencies sqrt(omega^2 + B^2/4) +- B/2.
TEST(HarmonicWell, ClosedFormAgainstDenseOracle) {
  const double B = 2.0, omega = 3.0, L = std::sqrt(12 * oracle::pi);
  TorusGeometry g(L, L, 20, 20);
  const auto f = field_from_flux(12, g);
  ASSERT_NEAR(f.B0, B, 1e-12);
  SpectralHamiltonian H(g, f, HarmonicPotential{omega});
  const auto dense = oracle::eigenvalues(oracle::matrix_of(make_linop(H)));
  const double r = std::sqrt(omega * omega + B * B / 4);
  const auto want = oracle::oscillator_levels(r + B / 2, r - B / 2, 6);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(dense[i], want[i], 1e-3 * want[i]) << i;
}
