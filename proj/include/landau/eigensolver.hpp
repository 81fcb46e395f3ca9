#pragma once

// Matrix-free Hermitian eigensolver: thick-restart Lanczos with full
// two-pass Gram-Schmidt reorthogonalisation, plus small dense Jacobi
// solvers (real symmetric for the projected problem, complex Hermitian for
// the densified test oracle).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "landau/grid.hpp"

namespace landau {

/// Black-box Hermitian action y = A x on vectors of length dim.
struct LinOp {
  std::size_t dim = 0;
  std::function<void(std::span<const cplx>, std::span<cplx>)> apply;
};

/// Wraps any operator exposing dim() and apply(in, out). The operator must outlive the LinOp.
template <class Op>
LinOp make_linop(const Op& op) {
  return LinOp{op.dim(), [&op](std::span<const cplx> in, std::span<cplx> out) { op.apply(in, out); }};
}

struct SolverConfig {
  int k = 1;
  int m = 0;  ///< Krylov dimension; 0 selects max(2k + 10, 30)
  double tol = 1e-12;
  int max_restarts = 500;
  std::uint64_t seed = 1;
  std::optional<std::vector<cplx>> start;
  bool keep_vectors = false;

  int krylov_dim() const { return m > 0 ? m : std::max(2 * k + 10, 30); }
};

struct Spectrum {
  std::vector<double> eigenvalues;  ///< ascending
  std::vector<double> residuals;    ///< ||A v - lambda v|| / scale
  std::vector<bool> converged;
  std::vector<std::string> warnings;
  std::vector<std::vector<cplx>> eigenvectors;  ///< filled when keep_vectors
  double scale = 0.0;                           ///< largest Ritz value magnitude
  long iterations = 0;                          ///< operator applications
  int restarts = 0;

  bool all_converged() const { return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; }); }
};

// ---------------------------------------------------------------------------
// Dense helpers

/// Row-major square complex matrix.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<cplx> a;

  explicit DenseMatrix(std::size_t size = 0) : n(size), a(size * size) {}
  cplx& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  double frobenius() const {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return std::sqrt(s);
  }
  /// max |A - A^H| / ||A||_F
  double hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    const double f = frobenius();
    return f > 0.0 ? d / f : d;
  }
};

struct DenseEigen {
  std::vector<double> values;  ///< ascending
  DenseMatrix vectors;         ///< column i is the eigenvector of values[i]
};

/// Cyclic Jacobi for a complex Hermitian matrix.
inline DenseEigen hermitian_eigen(DenseMatrix A) {
  const std::size_t n = A.n;
  DenseMatrix V(n);
  for (std::size_t i = 0; i < n; ++i) V(i, i) = 1.0;
  const double total = A.frobenius();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(A(p, q));
    if (std::sqrt(2.0 * off) <= eps * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(A(p, q));
        if (r == 0.0) continue;
        const cplx ph = A(p, q) / r;  // e^{i phi}
        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, conj(ph)) * [[c, s], [-s, c]] on (p, q)
        const cplx gpp = c, gpq = s, gqp = -s * std::conj(ph), gqq = c * std::conj(ph);
        for (std::size_t i = 0; i < n; ++i) {  // A <- A G
          const cplx aip = A(i, p), aiq = A(i, q);
          A(i, p) = aip * gpp + aiq * gqp;
          A(i, q) = aip * gpq + aiq * gqq;
        }
        for (std::size_t i = 0; i < n; ++i) {  // A <- G^H A
          const cplx api = A(p, i), aqi = A(q, i);
          A(p, i) = std::conj(gpp) * api + std::conj(gqp) * aqi;
          A(q, i) = std::conj(gpq) * api + std::conj(gqq) * aqi;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
        for (std::size_t i = 0; i < n; ++i) {  // V <- V G
          const cplx vip = V(i, p), viq = V(i, q);
          V(i, p) = vip * gpp + viq * gqp;
          V(i, q) = vip * gpq + viq * gqq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return A(i, i).real() < A(j, j).real(); });
  DenseEigen out{std::vector<double>(n), DenseMatrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = A(order[c], order[c]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, c) = V(i, order[c]);
  }
  return out;
}

namespace detail {

/// Cyclic Jacobi for a real symmetric row-major matrix; returns ascending
/// values and column eigenvectors in `vecs`.
inline std::vector<double> symmetric_eigen(std::vector<double> a, std::size_t n, std::vector<double>& vecs) {
  vecs.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) vecs[i * n + i] = 1.0;
  double total = 0.0;
  for (double x : a) total += x * x;
  total = std::sqrt(total);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off == 0.0 || std::sqrt(2.0 * off) <= eps * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a[i * n + p], aiq = a[i * n + q];
          a[i * n + p] = c * aip - s * aiq;
          a[i * n + q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a[p * n + i], aqi = a[q * n + i];
          a[p * n + i] = c * api - s * aqi;
          a[q * n + i] = s * api + c * aqi;
        }
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = vecs[i * n + p], viq = vecs[i * n + q];
          vecs[i * n + p] = c * vip - s * viq;
          vecs[i * n + q] = s * vip + c * viq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a[i * n + i] < a[j * n + j]; });
  std::vector<double> vals(n), sorted(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    vals[c] = a[order[c] * n + order[c]];
    for (std::size_t i = 0; i < n; ++i) sorted[i * n + c] = vecs[i * n + order[c]];
  }
  vecs = std::move(sorted);
  return vals;
}

using Vec = std::vector<cplx>;

inline cplx dot(std::span<const cplx> u, std::span<const cplx> v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline double nrm2(std::span<const cplx> u) {
  double s = 0.0;
  for (const auto& z : u) s += std::norm(z);
  return std::sqrt(s);
}

inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline bool finite(std::span<const cplx> u) {
  return std::all_of(u.begin(), u.end(), [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

/// Two-pass classical Gram-Schmidt of w against `basis[0..count)` and `locked`;
/// returns the accumulated coefficients against `basis`.
inline std::vector<cplx> orthogonalize(Vec& w, const std::vector<Vec>& basis, std::size_t count,
                                       const std::vector<Vec>& locked) {
  std::vector<cplx> h(count, 0.0);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : locked) axpy(-dot(q, w), q, w);
    std::vector<cplx> c(count);
    for (std::size_t i = 0; i < count; ++i) c[i] = dot(basis[i], w);
    for (std::size_t i = 0; i < count; ++i) {
      axpy(-c[i], basis[i], w);
      h[i] += c[i];
    }
  }
  return h;
}

inline Vec random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(dim);
  for (auto& z : v) {
    const double re = u(rng);
    z = cplx(re, u(rng));
  }
  return v;
}

/// Random unit vector orthogonal to `basis[0..count)` and `locked`.
inline Vec fresh_direction(std::size_t dim, std::mt19937_64& rng, const std::vector<Vec>& basis, std::size_t count,
                           const std::vector<Vec>& locked) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec v = random_vector(dim, rng);
    orthogonalize(v, basis, count, locked);
    const double nv = nrm2(v);
    if (nv > 1e-8) {
      for (auto& z : v) z /= nv;
      return v;
    }
  }
  throw std::runtime_error("eigensolver: could not generate an independent direction");
}

struct CoreResult {
  std::vector<double> values;
  std::vector<Vec> vectors;
  std::vector<double> estimates;  ///< Lanczos residual estimates |beta y_m|
  bool converged = false;
  double scale = 0.0;
  long matvecs = 0;
  int restarts = 0;
};

/// Thick-restart Lanczos for the `want` smallest eigenpairs of A restricted
/// to the orthogonal complement of `locked`. `start` must be a unit vector
/// orthogonal to `locked`.
inline CoreResult lanczos_core(const LinOp& op, std::size_t want, std::size_t m, double tol, int max_restarts,
                               Vec start, const std::vector<Vec>& locked, std::mt19937_64& rng) {
  const std::size_t dim = op.dim;
  std::vector<Vec> V(m + 1, Vec(dim));
  std::vector<double> T(m * m, 0.0);
  V[0] = std::move(start);
  std::size_t nkeep = 0;
  CoreResult res;
  Vec w(dim);
  const double tiny = 64.0 * std::numeric_limits<double>::epsilon();

  for (int restart = 0;; ++restart) {
    double beta = 0.0;
    for (std::size_t j = nkeep; j < m; ++j) {
      op.apply(V[j], w);
      ++res.matvecs;
      if (!finite(w)) throw std::runtime_error("eigensolver: operator produced NaN or Inf");
      const double wnorm = nrm2(w);
      auto h = orthogonalize(w, V, j + 1, locked);
      for (std::size_t i = 0; i <= j; ++i) {
        T[i * m + j] = h[i].real();
        T[j * m + i] = h[i].real();
      }
      beta = nrm2(w);
      if (beta <= tiny * std::max(wnorm, 1.0)) {
        // Invariant subspace reached: continue with a fresh direction.
        beta = 0.0;
        if (j + 1 + locked.size() >= dim)
          V[j + 1].assign(dim, 0.0);  // the whole space is spanned
        else
          V[j + 1] = fresh_direction(dim, rng, V, j + 1, locked);
      } else {
        for (std::size_t i = 0; i < dim; ++i) V[j + 1][i] = w[i] / beta;
      }
    }

    std::vector<double> Y;
    const auto theta = symmetric_eigen(T, m, Y);
    double scale = 0.0;
    for (double t : theta) scale = std::max(scale, std::abs(t));
    res.scale = scale;

    std::vector<double> est(m);
    for (std::size_t i = 0; i < m; ++i) est[i] = std::abs(beta * Y[(m - 1) * m + i]);
    bool done = true;
    for (std::size_t i = 0; i < want; ++i)
      if (est[i] > tol * scale) done = false;

    if (done || restart >= max_restarts) {
      res.converged = done;
      res.restarts = restart;
      res.values.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(want));
      res.estimates.assign(est.begin(), est.begin() + static_cast<std::ptrdiff_t>(want));
      res.vectors.assign(want, Vec(dim, 0.0));
      for (std::size_t c = 0; c < want; ++c)
        for (std::size_t i = 0; i < m; ++i) axpy(Y[i * m + c], V[i], res.vectors[c]);
      return res;
    }

    // Keep the low end generously and the top Ritz pair, which pins the scale.
    std::size_t keep_low = std::min(m - 3, want + (m - want) / 2);
    keep_low = std::max(keep_low, std::min(want, m - 2));
    const bool keep_top = keep_low + 3 <= m;
    std::vector<std::size_t> sel(keep_low);
    std::iota(sel.begin(), sel.end(), 0);
    if (keep_top) sel.push_back(m - 1);
    nkeep = sel.size();

    std::vector<Vec> kept(nkeep, Vec(dim, 0.0));
    for (std::size_t c = 0; c < nkeep; ++c)
      for (std::size_t i = 0; i < m; ++i) axpy(Y[i * m + sel[c]], V[i], kept[c]);
    Vec resid = std::move(V[m]);
    std::fill(T.begin(), T.end(), 0.0);
    for (std::size_t c = 0; c < nkeep; ++c) {
      V[c] = std::move(kept[c]);
      T[c * m + c] = theta[sel[c]];
    }
    if (beta == 0.0 && nkeep + locked.size() < dim) resid = fresh_direction(dim, rng, V, nkeep, locked);
    V[nkeep] = std::move(resid);
    for (std::size_t c = nkeep + 1; c <= m; ++c) V[c].assign(dim, 0.0);
  }
}

}  // namespace detail

/// ||A v - lambda v||_2 for a unit vector v.
inline double residual(const LinOp& op, double lambda, std::span<const cplx> v) {
  if (v.size() != op.dim) throw std::invalid_argument("residual: vector length mismatch");
  if (std::abs(detail::nrm2(v) - 1.0) > 1e-12) throw std::invalid_argument("residual: vector is not normalised");
  std::vector<cplx> w(op.dim);
  op.apply(v, w);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += std::norm(w[i] - lambda * v[i]);
  return std::sqrt(s);
}

/// Dense matrix of the operator, column i = A e_i.
inline DenseMatrix densify(const LinOp& op, std::size_t guard = 4096) {
  if (op.dim > guard) throw std::invalid_argument("densify: operator dimension exceeds guard");
  DenseMatrix M(op.dim);
  std::vector<cplx> e(op.dim, 0.0), col(op.dim);
  for (std::size_t c = 0; c < op.dim; ++c) {
    e[c] = 1.0;
    op.apply(e, col);
    e[c] = 0.0;
    for (std::size_t r = 0; r < op.dim; ++r) M(r, c) = col[r];
  }
  if (M.hermiticity_defect() > 1e-12) throw std::runtime_error("densify: operator is not Hermitian");
  return M;
}

/// The k smallest eigenvalues of a Hermitian operator.
///
/// After the main thick-restart run converges, the converged pairs are locked
/// and a deflated run from a fresh random direction looks for anything below
/// the k-th value; a single Krylov sequence only sees one direction per
/// degenerate eigenspace, so copies missed this way are recovered here.
inline Spectrum lanczos_smallest(const LinOp& op, const SolverConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("eigensolver: k must be >= 1");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("eigensolver: tol must be positive");
  if (cfg.max_restarts < 0) throw std::invalid_argument("eigensolver: max_restarts must be >= 0");
  const std::size_t dim = op.dim;
  const auto k = static_cast<std::size_t>(cfg.k);
  std::size_t m = static_cast<std::size_t>(cfg.krylov_dim());
  if (cfg.m > 0 && m > dim) throw std::invalid_argument("eigensolver: Krylov dimension exceeds operator dimension");
  m = std::min(m, dim);
  if (m < k + 3) throw std::invalid_argument("eigensolver: Krylov dimension must exceed k + 2");

  std::mt19937_64 rng(cfg.seed);
  detail::Vec start;
  if (cfg.start) {
    if (cfg.start->size() != dim) throw std::invalid_argument("eigensolver: start vector length mismatch");
    start = *cfg.start;
  } else {
    start = detail::random_vector(dim, rng);
  }
  const double sn = detail::nrm2(start);
  if (!(sn > 0.0) || !detail::finite(start)) throw std::invalid_argument("eigensolver: start vector is zero or non-finite");
  for (auto& z : start) z /= sn;

  Spectrum out;
  auto main = detail::lanczos_core(op, k, m, cfg.tol, cfg.max_restarts, std::move(start), {}, rng);
  out.iterations = main.matvecs;
  out.restarts = main.restarts;
  double scale = main.scale;

  std::vector<double> vals = std::move(main.values);
  std::vector<detail::Vec> vecs = std::move(main.vectors);

  if (main.converged) {
    // Multiplicity check on the deflated operator.
    for (std::size_t round = 0; round <= k; ++round) {
      if (dim <= vecs.size() + 3) break;
      const std::size_t mv = std::min<std::size_t>(std::max<std::size_t>(20, m / 2), dim - vecs.size());
      auto dir = detail::fresh_direction(dim, rng, vecs, 0, vecs);
      auto probe = detail::lanczos_core(op, 1, mv, cfg.tol, cfg.max_restarts, std::move(dir), vecs, rng);
      out.iterations += probe.matvecs;
      out.restarts += probe.restarts;
      if (!probe.converged) {
        out.warnings.emplace_back("multiplicity check did not converge");
        break;
      }
      if (!(probe.values[0] < vals.back() - cfg.tol * scale)) break;
      // A missed eigenvalue below the current k-th: insert, drop the top.
      const auto pos = std::upper_bound(vals.begin(), vals.end(), probe.values[0]) - vals.begin();
      vals.insert(vals.begin() + pos, probe.values[0]);
      vecs.insert(vecs.begin() + pos, std::move(probe.vectors[0]));
      vals.pop_back();
      vecs.pop_back();
    }
  }

  out.scale = scale;
  out.eigenvalues = vals;
  out.residuals.resize(k);
  out.converged.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto& v = vecs[i];
    const double nv = detail::nrm2(v);
    for (auto& z : v) z /= nv;
    const double r = residual(op, vals[i], v) / scale;
    out.residuals[i] = r;
    out.converged[i] = main.converged && r <= cfg.tol;
  }
  out.iterations += static_cast<long>(k);
  if (!main.converged) out.warnings.emplace_back("eigensolver did not converge within max_restarts");
  if (cfg.keep_vectors) out.eigenvectors = std::move(vecs);
  return out;
}

}  // namespace landau
