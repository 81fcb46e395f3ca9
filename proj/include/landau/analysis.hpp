#pragma once

// Eigenvalue post-processing: degeneracy clustering, Landau units, the
// fine-structure degeneracy pattern and the sine gap law.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace landau {

struct Cluster {
  double mean = 0.0;
  int count = 0;
  double spread = 0.0;  ///< max - min inside the cluster
};

struct ClusterReport {
  std::vector<Cluster> clusters;
  std::vector<double> gaps;  ///< mean_{i+1} - mean_i
  double tol_used = 0.0;
  int total_count = 0;

  std::vector<int> counts() const {
    std::vector<int> c;
    for (const auto& cl : clusters) c.push_back(cl.count);
    return c;
  }
  /// Cluster index of each input eigenvalue.
  std::vector<int> labels() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < clusters.size(); ++i) out.insert(out.end(), clusters[i].count, static_cast<int>(i));
    return out;
  }
};

/// Greedy sweep: a new cluster starts where the step to the previous value exceeds tol_abs.
inline ClusterReport cluster(std::span<const double> eigs, double tol_abs) {
  if (!std::is_sorted(eigs.begin(), eigs.end())) throw std::invalid_argument("cluster: input must be ascending");
  ClusterReport r;
  r.tol_used = tol_abs;
  r.total_count = static_cast<int>(eigs.size());
  std::size_t start = 0;
  for (std::size_t i = 1; i <= eigs.size(); ++i) {
    if (i == eigs.size() || eigs[i] - eigs[i - 1] > tol_abs) {
      const auto first = eigs.begin() + static_cast<std::ptrdiff_t>(start);
      const auto last = eigs.begin() + static_cast<std::ptrdiff_t>(i);
      Cluster c;
      c.count = static_cast<int>(i - start);
      c.mean = std::accumulate(first, last, 0.0) / c.count;
      c.spread = eigs[i - 1] - eigs[start];
      r.clusters.push_back(c);
      start = i;
    }
  }
  for (std::size_t i = 1; i < r.clusters.size(); ++i) r.gaps.push_back(r.clusters[i].mean - r.clusters[i - 1].mean);
  return r;
}

/// Energies in cyclotron units, E / B0; Landau levels land on n + 1/2.
inline std::vector<double> landau_units(std::span<const double> eigs, double B0) {
  if (!(B0 > 0.0)) throw std::invalid_argument("landau_units: B0 must be positive");
  std::vector<double> out(eigs.begin(), eigs.end());
  for (auto& e : out) e /= B0;
  return out;
}

/// Exact uniform-field torus spectrum: (floor(j/N) + 1/2) B0 for j = 0..count-1.
inline std::vector<double> exact_landau_spectrum(std::int64_t N, double B0, std::size_t count) {
  if (N < 1) throw std::invalid_argument("exact_landau_spectrum: N must be >= 1");
  std::vector<double> e(count);
  for (std::size_t j = 0; j < count; ++j)
    e[j] = (static_cast<double>(static_cast<std::int64_t>(j) / N) + 0.5) * B0;
  return e;
}

inline double average_relative_error(std::span<const double> got, std::span<const double> want) {
  if (got.size() != want.size() || got.empty()) throw std::invalid_argument("average_relative_error: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) s += std::abs(got[i] - want[i]) / std::abs(want[i]);
  return s / static_cast<double>(got.size());
}

inline double max_relative_error(std::span<const double> got, std::span<const double> want) {
  if (got.size() != want.size() || got.empty()) throw std::invalid_argument("max_relative_error: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) s = std::max(s, std::abs(got[i] - want[i]) / std::abs(want[i]));
  return s;
}

/// max - min of the lowest `count` eigenvalues.
inline double degeneracy_spread(std::span<const double> eigs, std::size_t count) {
  if (count == 0 || count > eigs.size()) throw std::invalid_argument("degeneracy_spread: count out of range");
  const auto [lo, hi] = std::minmax_element(eigs.begin(), eigs.begin() + static_cast<std::ptrdiff_t>(count));
  return *hi - *lo;
}

// ---------------------------------------------------------------------------
// Fine structure of a Landau band

struct GapRatio {
  int boundary = 0;  ///< states below the gap
  double gap = 0.0;
  double ratio = 0.0;  ///< gap / sin(boundary * pi / N0)
};

struct FineStructureReport {
  int N0 = 0;
  int nu = 1;
  int predicted_degeneracy = 0;  ///< gcd(N0, 2 nu)
  int observed_degeneracy = 0;   ///< largest observed cluster
  std::vector<int> observed_pattern;
  bool match = false;
  std::vector<GapRatio> gap_ratios;
  ClusterReport clusters;
};

/// Clusters one Landau band of N0 values. Values closer than deg_rel * (band
/// width) are degenerate; a band whose whole spread is within deg_rel of its
/// mean energy counts as unsplit.
inline FineStructureReport fine_structure_report(std::span<const double> band, int N0, int nu, double deg_rel = 1e-9) {
  if (N0 < 1 || band.size() != static_cast<std::size_t>(N0))
    throw std::invalid_argument("fine_structure_report: band size must equal N0");
  if (nu < 1) throw std::invalid_argument("fine_structure_report: nu must be >= 1");
  std::vector<double> b(band.begin(), band.end());
  std::sort(b.begin(), b.end());
  const double width = b.back() - b.front();
  const double mean = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
  const bool unsplit = width <= deg_rel * std::abs(mean);
  const double tol = unsplit ? width : deg_rel * width;

  FineStructureReport r;
  r.N0 = N0;
  r.nu = nu;
  r.predicted_degeneracy = std::gcd(N0, 2 * nu);
  r.clusters = cluster(b, tol);
  r.observed_pattern = r.clusters.counts();
  r.observed_degeneracy = *std::max_element(r.observed_pattern.begin(), r.observed_pattern.end());
  r.match = r.observed_degeneracy == r.predicted_degeneracy;
  int below = 0;
  for (std::size_t i = 0; i + 1 < r.clusters.clusters.size(); ++i) {
    below += r.clusters.clusters[i].count;
    GapRatio g;
    g.boundary = below;
    g.gap = r.clusters.gaps[i];
    g.ratio = g.gap / std::sin(below * std::numbers::pi / N0);
    r.gap_ratios.push_back(g);
  }
  return r;
}

struct GapLawResult {
  double spread = 0.0;  ///< (max - min) / mean of gap / sin(n pi / N0)
  std::vector<int> indices;
};

inline GapLawResult gap_law_check(const FineStructureReport& r) {
  if (r.gap_ratios.size() < 2) throw std::invalid_argument("gap_law_check: need at least two gaps");
  GapLawResult out;
  double lo = r.gap_ratios.front().ratio, hi = lo, sum = 0.0;
  for (const auto& g : r.gap_ratios) {
    lo = std::min(lo, g.ratio);
    hi = std::max(hi, g.ratio);
    sum += g.ratio;
    out.indices.push_back(g.boundary);
  }
  out.spread = (hi - lo) / (sum / static_cast<double>(r.gap_ratios.size()));
  return out;
}

/// max_i |g_i - g_{n-1-i}| / max_i g_i over the sub-level gaps.
inline double gap_palindrome_defect(const FineStructureReport& r) {
  if (r.gap_ratios.empty()) return 0.0;
  const auto n = r.gap_ratios.size();
  double d = 0.0, gmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d = std::max(d, std::abs(r.gap_ratios[i].gap - r.gap_ratios[n - 1 - i].gap));
    gmax = std::max(gmax, std::abs(r.gap_ratios[i].gap));
  }
  return gmax > 0.0 ? d / gmax : 0.0;
}

}  // namespace landau
