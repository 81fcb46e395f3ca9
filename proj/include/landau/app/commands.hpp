#pragma once

// CLI commands: solve, convergence, finestructure, bc-check. Each validates
// its configuration first (ConfigError, exit 2), computes, writes the
// requested files and returns an exit code (0 ok, 3 non-convergence; the
// report is still written in that case).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>
#include <variant>

#include "landau/analysis.hpp"
#include "landau/app/report.hpp"
#include "landau/app/run_config.hpp"
#include "landau/app/svg.hpp"
#include "landau/eigensolver.hpp"
#include "landau/fd_op.hpp"
#include "landau/spectral_op.hpp"
#include "landau/state.hpp"

namespace landau::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoConvergence = 3;

struct CommandResult {
  RunReport report;
  int exit_code = kExitOk;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Solved {
  Spectrum spectrum;
  double seconds = 0.0;
};

inline Solved solve(const RunConfig& c, const TorusGeometry& g, const FieldSpec& f, int k) {
  const auto pot = make_potential(c);
  const auto scfg = make_solver_config(c, g, f, k);
  const auto t0 = Clock::now();
  Spectrum s;
  if (c.method == "fd") {
    FdHamiltonian H(g, f, pot, make_exec(c));
    s = lanczos_smallest(make_linop(H), scfg);
  } else {
    SpectralHamiltonian H(g, f, pot, make_exec(c));
    s = lanczos_smallest(make_linop(H), scfg);
  }
  return {std::move(s), seconds_since(t0)};
}

inline std::string dirac_warning(const FieldSpec& f, const TorusGeometry& g) {
  return "Dirac condition violated: B0*L1*L2/(2*pi) = " + format_double(flux_quanta(f, g)) +
         " is not an integer; seam phases are inconsistent";
}

inline void fill_spectrum(RunReport& r, const Spectrum& s) {
  r.eigenvalues = s.eigenvalues;
  r.residuals = s.residuals;
  r.converged = s.all_converged();
  r.iterations = s.iterations;
  r.restarts = s.restarts;
  r.scale = s.scale;
  for (const auto& w : s.warnings) r.warnings.push_back(w);
}

inline void write_outputs(const RunConfig& c, const RunReport& r, bool spectrum_csv_file) {
  if (!c.out.empty()) write_report(c.out, r);
  if (spectrum_csv_file && !c.csv.empty()) write_text(c.csv, spectrum_csv(r));
}

}  // namespace detail

inline CommandResult cmd_solve(const RunConfig& c, std::ostream& log) {
  validate(c);
  const auto t0 = detail::Clock::now();
  const auto g = make_geometry(c);
  const auto f = make_field(c, g);
  CommandResult res;
  auto& r = res.report;
  r.command = "solve";
  r.config = c;
  r.dirac_residual = dirac_residual(f, g);
  if (!dirac_consistent(f, g)) r.warnings.push_back(detail::dirac_warning(f, g));

  auto solved = detail::solve(c, g, f, c.k);
  detail::fill_spectrum(r, solved.spectrum);
  r.solve_sec = solved.seconds;

  double emax = 0.0;
  for (double e : r.eigenvalues) emax = std::max(emax, std::abs(e));
  const auto deg = cluster(r.eigenvalues, c.deg_tol * (emax > 0.0 ? emax : 1.0));
  r.clusters = deg.clusters;
  r.cluster_tol = deg.tol_used;
  r.cluster_labels = deg.labels();
  if (f.B0 != 0.0) r.bands = cluster(r.eigenvalues, c.band_tol * std::abs(f.B0)).clusters;
  r.total_sec = detail::seconds_since(t0);

  detail::write_outputs(c, r, true);
  if (!c.plot.empty()) {
    const bool units = f.B0 > 0.0;
    const auto vals = units ? landau_units(r.eigenvalues, f.B0) : r.eigenvalues;
    write_text(c.plot, spectrum_svg(vals, "lowest " + std::to_string(c.k) + " eigenvalues (" + c.method + ", " +
                                              std::to_string(c.n1) + "x" + std::to_string(c.n2) + ")",
                                    units ? "E / B0" : "E"));
  }

  log << "solve: " << r.eigenvalues.size() << " eigenvalues, " << r.clusters.size() << " degenerate clusters, "
      << (r.converged ? "converged" : "NOT converged") << " after " << r.iterations << " operator applications\n";
  for (const auto& cl : r.clusters)
    log << "  E = " << format_double(cl.mean) << "  x" << cl.count << "  (spread " << format_double(cl.spread) << ")\n";
  for (const auto& w : r.warnings) log << "warning: " << w << '\n';
  res.exit_code = r.converged ? kExitOk : kExitNoConvergence;
  return res;
}

inline CommandResult cmd_convergence(const RunConfig& c, std::ostream& log) {
  validate(c);
  if (!c.N || *c.N < 1) throw ConfigError("convergence needs an integer flux N >= 1");
  if (c.lambda != 0.0 || c.sigma != 0.0) throw ConfigError("convergence needs a uniform field (lambda = sigma = 0)");
  if (c.potential != "none") throw ConfigError("convergence needs potential none");
  if (c.grids.empty()) throw ConfigError("convergence needs at least one grid size");
  for (int n : c.grids)
    if (c.k + 3 > n * n || (c.m > 0 && c.m > n * n)) throw ConfigError("grid " + std::to_string(n) + " too small for k/m");

  const auto t0 = detail::Clock::now();
  CommandResult res;
  auto& r = res.report;
  r.command = "convergence";
  r.config = c;
  for (int n : c.grids) {
    const auto g = make_geometry(c, n, n);
    const auto f = make_field(c, g);
    auto solved = detail::solve(c, g, f, c.k);
    const auto exact = exact_landau_spectrum(*c.N, f.B0, static_cast<std::size_t>(c.k));
    ConvergenceRow row{n, average_relative_error(solved.spectrum.eigenvalues, exact), solved.seconds};
    r.convergence.push_back(row);
    r.iterations += solved.spectrum.iterations;
    r.restarts += solved.spectrum.restarts;
    if (!solved.spectrum.all_converged()) {
      r.converged = false;
      r.warnings.push_back("grid " + std::to_string(n) + ": eigensolver did not converge");
    }
    r.solve_sec += solved.seconds;
    if (n == c.grids.back()) {
      detail::fill_spectrum(r, solved.spectrum);
      r.converged = r.converged && solved.spectrum.all_converged();
    }
  }
  r.total_sec = detail::seconds_since(t0);
  const auto table = convergence_csv(r.convergence);
  if (!c.csv.empty()) write_text(c.csv, table);
  detail::write_outputs(c, r, false);
  log << table;
  res.exit_code = r.converged ? kExitOk : kExitNoConvergence;
  return res;
}

inline CommandResult cmd_finestructure(const RunConfig& c, std::ostream& log) {
  validate(c);
  if (!c.N || *c.N < 1) throw ConfigError("finestructure needs an integer flux N >= 1");
  if (c.lambda == 0.0 && c.sigma == 0.0) throw ConfigError("finestructure needs lambda != 0 or sigma != 0");
  const int N0 = static_cast<int>(*c.N);
  if (N0 + 3 > c.n1 * c.n2) throw ConfigError("grid too small for N eigenvalues");

  const auto t0 = detail::Clock::now();
  const auto g = make_geometry(c);
  const auto f = make_field(c, g);
  CommandResult res;
  auto& r = res.report;
  r.command = "finestructure";
  r.config = c;
  r.dirac_residual = dirac_residual(f, g);

  auto solved = detail::solve(c, g, f, N0);
  detail::fill_spectrum(r, solved.spectrum);
  r.solve_sec = solved.seconds;

  const auto fs = fine_structure_report(r.eigenvalues, N0, c.nu, c.deg_tol);
  r.clusters = fs.clusters.clusters;
  r.cluster_tol = fs.clusters.tol_used;
  r.cluster_labels = fs.clusters.labels();
  FineStructureSummary sum{fs.N0, fs.nu, fs.predicted_degeneracy, fs.observed_degeneracy, fs.observed_pattern,
                           fs.match, fs.gap_ratios, std::nullopt, gap_palindrome_defect(fs)};
  if (fs.gap_ratios.size() >= 2) sum.gap_law_spread = gap_law_check(fs).spread;
  r.fine_structure = sum;
  r.total_sec = detail::seconds_since(t0);

  detail::write_outputs(c, r, true);
  if (!c.plot.empty())
    write_text(c.plot, fine_structure_svg(landau_units(r.eigenvalues, f.B0),
                                          "first Landau level, nu=" + std::to_string(c.nu) + ", N0=" +
                                              std::to_string(N0) + ", lambda=" + format_double(c.lambda) +
                                              ", sigma=" + format_double(c.sigma)));

  log << "finestructure: N0=" << N0 << " nu=" << c.nu << " pattern {";
  for (std::size_t i = 0; i < sum.observed_pattern.size(); ++i) log << (i ? "," : "") << sum.observed_pattern[i];
  log << "} predicted degeneracy gcd(N0,2nu)=" << sum.predicted_degeneracy << " observed " << sum.observed_degeneracy
      << (sum.match ? " (match)" : " (MISMATCH)") << '\n';
  for (const auto& gr : sum.gap_ratios)
    log << "  gap after " << gr.boundary << " states: " << format_double(gr.gap) << "  gap/sin(n pi/N0) "
        << format_double(gr.ratio) << '\n';
  if (sum.gap_law_spread) log << "  gap-law relative spread " << format_double(*sum.gap_law_spread) << '\n';
  for (const auto& w : r.warnings) log << "warning: " << w << '\n';
  res.exit_code = r.converged ? kExitOk : kExitNoConvergence;
  return res;
}

inline CommandResult cmd_bc_check(const RunConfig& c, std::ostream& log) {
  RunConfig cc = c;
  cc.start = "random";  // the check itself builds the theta state
  validate(cc);
  const auto g = make_geometry(c);
  const auto f = make_field(c, g);
  CommandResult res;
  auto& r = res.report;
  r.command = "bc-check";
  r.config = c;
  r.dirac_residual = dirac_residual(f, g);
  log << "dirac residual: " << format_double(r.dirac_residual) << '\n';
  if (!dirac_consistent(f, g)) {
    r.warnings.push_back(detail::dirac_warning(f, g));
    log << "warning: " << r.warnings.back() << "\nseam residual: not defined without an integer flux\n";
  } else {
    r.seam = seam_residual(g, f, default_theta_params(g));
    log << "seam residual x-boundary: " << format_double(r.seam->boundary_x / r.seam->max_modulus)
        << "  y-boundary: " << format_double(r.seam->boundary_y / r.seam->max_modulus) << "  (relative to max|psi|)\n";
  }
  if (!c.out.empty()) write_report(c.out, r);
  return res;
}

}  // namespace landau::app
