#pragma once

// Run report: JSON document (schema "landau-torus/run-report", version 1,
// documented in docs/report_schema.md) and the eigenvalue CSV.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "landau/analysis.hpp"
#include "landau/app/run_config.hpp"
#include "landau/state.hpp"

namespace landau {

inline void to_json(nlohmann::json& j, const Cluster& c) {
  j = {{"mean", c.mean}, {"count", c.count}, {"spread", c.spread}};
}
inline void from_json(const nlohmann::json& j, Cluster& c) {
  j.at("mean").get_to(c.mean);
  j.at("count").get_to(c.count);
  j.at("spread").get_to(c.spread);
}

}  // namespace landau

namespace landau::app {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kReportSchema = "landau-torus/run-report";
inline constexpr int kReportSchemaVersion = 1;

struct ConvergenceRow {
  int n = 0;
  double avg_rel_error = 0.0;
  double time_sec = 0.0;
  bool operator==(const ConvergenceRow&) const = default;
};

struct FineStructureSummary {
  int N0 = 0;
  int nu = 1;
  int predicted_degeneracy = 0;
  int observed_degeneracy = 0;
  std::vector<int> observed_pattern;
  bool match = false;
  std::vector<GapRatio> gap_ratios;
  std::optional<double> gap_law_spread;
  double palindrome_defect = 0.0;
};

struct RunReport {
  std::string command;
  RunConfig config;
  double dirac_residual = 0.0;
  std::vector<std::string> warnings;
  std::vector<double> eigenvalues;
  std::vector<double> residuals;
  std::vector<int> cluster_labels;
  std::vector<Cluster> clusters;
  double cluster_tol = 0.0;
  std::vector<Cluster> bands;  ///< coarse clustering at band_tol * B0
  bool converged = true;
  long iterations = 0;
  int restarts = 0;
  double scale = 0.0;
  std::optional<FineStructureSummary> fine_structure;
  std::optional<SeamResidual> seam;
  std::vector<ConvergenceRow> convergence;
  double solve_sec = 0.0;
  double total_sec = 0.0;
  std::string version = kVersion;
};


inline void to_json(nlohmann::json& j, const RunReport& r) {
  j = nlohmann::json{{"schema", kReportSchema},
                     {"schema_version", kReportSchemaVersion},
                     {"version", r.version},
                     {"command", r.command},
                     {"config", r.config},
                     {"dirac_residual", r.dirac_residual},
                     {"warnings", r.warnings},
                     {"eigenvalues", r.eigenvalues},
                     {"residuals", r.residuals},
                     {"cluster_labels", r.cluster_labels},
                     {"clusters", r.clusters},
                     {"cluster_tol", r.cluster_tol},
                     {"bands", r.bands},
                     {"solver", {{"converged", r.converged},
                                 {"iterations", r.iterations},
                                 {"restarts", r.restarts},
                                 {"scale", r.scale}}},
                     {"timings", {{"informational", true}, {"solve_sec", r.solve_sec}, {"total_sec", r.total_sec}}}};
  if (r.config.B0 || r.config.N) {
    const auto g = make_geometry(r.config);
    const auto B0 = make_field(r.config, g).B0;
    if (B0 > 0.0 && !r.eigenvalues.empty()) j["eigenvalues_landau_units"] = landau_units(r.eigenvalues, B0);
  }
  if (r.fine_structure) {
    const auto& f = *r.fine_structure;
    auto gaps = nlohmann::json::array();
    for (const auto& g : f.gap_ratios) gaps.push_back({{"boundary", g.boundary}, {"gap", g.gap}, {"ratio", g.ratio}});
    j["fine_structure"] = {{"N0", f.N0},
                           {"nu", f.nu},
                           {"predicted_degeneracy", f.predicted_degeneracy},
                           {"observed_degeneracy", f.observed_degeneracy},
                           {"observed_pattern", f.observed_pattern},
                           {"match", f.match},
                           {"gap_ratios", gaps},
                           {"palindrome_defect", f.palindrome_defect}};
    if (f.gap_law_spread) j["fine_structure"]["gap_law_spread"] = *f.gap_law_spread;
  }
  if (r.seam)
    j["seam_residual"] = {{"boundary_x", r.seam->boundary_x},
                          {"boundary_y", r.seam->boundary_y},
                          {"max_modulus", r.seam->max_modulus}};
  if (!r.convergence.empty()) {
    auto rows = nlohmann::json::array();
    for (const auto& row : r.convergence)
      rows.push_back({{"n", row.n}, {"avg_rel_error", row.avg_rel_error}, {"time_sec", row.time_sec}});
    j["convergence"] = rows;
  }
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
  if (j.value("schema", std::string{}) != kReportSchema) throw std::invalid_argument("not a run report");
  if (j.value("schema_version", 0) != kReportSchemaVersion) throw std::invalid_argument("unsupported report version");
  j.at("version").get_to(r.version);
  j.at("command").get_to(r.command);
  r.config = config_from_json(j.at("config"));
  j.at("dirac_residual").get_to(r.dirac_residual);
  j.at("warnings").get_to(r.warnings);
  j.at("eigenvalues").get_to(r.eigenvalues);
  j.at("residuals").get_to(r.residuals);
  j.at("cluster_labels").get_to(r.cluster_labels);
  j.at("clusters").get_to(r.clusters);
  j.at("cluster_tol").get_to(r.cluster_tol);
  j.at("bands").get_to(r.bands);
  const auto& s = j.at("solver");
  s.at("converged").get_to(r.converged);
  s.at("iterations").get_to(r.iterations);
  s.at("restarts").get_to(r.restarts);
  s.at("scale").get_to(r.scale);
  j.at("timings").at("solve_sec").get_to(r.solve_sec);
  j.at("timings").at("total_sec").get_to(r.total_sec);
  r.fine_structure.reset();
  if (j.contains("fine_structure")) {
    const auto& f = j.at("fine_structure");
    FineStructureSummary fs;
    f.at("N0").get_to(fs.N0);
    f.at("nu").get_to(fs.nu);
    f.at("predicted_degeneracy").get_to(fs.predicted_degeneracy);
    f.at("observed_degeneracy").get_to(fs.observed_degeneracy);
    f.at("observed_pattern").get_to(fs.observed_pattern);
    f.at("match").get_to(fs.match);
    f.at("palindrome_defect").get_to(fs.palindrome_defect);
    for (const auto& g : f.at("gap_ratios"))
      fs.gap_ratios.push_back({g.at("boundary").get<int>(), g.at("gap").get<double>(), g.at("ratio").get<double>()});
    if (f.contains("gap_law_spread")) fs.gap_law_spread = f.at("gap_law_spread").get<double>();
    r.fine_structure = fs;
  }
  r.seam.reset();
  if (j.contains("seam_residual")) {
    const auto& s2 = j.at("seam_residual");
    r.seam = SeamResidual{s2.at("boundary_x").get<double>(), s2.at("boundary_y").get<double>(),
                          s2.at("max_modulus").get<double>()};
  }
  r.convergence.clear();
  if (j.contains("convergence"))
    for (const auto& row : j.at("convergence"))
      r.convergence.push_back(
          {row.at("n").get<int>(), row.at("avg_rel_error").get<double>(), row.at("time_sec").get<double>()});
}

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// CSV with header `index,eigenvalue,residual,cluster`.
inline std::string spectrum_csv(const RunReport& r) {
  std::ostringstream os;
  os << "index,eigenvalue,residual,cluster\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    os << i << ',' << format_double(r.eigenvalues[i]) << ',' << format_double(r.residuals.at(i)) << ','
       << (i < r.cluster_labels.size() ? r.cluster_labels[i] : -1) << '\n';
  }
  return os.str();
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream os;
  os << "n,avg_rel_error,time_sec\n";
  for (const auto& row : rows)
    os << row.n << ',' << format_double(row.avg_rel_error) << ',' << format_double(row.time_sec) << '\n';
  return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

inline void write_report(const std::string& path, const RunReport& r) {
  write_text(path, nlohmann::json(r).dump(2) + "\n");
}

}  // namespace landau::app
