#pragma once

// Run configuration shared by every CLI command. The JSON form is a flat
// object whose keys are exactly the field names below; command-line flags use
// the same names with a "--" prefix.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "landau/domain.hpp"
#include "landau/eigensolver.hpp"
#include "landau/parallel.hpp"
#include "landau/state.hpp"

namespace landau::app {

/// Invalid configuration; the CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double L1 = 2.0;
  double L2 = 2.0;
  int n1 = 16;
  int n2 = 16;
  std::optional<std::int64_t> N = 4;
  std::optional<double> B0;
  double lambda = 0.0;
  int nu = 1;
  double sigma = 0.0;
  std::string potential = "none";
  double omega = 1.0;
  int k = 20;
  int m = 0;
  double tol = 1e-12;
  int max_restarts = 500;
  std::uint64_t seed = 1;
  std::string start = "random";
  std::string method = "spectral";
  double deg_tol = 1e-9;
  double band_tol = 1e-3;
  std::vector<int> grids{8, 10, 12, 16, 24, 32, 64};
  std::string out;
  std::string csv;
  std::string plot;
  int threads = 1;

  bool operator==(const RunConfig&) const = default;
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "L1",  "L2",    "n1",        "n2",   "N",     "B0",           "lambda", "nu",    "sigma",
      "potential", "omega", "k", "m",    "tol",   "max_restarts", "seed",   "start", "method",
      "deg_tol", "band_tol", "grids", "out", "csv", "plot", "threads"};
  return keys;
}

inline void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"L1", c.L1},           {"L2", c.L2},       {"n1", c.n1},         {"n2", c.n2},
                     {"lambda", c.lambda},   {"nu", c.nu},       {"sigma", c.sigma},   {"potential", c.potential},
                     {"omega", c.omega},     {"k", c.k},         {"m", c.m},           {"tol", c.tol},
                     {"max_restarts", c.max_restarts},           {"seed", c.seed},     {"start", c.start},
                     {"method", c.method},   {"deg_tol", c.deg_tol},                   {"band_tol", c.band_tol},
                     {"grids", c.grids},     {"out", c.out},     {"csv", c.csv},       {"plot", c.plot},
                     {"threads", c.threads}};
  if (c.N) j["N"] = *c.N;
  if (c.B0) j["B0"] = *c.B0;
}

/// Reads a config object on top of the defaults. Unknown keys are rejected;
/// giving both N and B0 is an error, giving one clears the other default.
inline RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {}) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const auto& keys = config_keys();
  for (const auto& [key, _] : j.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown config key: " + key);
  if (j.contains("N") && j.contains("B0")) throw ConfigError("give exactly one of N and B0");
  try {
    auto get = [&](const char* key, auto& dst) {
      if (j.contains(key)) j.at(key).get_to(dst);
    };
    get("L1", base.L1);
    get("L2", base.L2);
    get("n1", base.n1);
    get("n2", base.n2);
    if (j.contains("N")) {
      base.N = j.at("N").get<std::int64_t>();
      base.B0.reset();
    }
    if (j.contains("B0")) {
      base.B0 = j.at("B0").get<double>();
      base.N.reset();
    }
    get("lambda", base.lambda);
    get("nu", base.nu);
    get("sigma", base.sigma);
    get("potential", base.potential);
    get("omega", base.omega);
    get("k", base.k);
    get("m", base.m);
    get("tol", base.tol);
    get("max_restarts", base.max_restarts);
    get("seed", base.seed);
    get("start", base.start);
    get("method", base.method);
    get("deg_tol", base.deg_tol);
    get("band_tol", base.band_tol);
    get("grids", base.grids);
    get("out", base.out);
    get("csv", base.csv);
    get("plot", base.plot);
    get("threads", base.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return base;
}

inline void from_json(const nlohmann::json& j, RunConfig& c) { c = config_from_json(j); }

inline TorusGeometry make_geometry(const RunConfig& c, int n1, int n2) {
  return TorusGeometry(c.L1, c.L2, static_cast<std::size_t>(n1), static_cast<std::size_t>(n2));
}
inline TorusGeometry make_geometry(const RunConfig& c) { return make_geometry(c, c.n1, c.n2); }

inline FieldSpec make_field(const RunConfig& c, const TorusGeometry& g) {
  if (c.N) return field_from_flux(*c.N, g, c.lambda, c.nu, c.sigma);
  return field_from_strength(*c.B0, c.lambda, c.nu, c.sigma);
}

inline PotentialSpec make_potential(const RunConfig& c) {
  if (c.potential == "harmonic") return HarmonicPotential{c.omega};
  return NoPotential{};
}

/// Checks every precondition before any compute; throws ConfigError.
inline void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(std::isfinite(c.L1) && c.L1 > 0 && std::isfinite(c.L2) && c.L2 > 0, "L1 and L2 must be finite and positive");
  need(c.n1 >= 4 && c.n2 >= 4 && c.n1 % 2 == 0 && c.n2 % 2 == 0, "n1 and n2 must be even and >= 4");
  need(c.N.has_value() != c.B0.has_value(), "give exactly one of N and B0");
  if (c.N) need(*c.N >= 0, "N must be >= 0");
  if (c.B0) need(std::isfinite(*c.B0), "B0 must be finite");
  need(c.nu >= 1, "nu must be >= 1");
  need(std::isfinite(c.lambda) && std::isfinite(c.sigma), "lambda and sigma must be finite");
  need(c.potential == "none" || c.potential == "harmonic", "potential must be none or harmonic");
  if (c.potential == "harmonic") need(std::isfinite(c.omega) && c.omega > 0, "omega must be positive");
  need(c.k >= 1, "k must be >= 1");
  const long dim = static_cast<long>(c.n1) * c.n2;
  need(c.k + 3 <= dim, "k too large for the grid");
  need(c.m == 0 || (c.m > c.k + 2 && c.m <= dim), "m must exceed k + 2 and not exceed n1*n2");
  need(std::isfinite(c.tol) && c.tol > 0, "tol must be positive");
  need(c.max_restarts >= 0, "max_restarts must be >= 0");
  need(c.start == "random" || c.start == "theta", "start must be random or theta");
  need(c.method == "spectral" || c.method == "fd", "method must be spectral or fd");
  need(c.deg_tol > 0 && c.band_tol > 0, "analysis tolerances must be positive");
  need(c.threads >= 1, "threads must be >= 1");
  for (int n : c.grids) need(n >= 4 && n % 2 == 0, "grid sizes must be even and >= 4");
  if (c.start == "theta") {
    const auto g = make_geometry(c);
    need(dirac_consistent(make_field(c, g), g), "theta start needs an integer flux");
  }
}

inline Exec make_exec(const RunConfig& c) { return Exec{static_cast<unsigned>(c.threads)}; }

inline SolverConfig make_solver_config(const RunConfig& c, const TorusGeometry& g, const FieldSpec& f, int k) {
  SolverConfig s;
  s.k = k;
  s.m = c.m;
  s.tol = c.tol;
  s.max_restarts = c.max_restarts;
  s.seed = c.seed;
  if (c.start == "theta") s.start = theta_initial(g, f, default_theta_params(g)).values.vec();
  return s;
}

}  // namespace landau::app
