// landau: spectra of a charged particle on a magnetic torus.
//
//   landau solve --N 4 --n1 16 --n2 16 --k 20 --csv spectrum.csv
//   landau convergence --grids 8,10,12,16 --csv table1.csv
//   landau finestructure --N 16 --nu 4 --lambda 0.1 --n1 48 --n2 48 --plot fig2.svg
//   landau bc-check --N 4

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "landau/app/commands.hpp"

namespace {

using landau::app::CommandResult;
using landau::app::ConfigError;
using landau::app::RunConfig;
using Json = nlohmann::json;

template <class T>
void flag(CLI::App* sub, Json& ov, const std::string& key, const std::string& help) {
  auto* opt = sub->add_option_function<T>("--" + key, [&ov, key](const T& v) { ov[key] = v; }, help);
  if constexpr (std::is_same_v<T, std::vector<int>>) opt->delimiter(',');
}

void add_config_flags(CLI::App* sub, Json& ov, std::string& config_path) {
  sub->add_option("--config", config_path, "JSON run configuration (flags override its values)");
  flag<double>(sub, ov, "L1", "torus length in x");
  flag<double>(sub, ov, "L2", "torus length in y");
  flag<int>(sub, ov, "n1", "grid points in x (even)");
  flag<int>(sub, ov, "n2", "grid points in y (even)");
  flag<std::int64_t>(sub, ov, "N", "flux quanta; sets B0 = 2 pi N / (L1 L2)");
  flag<double>(sub, ov, "B0", "mean field strength (replaces N)");
  flag<double>(sub, ov, "lambda", "amplitude of the sin(2 pi nu x / L1) modulation");
  flag<int>(sub, ov, "nu", "modulation wavenumber");
  flag<double>(sub, ov, "sigma", "amplitude of the second harmonic");
  flag<std::string>(sub, ov, "potential", "none | harmonic");
  flag<double>(sub, ov, "omega", "harmonic well frequency");
  flag<int>(sub, ov, "k", "number of eigenvalues");
  flag<int>(sub, ov, "m", "Krylov dimension (0 = automatic)");
  flag<double>(sub, ov, "tol", "relative residual tolerance");
  flag<int>(sub, ov, "max_restarts", "restart limit");
  flag<std::uint64_t>(sub, ov, "seed", "random start seed");
  flag<std::string>(sub, ov, "start", "random | theta");
  flag<std::string>(sub, ov, "method", "spectral | fd");
  flag<double>(sub, ov, "deg_tol", "degeneracy tolerance, relative");
  flag<double>(sub, ov, "band_tol", "band separation tolerance, relative to B0");
  flag<std::vector<int>>(sub, ov, "grids", "grid sizes for convergence, comma separated");
  flag<std::string>(sub, ov, "out", "JSON report path");
  flag<std::string>(sub, ov, "csv", "CSV output path");
  flag<std::string>(sub, ov, "plot", "SVG plot path");
  flag<int>(sub, ov, "threads", "worker threads (1 = deterministic sequential)");
}

RunConfig load_config(const std::string& path, const Json& overrides) {
  RunConfig base;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    Json file;
    try {
      in >> file;
    } catch (const Json::exception& e) {
      throw ConfigError("config file " + path + ": " + e.what());
    }
    base = landau::app::config_from_json(file, base);
  }
  return landau::app::config_from_json(overrides, base);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-energy spectrum of a charged particle on a magnetic torus"};
  app.set_version_flag("--version", landau::app::kVersion);
  app.require_subcommand(1);

  using Command = std::function<CommandResult(const RunConfig&, std::ostream&)>;
  struct Entry {
    const char* name;
    const char* help;
    Command run;
  };
  const std::vector<Entry> entries{
      {"solve", "lowest k eigenvalues", landau::app::cmd_solve},
      {"convergence", "error against the exact Landau spectrum over a list of grids", landau::app::cmd_convergence},
      {"finestructure", "splitting of the first Landau level in a modulated field", landau::app::cmd_finestructure},
      {"bc-check", "seam residuals of the theta state and the Dirac residual", landau::app::cmd_bc_check},
  };

  Json overrides = Json::object();
  std::string config_path;
  const Command* selected = nullptr;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_config_flags(sub, overrides, config_path);
    sub->callback([&selected, &e] { selected = &e.run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return landau::app::kExitConfig;
  }

  try {
    const auto cfg = load_config(config_path, overrides);
    return (*selected)(cfg, std::cout).exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return landau::app::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
