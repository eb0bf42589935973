#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qkr/error.hpp"
#include "qkr/output.hpp"
#include "qkr/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

int default_threads() {
  if (const char* env = std::getenv("QKR_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "sweep: ignoring QKR_THREADS='" << env << "'\n";
  }
  return 0;  // OpenMP default
}

// Opens the file for appending so an unwritable location is reported before
// hours of work; a file created only for the probe is removed again.
void check_writable(const std::string& path) {
  const bool existed = std::filesystem::exists(path);
  {
    std::ofstream probe(path, std::ios::app);
    if (!probe) throw qkr::ConfigError("output path '" + path + "' is not writable");
  }
  if (!existed) std::filesystem::remove(path);
}

std::optional<std::string> hash_of(const qkr::sweep::ParsedCsv& csv) {
  for (const auto& c : csv.comments) {
    const auto at = c.find("config_hash=");
    if (at != std::string::npos) return c.substr(at + 12);
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qkr::sweep;

  CLI::App app{"Energy-vs-period sweeps of the kicked rotor with spontaneous emission"};
  std::string config_path;
  std::string preset_name;
  std::string out_path;
  std::string plot_path;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  bool resume = false;
  bool quiet = false;

  app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
  app.add_option("--preset", preset_name, "built-in parameter set (fig3)");
  app.add_option("--out", out_path, "CSV output path");
  app.add_option("--plot", plot_path, "SVG plot output path");
  app.add_option("--threads", threads, "worker threads (default: $QKR_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "master seed");
  app.add_flag("--resume", resume, "skip rows already present in the output CSV");
  app.add_flag("-q,--quiet", quiet, "no progress output");
  app.set_version_flag("--version", std::string(kVersion));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  SweepConfig config;
  try {
    if (config_path.empty() && preset_name.empty())
      throw qkr::ConfigError("one of --config or --preset is required");
    if (!preset_name.empty()) config = preset(preset_name);
    if (!config_path.empty()) config = load_config(config_path, config);
    if (!out_path.empty()) config.csv_path = out_path;
    if (!plot_path.empty()) config.plot_path = plot_path;
    if (seed) config.seed = *seed;
    if (config.csv_path.empty()) config.csv_path = "sweep.csv";
    config.validate();
    for (std::size_t c = 0; c < config.phi_d.size(); ++c) {
      check_writable(curve_path(config.csv_path, config, c));
      if (!config.plot_path.empty()) check_writable(curve_path(config.plot_path, config, c));
    }
  } catch (const std::exception& e) {
    std::cerr << "sweep: " << e.what() << '\n';
    return kExitConfig;
  }

  SweepOptions options;
  options.threads = threads ? *threads : default_threads();
  if (resume) {
    const std::string hash = config.hash();
    for (std::size_t c = 0; c < config.phi_d.size(); ++c) {
      const std::string path = curve_path(config.csv_path, config, c);
      if (!std::filesystem::exists(path)) continue;
      try {
        auto parsed = parse_csv(path);
        if (hash_of(parsed) != hash) {
          std::cerr << "sweep: " << path << " was written with a different configuration\n";
          return kExitConfig;
        }
        options.existing[c] = std::move(parsed.rows);
      } catch (const std::exception& e) {
        std::cerr << "sweep: cannot resume from " << path << ": " << e.what() << '\n';
        return kExitConfig;
      }
    }
  }
  if (!quiet) {
    options.progress = [&](std::size_t c, double t) {
      std::fprintf(stderr, "phi_d=%g T=%g us\n", config.phi_d[c], t);
    };
  }

  std::vector<EnergyCurve> curves;
  try {
    curves = run_sweep(config, options);
  } catch (const qkr::ConfigError& e) {
    std::cerr << "sweep: " << e.what() << '\n';
    return kExitConfig;
  }

  int status = kExitOk;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c];
    try {
      emit_csv(curve, curve_path(config.csv_path, config, c));
      if (!config.plot_path.empty() && !curve.rows.empty())
        emit_plot(curve, curve_path(config.plot_path, config, c));
    } catch (const std::exception& e) {
      std::cerr << "sweep: " << e.what() << '\n';
      return kExitPartial;
    }
    for (const auto& f : curve.failures) {
      std::cerr << "sweep: phi_d=" << curve.phi_d << " T=" << f << '\n';
      status = kExitPartial;
    }
  }
  return status;
}
