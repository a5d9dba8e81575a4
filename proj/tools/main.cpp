#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "floqspread/experiment.hpp"
#include "floqspread/table.hpp"

namespace fs = std::filesystem;
using namespace floqspread;

namespace {

constexpr const char* kConfigHelp = R"(Config file keys (JSON):
  model          kicked-ising | kicked-ising-nonlocal | self-dual | dimer
  N              chain length (spin models), j: total spin (dimer)
  J, b, phi      chain couplings; phi in [0, pi/2]
  gamma          all-to-all coupling (kicked-ising-nonlocal)
  T              drive period
  k, mu          dimer couplings
  sector         full | positive-parity
  initial_state  h0-eigenstate | uniform | random
  random_count   number of random draws (default 5)
  seed           RNG seed for random initial states
  steps          emitted time steps (0 = burn_in + window)
  burn_in        saturation burn-in kicks (0 = 2 D_K)
  window         saturation averaging window (0 = 10 D_K)
  slope_window   steps in the initial-slope fit (0 = min(20, D_K/4))
  bins           spacing-histogram bins for spectral runs (0 = off)
  outputs        subset of [complexity entropy arnoldi dispersion
                 saturation slope eta magnetization]; empty = all
Grids: J, b, phi, gamma, T, k accept a number, a list, or
  {"start": a, "stop": b, "count": n}.)";

struct CommonOpts {
  std::string config_path;
  std::string preset_name;
  std::string output;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = 1;
  bool force = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "config file (JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--preset", opts.preset_name, "named preset config");
  cmd->add_option("--output", opts.output, "output file path (stdout if omitted)");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--seed", opts.seed, "override the config seed")
      ->trigger_on_parse()
      ->each([&opts](const std::string&) { opts.seed_given = true; });
  cmd->add_option("--workers", opts.workers, "concurrent sweep points")
      ->check(CLI::Range(1, 64));
  cmd->add_flag("--force", opts.force, "overwrite existing output files");
}

ExperimentConfig load_config(const CommonOpts& opts) {
  if (!opts.config_path.empty() && !opts.preset_name.empty())
    throw ConfigError("pass either --config or --preset, not both");
  ExperimentConfig config;
  if (!opts.preset_name.empty()) {
    config = preset(opts.preset_name);
  } else if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw IoError("cannot read config file " + opts.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    config = config_from_json(ss.str());
  }
  if (opts.seed_given) config.seed = opts.seed;
  validate(config);
  return config;
}

fs::path sibling_path(const fs::path& main_path, const std::string& table_name) {
  fs::path p = main_path;
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.concat("." + table_name).concat(ext);
}

void write_result(const RunResult& result, const CommonOpts& opts) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  const Table& summary = result.tables.at("summary");
  if (opts.output.empty()) {
    if (opts.format == "csv")
      write_csv(summary, std::cout);
    else
      write_jsonl(summary, std::cout);
    if (result.tables.size() > 1)
      std::cerr << "note: extra tables are only written when --output is given\n";
    return;
  }
  const fs::path main_path(opts.output);
  emit(summary, opts.format, main_path, opts.force);
  std::cerr << "wrote " << main_path.string() << "\n";
  for (const auto& [name, table] : result.tables) {
    if (name == "summary") continue;
    const fs::path p = sibling_path(main_path, name);
    emit(table, opts.format, p, opts.force);
    std::cerr << "wrote " << p.string() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov-space chaos diagnostics for periodically kicked quantum models"};
  app.require_subcommand(1);
  app.footer(kConfigHelp);

  CommonOpts complexity_opts, spectral_opts, sweep_opts, rmt_opts;

  auto* cmd_complexity = app.add_subcommand(
      "complexity", "Arnoldi coefficients, spread complexity and entropy series");
  add_common(cmd_complexity, complexity_opts);

  auto* cmd_spectral = app.add_subcommand(
      "spectral", "quasi-energy statistics: <r>, eta, spacing histograms");
  add_common(cmd_spectral, spectral_opts);

  auto* cmd_sweep = app.add_subcommand(
      "sweep", "parameter sweeps collecting dispersion, saturation, slope, eta, Jz");
  add_common(cmd_sweep, sweep_opts);

  auto* cmd_rmt = app.add_subcommand(
      "calibrate-rmt", "Monte Carlo check of the Poisson and GOE <r> anchors");
  add_common(cmd_rmt, rmt_opts);
  std::uint64_t rmt_samples = 100000;
  int rmt_matrices = 50;
  int rmt_dim = 1000;
  cmd_rmt->add_option("--samples", rmt_samples, "uniform-phase sample count");
  cmd_rmt->add_option("--matrices", rmt_matrices, "GOE matrix count");
  cmd_rmt->add_option("--dim", rmt_dim, "GOE matrix dimension");

  auto* cmd_presets =
      app.add_subcommand("presets", "list presets, or print one as a config file");
  std::string preset_arg;
  cmd_presets->add_option("name", preset_arg, "preset to print");

  try {
    app.parse(argc, argv);

    if (cmd_presets->parsed()) {
      if (preset_arg.empty()) {
        for (const auto& name : preset_names())
          std::cout << name << "\t" << preset_description(name) << "\n";
      } else {
        std::cout << config_to_json(preset(preset_arg));
      }
      return 0;
    }
    if (cmd_rmt->parsed()) {
      const Table t = calibrate_rmt(rmt_samples, rmt_matrices, rmt_dim,
                                    rmt_opts.seed_given ? rmt_opts.seed : 0);
      RunResult r;
      r.tables["summary"] = t;
      write_result(r, rmt_opts);
      return 0;
    }
    if (cmd_complexity->parsed()) {
      const auto config = load_config(complexity_opts);
      write_result(run_complexity(config, complexity_opts.workers), complexity_opts);
      return 0;
    }
    if (cmd_spectral->parsed()) {
      const auto config = load_config(spectral_opts);
      write_result(run_spectral(config, spectral_opts.workers), spectral_opts);
      return 0;
    }
    if (cmd_sweep->parsed()) {
      const auto config = load_config(sweep_opts);
      write_result(run_sweep(config, sweep_opts.workers), sweep_opts);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
