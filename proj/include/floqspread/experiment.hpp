#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floqspread/table.hpp"
#include "floqspread/types.hpp"

namespace floqspread {

// config or CLI argument problem
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// computation failed; message carries the parameter point
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A swept or fixed scalar parameter: a single value, an explicit list, or an
// inclusive (start, stop, count) grid.
struct GridSpec {
  std::vector<double> values;

  GridSpec() = default;
  GridSpec(double v) : values{v} {}
  static GridSpec linspace(double start, double stop, int count);
  bool is_swept() const { return values.size() > 1; }
  bool operator==(const GridSpec&) const = default;
};

struct ExperimentConfig {
  std::string model = "kicked-ising";  // kicked-ising | kicked-ising-nonlocal | self-dual | dimer
  int num_sites = 10;                  // N, spin chains
  double spin_j = 100.0;               // j, dimer
  GridSpec J{1.0}, b{1.0}, phi{1.0471975511965976};
  GridSpec gamma{0.0}, T{1.0};
  GridSpec k{3.0};
  double mu = 3.0;
  std::string sector = "positive-parity";       // or "full"
  std::string initial_state = "h0-eigenstate";  // h0-eigenstate | uniform | random
  int random_count = 5;
  std::uint64_t seed = 0;
  int steps = 0;         // 0 = burn_in + window
  int burn_in = 0;       // 0 = 2 D_K
  int window = 0;        // 0 = 10 D_K
  int slope_window = 0;  // 0 = min(20, D_K/4)
  int bins = 0;          // > 0 adds a spacing-histogram table to spectral runs
  std::vector<std::string> outputs;  // empty = all observables

  bool operator==(const ExperimentConfig&) const = default;
};

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
void validate(const ExperimentConfig& config);

// One parameter point of a sweep (cartesian product of swept grids).
struct ParameterPoint {
  double J, b, phi, gamma, T, k, mu;
};

std::vector<ParameterPoint> expand_grid(const ExperimentConfig& config);

struct RunResult {
  // "summary" is the main table; extra tables ("steps", "arnoldi", "hist",
  // "rescaled") are written alongside it by the CLI
  std::map<std::string, Table> tables;
  std::vector<std::string> warnings;
};

RunResult run_complexity(const ExperimentConfig& config, int workers = 1);
RunResult run_spectral(const ExperimentConfig& config, int workers = 1);
RunResult run_sweep(const ExperimentConfig& config, int workers = 1);

Table calibrate_rmt(std::size_t poisson_samples, int goe_matrices, int goe_dim,
                    std::uint64_t seed);

// named figure-reproduction presets
std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);
std::string preset_description(const std::string& name);

}  // namespace floqspread
