#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "floqspread/experiment.hpp"
#include "floqspread/table.hpp"

using namespace floqspread;

namespace {

constexpr double kPi = std::numbers::pi;

double cell_double(const Table& t, std::size_t row, const std::string& col) {
  const auto idx = t.find_column(col);
  REQUIRE(idx >= 0);
  return std::get<double>(t.rows.at(row).at(static_cast<std::size_t>(idx)));
}

std::string csv_string(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("linspace endpoints") {
  const auto g = GridSpec::linspace(0.0, 1.0, 5);
  REQUIRE(g.values.size() == 5);
  CHECK(g.values.front() == doctest::Approx(0.0));
  CHECK(g.values[2] == doctest::Approx(0.5));
  CHECK(g.values.back() == doctest::Approx(1.0));
  CHECK(GridSpec::linspace(2.0, 9.0, 1).values == std::vector<double>{2.0});
}

TEST_CASE("config json round-trip") {
  ExperimentConfig c;
  c.model = "kicked-ising-nonlocal";
  c.num_sites = 8;
  c.phi = GridSpec::linspace(kPi / 30, kPi / 3, 4);
  c.gamma.values = {0.0, 0.1, 0.2};
  c.T = GridSpec(0.5);
  c.sector = "full";
  c.initial_state = "random";
  c.random_count = 3;
  c.seed = 42;
  c.steps = 100;
  c.burn_in = 10;
  c.window = 50;
  c.slope_window = 12;
  c.bins = 16;
  c.outputs = {"dispersion", "saturation"};
  const std::string text = config_to_json(c);
  const ExperimentConfig back = config_from_json(text);
  CHECK(back == c);

  ExperimentConfig dimer;
  dimer.model = "dimer";
  dimer.spin_j = 25.0;
  dimer.k.values = {0.5, 1.0};
  dimer.mu = 6.0;
  dimer.sector = "full";
  const ExperimentConfig dback = config_from_json(config_to_json(dimer));
  CHECK(dback == dimer);
}

TEST_CASE("config validation rejects bad inputs") {
  CHECK_THROWS_AS(config_from_json("{bad json"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"unknown"})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"kicked-ising","phi":4.0})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"kicked-ising","T":0})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"kicked-ising","gamma":0.5})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"kicked-ising","N":30})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"kicked-ising","k":[1,2]})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"dimer","j":0.3})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"dimer","phi":[0.1,0.2]})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"kicked-ising","sector":"odd"})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"kicked-ising","outputs":["bogus"]})"),
                  ConfigError);
  CHECK_THROWS_AS(
      config_from_json(R"({"model":"kicked-ising","phi":{"start":0.1,"stop":0.2}})"),
      ConfigError);
  CHECK_NOTHROW(config_from_json(
      R"({"model":"kicked-ising","phi":{"start":0.1,"stop":0.6,"count":3}})"));
}

TEST_CASE("complexity run emits one summary row per grid point") {
  ExperimentConfig c;
  c.model = "kicked-ising";
  c.num_sites = 4;
  c.phi.values = {kPi / 30, kPi / 3};
  c.steps = 40;
  const auto result = run_complexity(c);
  const Table& summary = result.tables.at("summary");
  CHECK(summary.rows.size() == 2);
  const Table& steps = result.tables.at("steps");
  CHECK(steps.rows.size() == 2 * 41);
  CHECK(result.tables.count("arnoldi") == 1);

  // chaotic point saturates higher at equal size
  CHECK(cell_double(summary, 1, "saturation") > cell_double(summary, 0, "saturation"));
}

TEST_CASE("degenerate identity drive warns and stays finite") {
  ExperimentConfig c;
  c.model = "kicked-ising";
  c.num_sites = 3;
  c.J = GridSpec(0.0);
  c.b = GridSpec(0.0);
  c.phi = GridSpec(0.3);
  c.steps = 10;
  const auto result = run_complexity(c);
  REQUIRE(result.warnings.size() >= 1);
  CHECK(result.warnings[0].find("D_K = 1") != std::string::npos);
  const Table& steps = result.tables.at("steps");
  for (std::size_t r = 0; r < steps.rows.size(); ++r)
    CHECK(cell_double(steps, r, "C") == doctest::Approx(0.0));
}

TEST_CASE("random initial states emit per-draw and mean rows deterministically") {
  ExperimentConfig c;
  c.model = "kicked-ising";
  c.num_sites = 4;
  c.initial_state = "random";
  c.random_count = 3;
  c.seed = 7;
  c.steps = 30;
  const auto result = run_complexity(c);
  const Table& summary = result.tables.at("summary");
  REQUIRE(summary.rows.size() == 4);  // 3 draws + mean
  const auto draw_col = summary.find_column("draw");
  CHECK(std::get<std::string>(summary.rows[3][draw_col]) == "mean");

  const auto again = run_complexity(c);
  CHECK(csv_string(again.tables.at("summary")) == csv_string(summary));
  CHECK(csv_string(again.tables.at("steps")) == csv_string(result.tables.at("steps")));

  ExperimentConfig other = c;
  other.seed = 8;
  const auto different = run_complexity(other);
  CHECK(csv_string(different.tables.at("summary")) != csv_string(summary));
}

TEST_CASE("spectral run flags fully degenerate spectra") {
  ExperimentConfig c;
  c.model = "kicked-ising";
  c.num_sites = 4;
  c.J = GridSpec(0.0);
  c.b = GridSpec(0.0);
  const auto result = run_spectral(c);
  const Table& summary = result.tables.at("summary");
  REQUIRE(summary.rows.size() == 1);
  const auto flag_col = summary.find_column("flag");
  CHECK(std::get<std::string>(summary.rows[0][flag_col]) == "degenerate");
  const auto eta_col = summary.find_column("eta");
  CHECK(std::get<std::string>(summary.rows[0][eta_col]).empty());
  CHECK_FALSE(result.warnings.empty());
}

TEST_CASE("spectral run with histogram table") {
  ExperimentConfig c;
  c.model = "kicked-ising";
  c.num_sites = 6;
  c.phi.values = {kPi / 3};
  c.bins = 8;
  const auto result = run_spectral(c);
  CHECK(result.tables.at("summary").rows.size() == 1);
  const Table& hist = result.tables.at("hist");
  CHECK(hist.rows.size() == 8);
  double area = 0;
  for (std::size_t r = 0; r < hist.rows.size(); ++r)
    area += cell_double(hist, r, "density") *
            (cell_double(hist, r, "bin_hi") - cell_double(hist, r, "bin_lo"));
  CHECK(area == doctest::Approx(1.0));
}

TEST_CASE("sweep emits a rescaled companion and respects worker count") {
  ExperimentConfig c;
  c.model = "kicked-ising-nonlocal";
  c.num_sites = 4;
  c.phi = GridSpec(kPi / 2);
  c.gamma.values = {0.0, 0.1, 0.3};
  c.outputs = {"saturation", "slope", "dispersion", "eta"};
  const auto result = run_sweep(c, 2);
  const Table& summary = result.tables.at("summary");
  REQUIRE(summary.rows.size() == 3);
  const Table& rescaled = result.tables.at("rescaled");
  REQUIRE(rescaled.rows.size() == 3);
  double lo = 1e9, hi = -1e9;
  for (std::size_t r = 0; r < 3; ++r) {
    const double v = cell_double(rescaled, r, "saturation");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo == doctest::Approx(0.0));
  CHECK(hi == doctest::Approx(1.0));

  const auto serial = run_sweep(c, 1);
  CHECK(csv_string(serial.tables.at("summary")) == csv_string(summary));
}

TEST_CASE("single-point sweep has no rescaled companion") {
  ExperimentConfig c;
  c.model = "kicked-ising";
  c.num_sites = 4;
  c.outputs = {"saturation"};
  const auto result = run_sweep(c);
  CHECK(result.tables.at("summary").rows.size() == 1);
  CHECK(result.tables.count("rescaled") == 0);
}

TEST_CASE("sweeping three grids is rejected") {
  ExperimentConfig c;
  c.model = "kicked-ising-nonlocal";
  c.num_sites = 4;
  c.J.values = {0.5, 1.0};
  c.b.values = {0.5, 1.0};
  c.gamma.values = {0.0, 0.1};
  CHECK_THROWS_AS(run_sweep(c), ConfigError);
}

TEST_CASE("presets parse and validate") {
  const auto names = preset_names();
  CHECK(names.size() == 11);
  for (const auto& name : names) {
    const auto config = preset(name);
    CHECK_NOTHROW(validate(config));
    CHECK_FALSE(preset_description(name).empty());
    const auto back = config_from_json(config_to_json(config));
    CHECK(back == config);
  }
  CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("rmt calibration table shape") {
  const Table t = calibrate_rmt(20000, 2, 200, 1);
  REQUIRE(t.rows.size() == 2);
  CHECK(cell_double(t, 0, "abs_error") < 0.05);
  CHECK(cell_double(t, 1, "abs_error") < 0.05);
}

}  // TEST_SUITE
