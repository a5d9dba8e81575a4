#include "floqspread/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include "json.hpp"

#include "floqspread/floquet.hpp"
#include "floqspread/krylov.hpp"
#include "floqspread/observables.hpp"
#include "floqspread/spectral.hpp"
#include "floqspread/statespace.hpp"

namespace floqspread {

namespace {

constexpr double kPi = std::numbers::pi;

const std::set<std::string> kModels = {"kicked-ising", "kicked-ising-nonlocal",
                                       "self-dual", "dimer"};
const std::set<std::string> kSectors = {"full", "positive-parity"};
const std::set<std::string> kInitialStates = {"h0-eigenstate", "uniform", "random"};
const std::set<std::string> kOutputs = {"complexity", "entropy", "arnoldi",
                                        "dispersion", "saturation", "slope",
                                        "eta", "magnetization"};

bool wants(const ExperimentConfig& c, const std::string& name) {
  return c.outputs.empty() ||
         std::find(c.outputs.begin(), c.outputs.end(), name) != c.outputs.end();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 over the concatenated words
  std::uint64_t x = seed;
  for (std::uint64_t w : {a, b}) {
    x += 0x9e3779b97f4a7c15ULL + w;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    x = z ^ (z >> 31);
  }
  return x;
}

bool is_chain(const std::string& model) {
  return model == "kicked-ising" || model == "kicked-ising-nonlocal";
}

// runs fn(0..count-1) on up to `workers` threads; rethrows the first failure
void parallel_for(Index count, int workers, const std::function<void(Index)>& fn) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (workers == 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<Index> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      while (true) {
        const Index i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string point_label(const ExperimentConfig& c, const ParameterPoint& p) {
  std::string s = "model=" + c.model;
  if (is_chain(c.model))
    s += " N=" + std::to_string(c.num_sites) + " J=" + format_double(p.J) +
         " b=" + format_double(p.b) + " phi=" + format_double(p.phi) +
         " gamma=" + format_double(p.gamma) + " T=" + format_double(p.T);
  else if (c.model == "self-dual")
    s += " N=" + std::to_string(c.num_sites);
  else
    s += " j=" + format_double(c.spin_j) + " k=" + format_double(p.k) +
         " mu=" + format_double(p.mu) + " T=" + format_double(p.T);
  return s;
}

struct BuiltModel {
  FloquetOperator op;
  Matrix jz;  // total magnetization in the operator's space
};

BuiltModel build_model(const ExperimentConfig& c, const ParameterPoint& p) {
  BuiltModel m;
  if (is_chain(c.model) || c.model == "self-dual") {
    const SpinBasis basis(c.num_sites);
    const bool use_sector = c.sector == "positive-parity";
    if (use_sector) {
      const SectorBasis sector = parity_sector(basis);
      if (c.model == "self-dual")
        m.op = build_self_dual(c.num_sites, sector);
      else
        m.op = build_kicked_ising({p.J, p.b, p.phi, p.gamma, p.T}, sector);
      m.jz = project_operator(total_spin_operator(basis, Axis::Z), sector);
    } else {
      if (c.model == "self-dual")
        m.op = build_self_dual(c.num_sites);
      else
        m.op = build_kicked_ising({p.J, p.b, p.phi, p.gamma, p.T}, basis);
      m.jz = total_spin_operator(basis, Axis::Z);
    }
  } else {
    m.op = build_dimer_floquet({c.spin_j, p.k, p.mu, p.T});
    m.jz = angular_momentum_operators(c.spin_j).jz;
  }
  return m;
}

Vector initial_state(const ExperimentConfig& c, const BuiltModel& m,
                     Index point_idx, int draw) {
  const Index dim = m.op.dim();
  if (c.initial_state == "uniform") return uniform_state(dim);
  if (c.initial_state == "random")
    return haar_random_state(dim, mix_seed(c.seed, static_cast<std::uint64_t>(point_idx),
                                           static_cast<std::uint64_t>(draw)));
  // h0-eigenstate: all spins up for chains (basis state 0 is its own
  // reflection orbit, so it is sector column 0); top J_x eigenvector for the dimer
  if (c.model == "dimer") {
    const auto ops = angular_momentum_operators(c.spin_j);
    Eigen::SelfAdjointEigenSolver<Matrix> es(ops.jx);
    return es.eigenvectors().col(dim - 1);
  }
  Vector v = Vector::Zero(dim);
  v(0) = 1.0;
  return v;
}

std::vector<Cell> param_cells(const ExperimentConfig& c, const ParameterPoint& p) {
  const Cell blank = std::string();
  std::vector<Cell> cells;
  cells.emplace_back(c.model);
  if (is_chain(c.model) || c.model == "self-dual")
    cells.emplace_back(static_cast<std::int64_t>(c.num_sites));
  else
    cells.emplace_back(blank);
  cells.emplace_back(c.model == "dimer" ? Cell(c.spin_j) : blank);
  if (is_chain(c.model)) {
    cells.emplace_back(p.J);
    cells.emplace_back(p.b);
    cells.emplace_back(p.phi);
    cells.emplace_back(p.gamma);
    cells.emplace_back(p.T);
  } else {
    cells.insert(cells.end(), 4, blank);
    cells.emplace_back(c.model == "dimer" ? Cell(p.T) : blank);
  }
  cells.emplace_back(c.model == "dimer" ? Cell(p.k) : blank);
  cells.emplace_back(c.model == "dimer" ? Cell(p.mu) : blank);
  cells.emplace_back(c.model == "dimer" ? blank : Cell(c.sector));
  cells.emplace_back(c.initial_state);
  return cells;
}

const std::vector<std::string> kParamColumns = {
    "model", "N", "j", "J", "b", "phi", "gamma", "T", "k", "mu", "sector",
    "initial_state"};

std::vector<std::string> with_params(std::initializer_list<std::string> extra) {
  std::vector<std::string> cols = kParamColumns;
  cols.insert(cols.end(), extra);
  return cols;
}

void append(std::vector<Cell>& row, std::initializer_list<Cell> extra) {
  row.insert(row.end(), extra);
}

nlohmann::ordered_json grid_to_json(const GridSpec& g) {
  if (g.values.size() == 1) return g.values[0];
  return g.values;
}

GridSpec grid_from_json(const nlohmann::json& j, const std::string& key) {
  GridSpec g;
  if (j.is_number()) {
    g.values = {j.get<double>()};
  } else if (j.is_array()) {
    g.values = j.get<std::vector<double>>();
  } else if (j.is_object()) {
    for (const auto& field : {"start", "stop", "count"})
      if (!j.contains(field))
        throw ConfigError("config: grid '" + key + "' object needs start/stop/count");
    g = GridSpec::linspace(j["start"].get<double>(), j["stop"].get<double>(),
                           j["count"].get<int>());
  } else {
    throw ConfigError("config: '" + key +
                      "' must be a number, an array, or {start, stop, count}");
  }
  if (g.values.empty()) throw ConfigError("config: grid '" + key + "' is empty");
  for (double v : g.values)
    if (!std::isfinite(v))
      throw ConfigError("config: grid '" + key + "' contains a non-finite value");
  return g;
}

}  // namespace

GridSpec GridSpec::linspace(double start, double stop, int count) {
  if (count < 1) throw ConfigError("linspace: count must be >= 1");
  GridSpec g;
  if (count == 1) {
    g.values = {start};
    return g;
  }
  g.values.resize(count);
  for (int i = 0; i < count; ++i)
    g.values[i] = start + (stop - start) * i / (count - 1);
  return g;
}

std::string config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["model"] = c.model;
  if (c.model == "dimer")
    j["j"] = c.spin_j;
  else
    j["N"] = c.num_sites;
  j["J"] = grid_to_json(c.J);
  j["b"] = grid_to_json(c.b);
  j["phi"] = grid_to_json(c.phi);
  j["gamma"] = grid_to_json(c.gamma);
  j["T"] = grid_to_json(c.T);
  j["k"] = grid_to_json(c.k);
  j["mu"] = c.mu;
  j["sector"] = c.sector;
  j["initial_state"] = c.initial_state;
  j["random_count"] = c.random_count;
  j["seed"] = c.seed;
  j["steps"] = c.steps;
  j["burn_in"] = c.burn_in;
  j["window"] = c.window;
  j["slope_window"] = c.slope_window;
  j["bins"] = c.bins;
  j["outputs"] = c.outputs;
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig c;
  try {
    if (j.contains("model")) c.model = j["model"].get<std::string>();
    if (j.contains("N")) c.num_sites = j["N"].get<int>();
    if (j.contains("j")) c.spin_j = j["j"].get<double>();
    for (auto [key, grid] : {std::pair<const char*, GridSpec*>{"J", &c.J},
                             {"b", &c.b},
                             {"phi", &c.phi},
                             {"gamma", &c.gamma},
                             {"T", &c.T},
                             {"k", &c.k}})
      if (j.contains(key)) *grid = grid_from_json(j[key], key);
    if (j.contains("mu")) c.mu = j["mu"].get<double>();
    if (j.contains("sector")) c.sector = j["sector"].get<std::string>();
    if (j.contains("initial_state")) c.initial_state = j["initial_state"].get<std::string>();
    if (j.contains("random_count")) c.random_count = j["random_count"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("steps")) c.steps = j["steps"].get<int>();
    if (j.contains("burn_in")) c.burn_in = j["burn_in"].get<int>();
    if (j.contains("window")) c.window = j["window"].get<int>();
    if (j.contains("slope_window")) c.slope_window = j["slope_window"].get<int>();
    if (j.contains("bins")) c.bins = j["bins"].get<int>();
    if (j.contains("outputs")) c.outputs = j["outputs"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

void validate(const ExperimentConfig& c) {
  if (!kModels.count(c.model))
    throw ConfigError("config: unknown model '" + c.model +
                      "' (expected kicked-ising, kicked-ising-nonlocal, self-dual, dimer)");
  if (is_chain(c.model) || c.model == "self-dual") {
    const int lo = c.model == "self-dual" ? 2 : 1;
    if (c.num_sites < lo || c.num_sites > 14)
      throw ConfigError("config: N must be in [" + std::to_string(lo) +
                        ", 14] for model " + c.model);
  } else {
    const double two_j = 2.0 * c.spin_j;
    if (two_j < 1 || std::abs(two_j - std::round(two_j)) > 1e-9 || c.spin_j > 5000)
      throw ConfigError("config: dimer j must be a half-integer with 1 <= 2j <= 10000");
  }
  if (!kSectors.count(c.sector))
    throw ConfigError("config: sector must be 'full' or 'positive-parity'");
  if (!kInitialStates.count(c.initial_state))
    throw ConfigError("config: initial_state must be h0-eigenstate, uniform, or random");
  if (c.model == "kicked-ising")
    for (double g : c.gamma.values)
      if (g != 0.0)
        throw ConfigError("config: gamma requires model kicked-ising-nonlocal");
  if (is_chain(c.model) && c.k.is_swept())
    throw ConfigError("config: k is a dimer parameter and cannot be swept for " + c.model);
  if (c.model == "dimer")
    for (const auto& [name, grid] :
         {std::pair<const char*, const GridSpec*>{"J", &c.J},
          {"b", &c.b},
          {"phi", &c.phi},
          {"gamma", &c.gamma}})
      if (grid->is_swept())
        throw ConfigError(std::string("config: ") + name +
                          " is a spin-chain parameter and cannot be swept for dimer");
  if (c.model == "self-dual")
    for (const GridSpec* g : {&c.J, &c.b, &c.phi, &c.gamma, &c.T, &c.k})
      if (g->is_swept())
        throw ConfigError("config: self-dual has fixed couplings; nothing can be swept");
  for (double phi : c.phi.values)
    if (phi < 0 || phi > kPi / 2 + 1e-12)
      throw ConfigError("config: phi values must lie in [0, pi/2]");
  for (double t : c.T.values)
    if (t <= 0) throw ConfigError("config: T values must be > 0");
  if (c.random_count < 1 || c.random_count > 100)
    throw ConfigError("config: random_count must be in [1, 100]");
  if (c.steps < 0 || c.burn_in < 0 || c.window < 0 || c.slope_window < 0)
    throw ConfigError("config: steps, burn_in, window, slope_window must be >= 0");
  if (c.bins != 0 && c.bins < 2) throw ConfigError("config: bins must be 0 or >= 2");
  for (const auto& o : c.outputs)
    if (!kOutputs.count(o)) throw ConfigError("config: unknown output '" + o + "'");
}

std::vector<ParameterPoint> expand_grid(const ExperimentConfig& c) {
  std::vector<ParameterPoint> points;
  for (double J : c.J.values)
    for (double b : c.b.values)
      for (double phi : c.phi.values)
        for (double gamma : c.gamma.values)
          for (double T : c.T.values)
            for (double k : c.k.values)
              points.push_back({J, b, phi, gamma, T, k, c.mu});
  return points;
}

namespace {

// per-draw scalar metrics of one complexity run
struct ComplexityRun {
  Index dk = 0;
  bool halted_early = false;
  double saturation = 0, slope = 0;
  double sigma_sub = 0, sigma_diag_re = 0, sigma_diag_im = 0;
  bool has_dispersion = false;
  RealVector complexity, entropy, magnetization;
  RealVector sub, diag_re, diag_im;  // arnoldi coefficient sequences
  int burn_in = 0, window = 0, slope_window = 0, steps_out = 0;
};

ComplexityRun complexity_run(const ExperimentConfig& c, const BuiltModel& m,
                             const Vector& psi0, bool want_magnetization) {
  ComplexityRun r;
  const ArnoldiData data = arnoldi(m.op, psi0);
  r.dk = data.dim_krylov();
  r.halted_early = data.halted_early;
  const int dk = static_cast<int>(r.dk);
  r.burn_in = c.burn_in > 0 ? c.burn_in : 2 * dk;
  r.window = c.window > 0 ? c.window : 10 * dk;
  r.slope_window = c.slope_window > 0 ? c.slope_window : std::max(2, std::min(20, dk / 4));
  r.steps_out = c.steps > 0 ? c.steps : r.burn_in + r.window;
  const int total = std::max(r.steps_out, r.burn_in + r.window);

  const AmplitudeTrajectory traj = amplitudes_chain(data, total);
  const RealVector comp = spread_complexity(traj);
  const RealVector entr = spread_entropy(traj);
  r.complexity = comp.head(r.steps_out + 1);
  r.entropy = entr.head(r.steps_out + 1);
  r.saturation = saturation_value(traj, r.burn_in, r.window);
  r.slope = slope_fit(comp, std::min<int>(r.slope_window, static_cast<int>(comp.size())));

  if (dk >= 2) {
    const DispersionStats d = dispersion(data);
    r.sigma_sub = d.sigma_sub;
    r.sigma_diag_re = d.sigma_diag_re;
    r.sigma_diag_im = d.sigma_diag_im;
    r.has_dispersion = true;
    r.sub = data.subdiagonal();
  } else {
    r.sub = RealVector(0);
  }
  r.diag_re.resize(r.dk);
  r.diag_im.resize(r.dk);
  for (Index n = 0; n < r.dk; ++n) {
    r.diag_re(n) = data.hessenberg(n, n).real();
    r.diag_im(n) = data.hessenberg(n, n).imag();
  }
  if (want_magnetization) {
    const auto mag = magnetization_series(m.op.matrix, psi0, m.jz, r.steps_out);
    r.magnetization = mag.series;
  }
  return r;
}

Cell draw_cell(const ExperimentConfig& c, int draw) {
  if (c.initial_state != "random") return std::string();
  return static_cast<std::int64_t>(draw);
}

}  // namespace

RunResult run_complexity(const ExperimentConfig& c, int workers) {
  validate(c);
  const auto points = expand_grid(c);
  const int draws = c.initial_state == "random" ? c.random_count : 1;
  const bool want_mag = wants(c, "magnetization");

  RunResult out;
  Table& summary = out.tables["summary"];
  summary.columns = with_params({"draw", "D_K", "halted_early", "saturation", "slope",
                                 "sigma_sub", "sigma_diag_re", "sigma_diag_im",
                                 "burn_in", "window", "slope_window"});
  Table& steps = out.tables["steps"];
  {
    std::vector<std::string> cols = {"draw", "step", "C", "S"};
    if (want_mag) cols.push_back("Jz");
    steps.columns = with_params({});
    steps.columns.insert(steps.columns.end(), cols.begin(), cols.end());
  }
  Table& arnoldi_table = out.tables["arnoldi"];
  arnoldi_table.columns = with_params({"draw", "n", "h_sub", "h_diag_re", "h_diag_im"});

  std::vector<std::vector<ComplexityRun>> results(points.size());
  parallel_for(static_cast<Index>(points.size()), workers, [&](Index i) {
    try {
      const BuiltModel m = build_model(c, points[i]);
      for (int d = 0; d < draws; ++d) {
        const Vector psi0 = initial_state(c, m, i, d);
        results[i].push_back(complexity_run(c, m, psi0, want_mag));
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw NumericalError(std::string(e.what()) + " at " + point_label(c, points[i]));
    }
  });

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto params = param_cells(c, points[i]);
    for (int d = 0; d < draws; ++d) {
      const ComplexityRun& r = results[i][d];
      if (r.dk == 1)
        out.warnings.push_back("degenerate run (D_K = 1) at " + point_label(c, points[i]));
      auto row = params;
      append(row, {draw_cell(c, d), static_cast<std::int64_t>(r.dk),
                   std::string(r.halted_early ? "true" : "false"), r.saturation, r.slope});
      if (r.has_dispersion)
        append(row, {r.sigma_sub, r.sigma_diag_re, r.sigma_diag_im});
      else
        append(row, {std::string(), std::string(), std::string()});
      append(row, {static_cast<std::int64_t>(r.burn_in), static_cast<std::int64_t>(r.window),
                   static_cast<std::int64_t>(r.slope_window)});
      summary.add_row(std::move(row));

      for (int jstep = 0; jstep <= r.steps_out; ++jstep) {
        auto srow = params;
        append(srow, {draw_cell(c, d), static_cast<std::int64_t>(jstep), r.complexity(jstep),
                      r.entropy(jstep)});
        if (want_mag) srow.emplace_back(r.magnetization(jstep));
        steps.add_row(std::move(srow));
      }
      if (wants(c, "arnoldi")) {
        for (Index n = 0; n < r.dk; ++n) {
          auto arow = params;
          append(arow, {draw_cell(c, d), static_cast<std::int64_t>(n),
                        n >= 1 ? Cell(r.sub(n - 1)) : Cell(std::string()), r.diag_re(n),
                        r.diag_im(n)});
          arnoldi_table.add_row(std::move(arow));
        }
      }
    }
    if (draws > 1) {
      // mean row over random draws
      const auto& rs = results[i];
      auto mean_of = [&](auto proj) {
        double acc = 0;
        for (const auto& r : rs) acc += proj(r);
        return acc / rs.size();
      };
      auto row = params;
      append(row, {std::string("mean"),
                   mean_of([](const ComplexityRun& r) { return double(r.dk); }),
                   std::string(),
                   mean_of([](const ComplexityRun& r) { return r.saturation; }),
                   mean_of([](const ComplexityRun& r) { return r.slope; })});
      const bool all_disp = std::all_of(rs.begin(), rs.end(),
                                        [](const auto& r) { return r.has_dispersion; });
      if (all_disp)
        append(row, {mean_of([](const ComplexityRun& r) { return r.sigma_sub; }),
                     mean_of([](const ComplexityRun& r) { return r.sigma_diag_re; }),
                     mean_of([](const ComplexityRun& r) { return r.sigma_diag_im; })});
      else
        append(row, {std::string(), std::string(), std::string()});
      append(row, {static_cast<std::int64_t>(rs[0].burn_in),
                   static_cast<std::int64_t>(rs[0].window),
                   static_cast<std::int64_t>(rs[0].slope_window)});
      summary.add_row(std::move(row));

      const int common = std::min_element(rs.begin(), rs.end(),
                                          [](const auto& a, const auto& b) {
                                            return a.steps_out < b.steps_out;
                                          })->steps_out;
      for (int jstep = 0; jstep <= common; ++jstep) {
        auto srow = params;
        double cmean = 0, smean = 0, mmean = 0;
        for (const auto& r : rs) {
          cmean += r.complexity(jstep);
          smean += r.entropy(jstep);
          if (want_mag) mmean += r.magnetization(jstep);
        }
        append(srow, {std::string("mean"), static_cast<std::int64_t>(jstep),
                      cmean / rs.size(), smean / rs.size()});
        if (want_mag) srow.emplace_back(mmean / rs.size());
        steps.add_row(std::move(srow));
      }
    }
  }
  if (!wants(c, "arnoldi")) out.tables.erase("arnoldi");
  return out;
}

RunResult run_spectral(const ExperimentConfig& c, int workers) {
  validate(c);
  const auto points = expand_grid(c);

  RunResult out;
  Table& summary = out.tables["summary"];
  summary.columns =
      with_params({"dim", "r_mean", "eta", "degeneracies", "flag"});
  Table* hist_table = nullptr;
  if (c.bins > 0) {
    hist_table = &out.tables["hist"];
    hist_table->columns = with_params(
        {"bin_lo", "bin_hi", "density", "poisson_ref", "wigner_ref"});
  }

  struct SpectralRun {
    SpectralStats stats;
    SpacingHistogram hist;
    bool flagged = false;
  };
  std::vector<SpectralRun> results(points.size());
  parallel_for(static_cast<Index>(points.size()), workers, [&](Index i) {
    try {
      const BuiltModel m = build_model(c, points[i]);
      SpectralRun r;
      r.stats = spectral_stats(m.op.matrix);
      r.flagged = r.stats.degeneracies >= r.stats.phases.size() / 2;
      if (c.bins > 0 && !r.flagged)
        r.hist = spacing_histogram(r.stats.phases, c.bins);
      results[i] = std::move(r);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw NumericalError(std::string(e.what()) + " at " + point_label(c, points[i]));
    }
  });

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto params = param_cells(c, points[i]);
    const SpectralRun& r = results[i];
    auto row = params;
    if (r.flagged) {
      out.warnings.push_back("degenerate spectrum (eta undefined) at " +
                             point_label(c, points[i]));
      append(row, {static_cast<std::int64_t>(r.stats.phases.size()), std::string(),
                   std::string(), static_cast<std::int64_t>(r.stats.degeneracies),
                   std::string("degenerate")});
    } else {
      append(row, {static_cast<std::int64_t>(r.stats.phases.size()), r.stats.r_mean,
                   r.stats.eta, static_cast<std::int64_t>(r.stats.degeneracies),
                   std::string()});
    }
    summary.add_row(std::move(row));
    if (hist_table && !r.flagged) {
      for (Index b = 0; b < r.hist.density.size(); ++b) {
        auto hrow = params;
        append(hrow, {r.hist.edges(b), r.hist.edges(b + 1), r.hist.density(b),
                      r.hist.poisson_ref(b), r.hist.wigner_ref(b)});
        hist_table->add_row(std::move(hrow));
      }
    }
  }
  return out;
}

RunResult run_sweep(const ExperimentConfig& c, int workers) {
  validate(c);
  int swept = 0;
  for (const GridSpec* g : {&c.J, &c.b, &c.phi, &c.gamma, &c.T, &c.k})
    if (g->is_swept()) ++swept;
  if (swept > 2)
    throw ConfigError("sweep: at most two parameters may carry a grid, got " +
                      std::to_string(swept));

  const auto points = expand_grid(c);
  const int draws = c.initial_state == "random" ? c.random_count : 1;
  const bool want_eta = wants(c, "eta");
  const bool want_mag = wants(c, "magnetization");
  const bool want_arnoldi_metrics =
      wants(c, "dispersion") || wants(c, "saturation") || wants(c, "slope");

  struct SweepRun {
    double saturation = 0, slope = 0, sigma_sub = 0, sigma_diag_re = 0, sigma_diag_im = 0;
    double eta_value = 0, r_mean = 0, jz_avg = 0;
    Index dk = 0;
    bool has_dispersion = false;
  };
  std::vector<SweepRun> results(points.size());
  parallel_for(static_cast<Index>(points.size()), workers, [&](Index i) {
    try {
      const BuiltModel m = build_model(c, points[i]);
      SweepRun r;
      if (want_arnoldi_metrics || want_mag) {
        double sat = 0, slope = 0, ssub = 0, sre = 0, sim = 0, jz = 0;
        bool disp = true;
        Index dk_acc = 0;
        for (int d = 0; d < draws; ++d) {
          const Vector psi0 = initial_state(c, m, i, d);
          if (want_arnoldi_metrics) {
            const ComplexityRun cr = complexity_run(c, m, psi0, false);
            sat += cr.saturation;
            slope += cr.slope;
            disp = disp && cr.has_dispersion;
            ssub += cr.sigma_sub;
            sre += cr.sigma_diag_re;
            sim += cr.sigma_diag_im;
            dk_acc += cr.dk;
          }
          if (want_mag) {
            const int mag_steps = c.steps > 0 ? c.steps : 2000;
            jz += magnetization_series(m.op.matrix, psi0, m.jz, mag_steps).average;
          }
        }
        r.saturation = sat / draws;
        r.slope = slope / draws;
        r.sigma_sub = ssub / draws;
        r.sigma_diag_re = sre / draws;
        r.sigma_diag_im = sim / draws;
        r.jz_avg = jz / draws;
        r.dk = dk_acc / draws;
        r.has_dispersion = disp && want_arnoldi_metrics;
      }
      if (want_eta) {
        const SpectralStats stats = spectral_stats(m.op.matrix);
        r.r_mean = stats.r_mean;
        r.eta_value = stats.eta;
      }
      results[i] = r;
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw NumericalError(std::string(e.what()) + " at " + point_label(c, points[i]));
    }
  });

  RunResult out;
  Table& summary = out.tables["summary"];
  std::vector<std::string> metric_cols;
  if (want_arnoldi_metrics) {
    metric_cols.insert(metric_cols.end(),
                       {"D_K", "saturation", "slope", "sigma_sub", "sigma_diag_re",
                        "sigma_diag_im"});
  }
  if (want_eta) metric_cols.insert(metric_cols.end(), {"r_mean", "eta"});
  if (want_mag) metric_cols.push_back("jz_avg");
  summary.columns = kParamColumns;
  summary.columns.insert(summary.columns.end(), metric_cols.begin(), metric_cols.end());

  for (std::size_t i = 0; i < points.size(); ++i) {
    auto row = param_cells(c, points[i]);
    const SweepRun& r = results[i];
    if (want_arnoldi_metrics) {
      append(row, {static_cast<std::int64_t>(r.dk), r.saturation, r.slope});
      if (r.has_dispersion)
        append(row, {r.sigma_sub, r.sigma_diag_re, r.sigma_diag_im});
      else
        append(row, {std::string(), std::string(), std::string()});
    }
    if (want_eta) append(row, {r.r_mean, r.eta_value});
    if (want_mag) row.emplace_back(r.jz_avg);
    summary.add_row(std::move(row));
  }

  // companion table with each metric column rescaled to [0, 1]
  if (points.size() >= 2) {
    Table rescaled;
    rescaled.columns = summary.columns;
    std::vector<std::vector<double>> cols(metric_cols.size());
    for (std::size_t mcol = 0; mcol < metric_cols.size(); ++mcol) {
      const std::size_t col = kParamColumns.size() + mcol;
      for (const auto& row : summary.rows)
        if (const double* v = std::get_if<double>(&row[col])) cols[mcol].push_back(*v);
    }
    std::vector<std::optional<std::vector<double>>> scaled(metric_cols.size());
    for (std::size_t mcol = 0; mcol < metric_cols.size(); ++mcol) {
      if (metric_cols[mcol] == "D_K") continue;
      if (cols[mcol].size() != summary.rows.size()) continue;
      try {
        scaled[mcol] = rescale(cols[mcol]);
      } catch (const std::invalid_argument&) {
        out.warnings.push_back("rescale skipped for constant column '" +
                               metric_cols[mcol] + "'");
      }
    }
    bool any = false;
    for (const auto& s : scaled) any = any || s.has_value();
    if (any) {
      for (std::size_t i = 0; i < summary.rows.size(); ++i) {
        auto row = summary.rows[i];
        for (std::size_t mcol = 0; mcol < metric_cols.size(); ++mcol)
          if (scaled[mcol])
            row[kParamColumns.size() + mcol] = (*scaled[mcol])[i];
          else if (metric_cols[mcol] != "D_K")
            row[kParamColumns.size() + mcol] = std::string();
        rescaled.add_row(std::move(row));
      }
      out.tables["rescaled"] = std::move(rescaled);
    }
  }
  return out;
}

Table calibrate_rmt(std::size_t poisson_samples, int goe_matrices, int goe_dim,
                    std::uint64_t seed) {
  Table t;
  t.columns = {"ensemble", "samples", "dim", "r_mean", "reference", "abs_error"};
  const double rp = sample_poisson_r(poisson_samples, mix_seed(seed, 1, 0));
  t.add_row({std::string("poisson"), static_cast<std::int64_t>(poisson_samples),
             std::string(), rp, kPoissonRMean, std::abs(rp - kPoissonRMean)});
  const double rg = sample_goe_r(goe_matrices, goe_dim, mix_seed(seed, 2, 0));
  t.add_row({std::string("goe"), static_cast<std::int64_t>(goe_matrices),
             static_cast<std::int64_t>(goe_dim), rg, kGoeRMean,
             std::abs(rg - kGoeRMean)});
  return t;
}

namespace {

struct PresetDef {
  ExperimentConfig config;
  std::string description;
};

std::map<std::string, PresetDef> make_presets() {
  std::map<std::string, PresetDef> p;
  {
    ExperimentConfig c;
    c.model = "kicked-ising";
    c.num_sites = 11;
    c.phi = GridSpec::linspace(kPi / 60, kPi / 2, 24);
    p["fig1"] = {c, "spectral: eta vs phi, N=11 positive-parity sector"};
  }
  {
    ExperimentConfig c;
    c.model = "kicked-ising";
    c.num_sites = 13;
    c.phi.values = {kPi / 30, kPi / 3};
    c.bins = 30;
    p["fig2"] = {c, "spectral: level-spacing histograms at phi=pi/30 and pi/3, N=13 (slow)"};
  }
  {
    ExperimentConfig c;
    c.model = "kicked-ising";
    c.num_sites = 10;
    c.phi.values = {kPi / 30, kPi / 3};
    c.outputs = {"arnoldi", "dispersion", "complexity", "entropy"};
    p["fig3"] = {c, "complexity: Arnoldi coefficient sequences, near-integrable vs chaotic, N=10"};
    c.outputs = {"complexity", "entropy"};
    p["fig4"] = {c, "complexity: spread complexity and entropy series, N=10"};
  }
  {
    ExperimentConfig c;
    c.model = "kicked-ising";
    c.num_sites = 10;
    c.phi = GridSpec::linspace(kPi / 60, kPi / 2, 16);
    c.outputs = {"dispersion", "eta"};
    p["fig5"] = {c, "sweep: rescaled Arnoldi-coefficient dispersion vs phi, with eta"};
  }
  {
    ExperimentConfig c;
    c.model = "kicked-ising";
    c.num_sites = 10;
    c.phi = GridSpec::linspace(kPi / 30, kPi / 2 - kPi / 30, 12);
    c.outputs = {"saturation", "magnetization", "eta"};
    p["fig6"] = {c, "sweep: time-averaged magnetization and complexity saturation vs phi"};
  }
  {
    ExperimentConfig c;
    c.model = "kicked-ising-nonlocal";
    c.num_sites = 10;
    c.phi = GridSpec(kPi / 2);
    c.gamma.values = {0.0, 0.05, 0.1, 0.2, 0.4};
    c.outputs = {"saturation", "slope", "dispersion"};
    p["fig7"] = {c, "sweep: non-local coupling gamma at phi=pi/2"};
  }
  {
    ExperimentConfig c;
    c.model = "kicked-ising";
    c.num_sites = 10;
    c.T.values = {0.05, 0.2, 0.5, 1.0};
    c.outputs = {"arnoldi", "complexity", "entropy"};
    p["fig8"] = {c, "complexity: Arnoldi coefficients and complexity for several drive periods"};
  }
  {
    ExperimentConfig c;
    c.model = "kicked-ising";
    c.num_sites = 10;
    c.T.values = {0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0};
    c.outputs = {"slope", "saturation"};
    p["fig9"] = {c, "sweep: initial growth slope vs drive period"};
  }
  {
    ExperimentConfig c;
    c.model = "self-dual";
    c.num_sites = 8;
    c.steps = 120;
    p["figA"] = {c, "complexity: self-dual chain N=8, linear growth and recurrence"};
  }
  {
    ExperimentConfig c;
    c.model = "dimer";
    c.spin_j = 100.0;
    c.k.values = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0};
    c.mu = 3.0;
    c.sector = "full";
    c.outputs = {"eta", "saturation", "dispersion"};
    p["figC"] = {c, "sweep: kicked dimer k-sweep at mu=3.0 (set mu=6.0 for the integrable case)"};
  }
  return p;
}

const std::map<std::string, PresetDef>& presets_map() {
  static const std::map<std::string, PresetDef> p = make_presets();
  return p;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, def] : presets_map()) names.push_back(name);
  return names;
}

ExperimentConfig preset(const std::string& name) {
  const auto& p = presets_map();
  const auto it = p.find(name);
  if (it == p.end()) throw ConfigError("unknown preset '" + name + "'");
  return it->second.config;
}

std::string preset_description(const std::string& name) {
  const auto& p = presets_map();
  const auto it = p.find(name);
  if (it == p.end()) throw ConfigError("unknown preset '" + name + "'");
  return it->second.description;
}

}  // namespace floqspread
