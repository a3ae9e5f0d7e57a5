// dcgpsr — DC gradient-projection sparse reconstruction for beamspace channels
// Copyright (C) 2026 The dcgpsr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dcgpsr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dcgpsr/metrics.hpp"
#include "dcgpsr/rng.hpp"
#include "dcgpsr/topk.hpp"

namespace dcgpsr {

using nlohmann::json;

namespace {

constexpr std::uint64_t kMeasurementSalt = 0x4d454153; // "MEAS"
constexpr std::uint64_t kNoiseSalt = 0x4e4f4953;       // "NOIS"
constexpr std::uint64_t kLsSalt = 0x4c530000;          // "LS"

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string iso8601_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

[[noreturn]] void bad_key(const std::string& path, const std::string& key) {
  throw config_error("config: unexpected key '" + key + "' in " + path);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        ok = true;
        break;
      }
    if (!ok) bad_key(path, item.key());
  }
}

double snr_entry(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Infinity")
      return std::numeric_limits<double>::infinity();
  }
  throw config_error("config: snr_db entries must be numbers or \"inf\"");
}

void parse_solver_block(const json& j, const std::string& path,
                        SolverSettings* out) {
  check_keys(j, path,
             {"rho", "rho_scale", "k_budget", "max_outer", "max_inner",
              "tol_outer", "tol_inner", "alpha0", "alpha_min", "alpha_max",
              "init"});
  SolverConfig& c = out->config;
  if (j.contains("rho")) c.rho = j.at("rho").get<double>();
  if (j.contains("rho_scale")) out->rho_scale = j.at("rho_scale").get<double>();
  if (j.contains("k_budget")) c.k_budget = j.at("k_budget").get<Index>();
  if (j.contains("max_outer")) c.max_outer = j.at("max_outer").get<int>();
  if (j.contains("max_inner")) c.max_inner = j.at("max_inner").get<int>();
  if (j.contains("tol_outer")) c.tol_outer = j.at("tol_outer").get<double>();
  if (j.contains("tol_inner")) c.tol_inner = j.at("tol_inner").get<double>();
  if (j.contains("alpha0")) c.alpha0 = j.at("alpha0").get<double>();
  if (j.contains("alpha_min")) c.alpha_min = j.at("alpha_min").get<double>();
  if (j.contains("alpha_max")) c.alpha_max = j.at("alpha_max").get<double>();
  if (j.contains("init")) {
    const std::string init = j.at("init").get<std::string>();
    if (init == "zeros")
      c.init = InitKind::zeros;
    else if (init == "backprojection")
      c.init = InitKind::backprojection;
    else
      throw config_error("config: " + path + ".init must be 'zeros' or "
                         "'backprojection'");
  }
}

json solver_block_to_json(const SolverSettings& s) {
  return json{{"rho", s.config.rho},
              {"rho_scale", s.rho_scale},
              {"k_budget", s.config.k_budget},
              {"max_outer", s.config.max_outer},
              {"max_inner", s.config.max_inner},
              {"tol_outer", s.config.tol_outer},
              {"tol_inner", s.config.tol_inner},
              {"alpha0", s.config.alpha0},
              {"alpha_min", s.config.alpha_min},
              {"alpha_max", s.config.alpha_max},
              {"init", s.config.init == InitKind::zeros ? "zeros"
                                                        : "backprojection"}};
}

double resolve_rho(const SolverSettings& settings, const SparseProblem& p) {
  if (settings.config.rho > 0.0) return settings.config.rho;
  const double corr_max = (p.phi.transpose() * p.y).lpNorm<Eigen::Infinity>();
  const double rho = settings.rho_scale * corr_max;
  return rho > 0.0 ? rho : 1e-12;
}

struct CellOutput {
  std::vector<ResultRow> rows;
  std::vector<std::string> failures;
};

struct SolveOutcome {
  SolverResult result;
  double runtime_seconds = 0.0;
};

SolveOutcome timed_solve(const std::string& algorithm, SparseProblem& problem,
                         const SolverConfig& config) {
  SolveOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  if (algorithm == "dldc")
    out.result = dldc_gpsr(problem, config);
  else if (algorithm == "sldc_basic")
    out.result = sldc_basic(problem, config);
  else if (algorithm == "sldc_bb")
    out.result = sldc_bb(problem, config);
  else if (algorithm == "l1_gpsr")
    out.result = l1_gpsr(problem, config);
  else if (algorithm == "ista")
    out.result = ista(problem, config);
  else if (algorithm == "omp")
    out.result = omp(problem, problem.k_budget, config.record_error_trace);
  else
    throw config_error("unknown algorithm '" + algorithm + "'");
  out.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

} // namespace

Scenario scenario_from_string(const std::string& name) {
  if (name == "reconstruction_demo") return Scenario::reconstruction_demo;
  if (name == "nmse_vs_snr") return Scenario::nmse_vs_snr;
  if (name == "rate_vs_pilot_len") return Scenario::rate_vs_pilot_len;
  if (name == "runtime_table") return Scenario::runtime_table;
  if (name == "convergence_trace") return Scenario::convergence_trace;
  throw config_error(
      "config: unknown scenario '" + name +
      "' (valid: reconstruction_demo, nmse_vs_snr, rate_vs_pilot_len, "
      "runtime_table, convergence_trace)");
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::reconstruction_demo: return "reconstruction_demo";
    case Scenario::nmse_vs_snr: return "nmse_vs_snr";
    case Scenario::rate_vs_pilot_len: return "rate_vs_pilot_len";
    case Scenario::runtime_table: return "runtime_table";
    case Scenario::convergence_trace: return "convergence_trace";
  }
  return "?";
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "dldc", "sldc_basic", "sldc_bb", "l1_gpsr", "ista", "omp", "ls"};
  return names;
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset into a line number for the error message.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw config_error("config: JSON parse error at line " +
                       std::to_string(line) + ": " + e.what());
  }
  if (!j.is_object()) throw config_error("config: root must be an object");

  check_keys(j, "root",
             {"scenario", "channel", "measurement", "snr_db", "coherence_len",
              "algorithms", "trials", "base_seed", "solver", "solver_overrides",
              "workers", "emit_timing", "output_dir"});
  if (!j.contains("scenario"))
    throw config_error("config: missing required key 'scenario'");

  ExperimentConfig cfg;
  cfg.scenario = scenario_from_string(j.at("scenario").get<std::string>());

  if (j.contains("channel")) {
    const json& c = j.at("channel");
    check_keys(c, "channel",
               {"n_tx", "n_rx", "n_paths", "n_sparse",
                "spacing_over_wavelength"});
    if (c.contains("n_tx")) cfg.channel.n_tx = c.at("n_tx").get<Index>();
    if (c.contains("n_rx")) cfg.channel.n_rx = c.at("n_rx").get<Index>();
    if (c.contains("n_paths")) cfg.channel.n_paths = c.at("n_paths").get<Index>();
    if (c.contains("n_sparse"))
      cfg.channel.n_sparse = c.at("n_sparse").get<Index>();
    if (c.contains("spacing_over_wavelength"))
      cfg.spacing_over_wavelength =
          c.at("spacing_over_wavelength").get<double>();
  }

  if (j.contains("measurement")) {
    const json& m = j.at("measurement");
    check_keys(m, "measurement", {"kind", "pilot_lengths", "power_budget"});
    if (m.contains("kind"))
      cfg.measurement_kind =
          measurement_kind_from_string(m.at("kind").get<std::string>());
    if (m.contains("pilot_lengths")) {
      cfg.pilot_lengths.clear();
      for (const auto& v : m.at("pilot_lengths"))
        cfg.pilot_lengths.push_back(v.get<Index>());
      if (cfg.pilot_lengths.empty())
        throw config_error("config: measurement.pilot_lengths is empty");
    }
    if (m.contains("power_budget"))
      cfg.power_budget = m.at("power_budget").get<double>();
  }

  if (j.contains("snr_db")) {
    cfg.snr_db.clear();
    for (const auto& v : j.at("snr_db")) cfg.snr_db.push_back(snr_entry(v));
    if (cfg.snr_db.empty()) throw config_error("config: snr_db is empty");
  }
  if (j.contains("coherence_len"))
    cfg.coherence_len = j.at("coherence_len").get<Index>();
  if (j.contains("algorithms")) {
    cfg.algorithms.clear();
    for (const auto& v : j.at("algorithms"))
      cfg.algorithms.push_back(v.get<std::string>());
  }
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("base_seed"))
    cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
  if (j.contains("solver")) parse_solver_block(j.at("solver"), "solver", &cfg.solver);
  if (j.contains("solver_overrides")) {
    for (const auto& item : j.at("solver_overrides").items()) {
      SolverSettings merged = cfg.solver;
      parse_solver_block(item.value(), "solver_overrides." + item.key(),
                         &merged);
      cfg.per_algorithm[item.key()] = merged;
    }
  }
  if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  if (j.contains("emit_timing")) cfg.emit_timing = j.at("emit_timing").get<bool>();
  if (j.contains("output_dir"))
    cfg.output_dir = j.at("output_dir").get<std::string>();

  // Validation of the assembled config.
  if (cfg.trials < 1) throw config_error("config: trials must be >= 1");
  if (cfg.algorithms.empty())
    throw config_error("config: algorithms must be non-empty");
  const auto& valid = algorithm_names();
  for (const auto& a : cfg.algorithms) {
    if (std::find(valid.begin(), valid.end(), a) == valid.end()) {
      std::string names;
      for (const auto& v : valid) names += (names.empty() ? "" : ", ") + v;
      throw config_error("config: unknown algorithm '" + a +
                         "' (valid: " + names + ")");
    }
  }
  for (const auto& [name, _] : cfg.per_algorithm) {
    if (std::find(valid.begin(), valid.end(), name) == valid.end())
      throw config_error("config: solver_overrides names unknown algorithm '" +
                         name + "'");
  }
  if (cfg.channel.n_tx < 1 || cfg.channel.n_rx < 1 || cfg.channel.n_paths < 1)
    throw config_error("config: channel dimensions must be positive");
  if (cfg.channel.n_sparse < 1 ||
      cfg.channel.n_sparse > cfg.channel.n_tx * cfg.channel.n_rx)
    throw config_error("config: n_sparse out of range");
  for (const Index len : cfg.pilot_lengths)
    if (len < 1) throw config_error("config: pilot lengths must be positive");
  if (cfg.coherence_len < 1)
    throw config_error("config: coherence_len must be >= 1");
  return cfg;
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["scenario"] = to_string(cfg.scenario);
  j["channel"] = {{"n_tx", cfg.channel.n_tx},
                  {"n_rx", cfg.channel.n_rx},
                  {"n_paths", cfg.channel.n_paths},
                  {"n_sparse", cfg.channel.n_sparse},
                  {"spacing_over_wavelength", cfg.spacing_over_wavelength}};
  j["measurement"] = {{"kind", to_string(cfg.measurement_kind)},
                      {"pilot_lengths", cfg.pilot_lengths},
                      {"power_budget", cfg.power_budget}};
  json snrs = json::array();
  for (double s : cfg.snr_db) {
    if (std::isinf(s))
      snrs.push_back("inf");
    else
      snrs.push_back(s);
  }
  j["snr_db"] = snrs;
  j["coherence_len"] = cfg.coherence_len;
  j["algorithms"] = cfg.algorithms;
  j["trials"] = cfg.trials;
  j["base_seed"] = cfg.base_seed;
  j["solver"] = solver_block_to_json(cfg.solver);
  if (!cfg.per_algorithm.empty()) {
    json o = json::object();
    for (const auto& [name, s] : cfg.per_algorithm)
      o[name] = solver_block_to_json(s);
    j["solver_overrides"] = o;
  }
  j["workers"] = cfg.workers;
  j["emit_timing"] = cfg.emit_timing;
  j["output_dir"] = cfg.output_dir;
  return j.dump(2);
}

const SolverSettings& settings_for(const ExperimentConfig& config,
                                   const std::string& algorithm) {
  const auto it = config.per_algorithm.find(algorithm);
  return it != config.per_algorithm.end() ? it->second : config.solver;
}

std::string ResultTable::to_csv(bool emit_timing) const {
  std::ostringstream os;
  if (emit_timing) os << "# generated " << iso8601_now() << "\n";
  os << "scenario,algorithm,L,snr_db,trial,seed,nmse,error_l2_normalized,"
        "spectral_efficiency,runtime_seconds,outer_iters,inner_iters\n";
  for (const auto& r : rows) {
    os << r.scenario << ',' << r.algorithm << ',' << r.pilot_len << ','
       << fmt_double(r.snr_db) << ',' << r.trial << ',' << r.seed << ','
       << fmt_double(r.nmse) << ',' << fmt_double(r.error_l2_normalized) << ','
       << fmt_double(r.spectral_efficiency) << ','
       << fmt_double(emit_timing ? r.runtime_seconds : 0.0) << ','
       << r.outer_iters << ',' << r.inner_iters << '\n';
  }
  for (const auto& f : failures) os << "# failed " << f << '\n';
  return os.str();
}

namespace {

// Everything produced by one (trial, L, snr, algorithm) solve.
void run_cell(const ExperimentConfig& config, int trial,
              const ChannelRealization& channel,
              const MeasurementSetup& setup, double lipschitz,
              Index pilot_len, std::size_t l_index, double snr_db,
              std::size_t snr_index, CellOutput* out) {
  const std::uint64_t trial_seed = config.base_seed + static_cast<std::uint64_t>(trial);
  const std::uint64_t noise_seed =
      mix_seed(trial_seed, kNoiseSalt + 1000 * l_index + snr_index);
  const Observation obs = observe(setup, channel, snr_db, noise_seed);

  const Index k_budget = config.solver.config.k_budget >= 0
                             ? config.solver.config.k_budget
                             : 2 * config.channel.n_sparse;
  std::vector<SparseProblem> problems =
      columnize(obs.received, setup.s_matrix, channel, obs.noise_variance,
                k_budget, /*rho=*/1.0);
  for (auto& p : problems) p.lipschitz = lipschitz;

  const CMat truth = channel.beamspace_sparse.transpose();
  const double snr_linear =
      std::isinf(snr_db) ? std::numeric_limits<double>::infinity()
                         : std::pow(10.0, snr_db / 10.0);

  for (const std::string& algorithm : config.algorithms) {
    ResultRow row;
    row.scenario = to_string(config.scenario);
    row.algorithm = algorithm;
    row.pilot_len = pilot_len;
    row.snr_db = snr_db;
    row.trial = trial;
    row.seed = trial_seed;

    try {
      if (algorithm == "ls") {
        // The least-squares baseline gets its own full-rank orthonormal
        // pilot block (L = n_tx).
        const std::uint64_t ls_seed = mix_seed(trial_seed, kLsSalt + l_index);
        const MeasurementSetup ls_setup = make_measurement_matrix(
            MeasurementKind::partial_fourier, config.channel.n_tx,
            config.channel.n_tx, static_cast<double>(config.channel.n_tx),
            ls_seed);
        const Observation ls_obs =
            observe(ls_setup, channel, snr_db, mix_seed(noise_seed, kLsSalt));
        const auto t0 = std::chrono::steady_clock::now();
        const CMat estimate = ls_estimate(ls_setup.s_matrix, ls_obs.received);
        row.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        row.pilot_len = config.channel.n_tx;
        row.nmse = (truth - estimate).squaredNorm() / truth.squaredNorm();
        row.error_l2_normalized = row.nmse;
        row.outer_iters = 1;
        row.inner_iters = 1;
      } else {
        const SolverSettings& settings = settings_for(config, algorithm);
        CMat estimate(truth.rows(), truth.cols());
        double err_num = 0.0, err_den = 0.0;
        for (auto& p : problems) {
          p.rho = resolve_rho(settings, p);
          SolverConfig cfg = settings.config;
          cfg.rho = 0.0;      // problem carries the resolved penalty
          cfg.k_budget = -1;  // problem carries the budget
          SolveOutcome outcome = timed_solve(algorithm, p, cfg);
          row.runtime_seconds += outcome.runtime_seconds;
          row.outer_iters += outcome.result.outer_iters;
          row.inner_iters += outcome.result.inner_iters_total;
          err_num += (outcome.result.x_hat - p.x_true).squaredNorm();
          err_den += p.x_true.squaredNorm();
          estimate.col(&p - problems.data()) = complexify(outcome.result.x_hat);
        }
        row.nmse = (truth - estimate).squaredNorm() / truth.squaredNorm();
        row.error_l2_normalized = err_den > 0.0 ? err_num / err_den : 0.0;
      }
      row.spectral_efficiency = spectral_efficiency(
          row.pilot_len, config.coherence_len, snr_linear, row.nmse);
      out->rows.push_back(std::move(row));
    } catch (const numerical_failure& e) {
      std::ostringstream msg;
      msg << "trial=" << trial << " L=" << pilot_len << " snr="
          << fmt_double(snr_db) << " algo=" << algorithm << " : " << e.what();
      out->failures.push_back(msg.str());
    }
  }
}

} // namespace

ResultTable run_experiment(const ExperimentConfig& config) {
  const int trials = config.trials;
  std::vector<CellOutput> per_trial(static_cast<std::size_t>(trials));

  int workers = config.workers > 0
                    ? config.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, trials));

  std::atomic<int> next_trial{0};
  std::atomic<bool> aborted{false};
  std::string abort_message;
  std::mutex abort_mutex;

  auto worker_fn = [&]() {
    for (;;) {
      const int trial = next_trial.fetch_add(1);
      if (trial >= trials || aborted.load()) break;
      try {
        const std::uint64_t trial_seed =
            config.base_seed + static_cast<std::uint64_t>(trial);
        const ChannelRealization channel = generate_channel(
            config.channel, ArrayGeometry{config.channel.n_tx,
                                          config.spacing_over_wavelength},
            ArrayGeometry{config.channel.n_rx, config.spacing_over_wavelength},
            trial_seed);
        CellOutput& out = per_trial[static_cast<std::size_t>(trial)];
        for (std::size_t li = 0; li < config.pilot_lengths.size(); ++li) {
          const Index pilot_len = config.pilot_lengths[li];
          const double power = config.power_budget > 0.0
                                   ? config.power_budget
                                   : static_cast<double>(pilot_len);
          const MeasurementSetup setup = make_measurement_matrix(
              config.measurement_kind, pilot_len, config.channel.n_tx, power,
              mix_seed(trial_seed, kMeasurementSalt + li));
          const double lipschitz =
              lipschitz_constant(stack_real(setup.s_matrix));
          for (std::size_t si = 0; si < config.snr_db.size(); ++si)
            run_cell(config, trial, channel, setup, lipschitz, pilot_len, li,
                     config.snr_db[si], si, &out);
        }
      } catch (const std::exception& e) {
        std::scoped_lock lock(abort_mutex);
        aborted.store(true);
        if (abort_message.empty()) abort_message = e.what();
        break;
      }
    }
  };

  if (workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();
  }
  if (aborted.load())
    throw std::runtime_error("run_experiment: " + abort_message);

  ResultTable table;
  for (auto& cell : per_trial) {
    for (auto& r : cell.rows) table.rows.push_back(std::move(r));
    for (auto& f : cell.failures) table.failures.push_back(std::move(f));
  }

  // Deterministic output order: (trial, algorithm, L, snr).
  auto algo_index = [&](const std::string& name) {
    const auto it =
        std::find(config.algorithms.begin(), config.algorithms.end(), name);
    return std::distance(config.algorithms.begin(), it);
  };
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [&](const ResultRow& a, const ResultRow& b) {
                     if (a.trial != b.trial) return a.trial < b.trial;
                     const auto ai = algo_index(a.algorithm);
                     const auto bi = algo_index(b.algorithm);
                     if (ai != bi) return ai < bi;
                     if (a.pilot_len != b.pilot_len)
                       return a.pilot_len < b.pilot_len;
                     return a.snr_db < b.snr_db;
                   });
  return table;
}

void emit_convergence_trace(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir) {
  const std::uint64_t trial_seed = config.base_seed;
  const ChannelRealization channel = generate_channel(
      config.channel,
      ArrayGeometry{config.channel.n_tx, config.spacing_over_wavelength},
      ArrayGeometry{config.channel.n_rx, config.spacing_over_wavelength},
      trial_seed);
  const Index pilot_len = config.pilot_lengths.front();
  const double snr_db = config.snr_db.front();
  const double power = config.power_budget > 0.0
                           ? config.power_budget
                           : static_cast<double>(pilot_len);
  const MeasurementSetup setup = make_measurement_matrix(
      config.measurement_kind, pilot_len, config.channel.n_tx, power,
      mix_seed(trial_seed, kMeasurementSalt));
  const Observation obs =
      observe(setup, channel, snr_db, mix_seed(trial_seed, kNoiseSalt));

  const Index k_budget = config.solver.config.k_budget >= 0
                             ? config.solver.config.k_budget
                             : 2 * config.channel.n_sparse;
  std::vector<SparseProblem> problems =
      columnize(obs.received, setup.s_matrix, channel, obs.noise_variance,
                k_budget, /*rho=*/1.0);
  SparseProblem& problem = problems.front();
  problem.lipschitz = lipschitz_constant(problem.phi);

  std::filesystem::create_directories(out_dir);
  for (const std::string& algorithm : config.algorithms) {
    if (algorithm == "ls") continue; // not an iterative solver
    const SolverSettings& settings = settings_for(config, algorithm);
    problem.rho = resolve_rho(settings, problem);
    SolverConfig cfg = settings.config;
    cfg.rho = 0.0;
    cfg.k_budget = -1;
    cfg.record_error_trace = true;
    const SolveOutcome outcome = timed_solve(algorithm, problem, cfg);

    std::ostringstream os;
    os << "iter,is_outer,objective_dc_form,objective_l1_form,error_vs_truth\n";
    for (const auto& rec : outcome.result.trace) {
      os << rec.iter << ',' << (rec.outer_marker ? 1 : 0) << ','
         << fmt_double(rec.objective_dc) << ',' << fmt_double(rec.objective_l1)
         << ',' << fmt_double(rec.error_vs_truth) << '\n';
    }
    write_text_file_atomic(out_dir / ("trace_" + algorithm + ".csv"),
                           os.str());
  }
}

std::string runtime_summary_csv(const ResultTable& table) {
  std::map<std::string, std::vector<double>> runtimes;
  for (const auto& r : table.rows) runtimes[r.algorithm].push_back(r.runtime_seconds);

  double dldc_mean = 0.0;
  if (const auto it = runtimes.find("dldc"); it != runtimes.end()) {
    for (double v : it->second) dldc_mean += v;
    dldc_mean /= static_cast<double>(it->second.size());
  }

  std::ostringstream os;
  os << "algorithm,mean_seconds,median_seconds,ratio_vs_dldc\n";
  for (auto& [name, values] : runtimes) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    const double median = values.size() % 2 == 1
                              ? values[mid]
                              : 0.5 * (values[mid - 1] + values[mid]);
    os << name << ',' << fmt_double(mean) << ',' << fmt_double(median) << ',';
    if (dldc_mean > 0.0)
      os << fmt_double(mean / dldc_mean);
    else
      os << "nan";
    os << '\n';
  }
  return os.str();
}

void run_experiment_to_dir(const ExperimentConfig& config,
                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  if (config.scenario == Scenario::convergence_trace) {
    emit_convergence_trace(config, out_dir);
    return;
  }
  const ResultTable table = run_experiment(config);
  write_text_file_atomic(out_dir / "results.csv",
                         table.to_csv(config.emit_timing));
  if (config.scenario == Scenario::runtime_table)
    write_text_file_atomic(out_dir / "runtime_summary.csv",
                           runtime_summary_csv(table));
}

} // namespace dcgpsr
