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

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dcgpsr/experiment.hpp"
#include "dcgpsr/metrics.hpp"
#include "dcgpsr/rng.hpp"
#include "dcgpsr/serialize.hpp"
#include "dcgpsr/topk.hpp"

namespace fs = std::filesystem;
using namespace dcgpsr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

double parse_snr(const std::string& text) {
  if (text == "inf" || text == "+inf")
    return std::numeric_limits<double>::infinity();
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw config_error("invalid SNR value '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct GenerateArgs {
  std::string what = "channel";
  Index n_tx = 256, n_rx = 1, n_paths = 3, n_sparse = 16;
  std::string kind = "gaussian";
  Index pilot_len = 128;
  double power_budget = 0.0;
  std::string snr = "inf";
  double rho = 0.0;
  std::uint64_t seed = 1;
  int count = 1;
  std::string out = ".";
};

int cmd_generate(const GenerateArgs& args) {
  fs::create_directories(args.out);
  const ChannelParams params{args.n_tx, args.n_rx, args.n_paths, args.n_sparse};
  const double power = args.power_budget > 0.0
                           ? args.power_budget
                           : static_cast<double>(args.pilot_len);

  for (int i = 0; i < args.count; ++i) {
    const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(i);
    const std::string suffix =
        args.count == 1 ? "" : "_" + std::to_string(i);
    if (args.what == "channel") {
      const ChannelRealization chan = generate_channel(params, seed);
      write_text_file_atomic(fs::path(args.out) / ("channel" + suffix + ".json"),
                             channel_to_json(chan, params, seed));
    } else if (args.what == "measurement") {
      const MeasurementSetup setup = make_measurement_matrix(
          measurement_kind_from_string(args.kind), args.pilot_len, args.n_tx,
          power, seed);
      write_text_file_atomic(
          fs::path(args.out) / ("measurement" + suffix + ".json"),
          measurement_to_json(setup));
    } else if (args.what == "problem") {
      const ChannelRealization chan = generate_channel(params, seed);
      const MeasurementSetup setup = make_measurement_matrix(
          measurement_kind_from_string(args.kind), args.pilot_len, args.n_tx,
          power, mix_seed(seed, 0x50524f42));
      const double snr_db = parse_snr(args.snr);
      const Observation obs =
          observe(setup, chan, snr_db, mix_seed(seed, 0x4e4f4953));
      auto problems = columnize(obs.received, setup.s_matrix, chan,
                                obs.noise_variance, 2 * args.n_sparse,
                                /*rho=*/1.0);
      SparseProblem& p = problems.front();
      if (args.rho > 0.0) {
        p.rho = args.rho;
      } else {
        const double corr_max =
            (p.phi.transpose() * p.y).lpNorm<Eigen::Infinity>();
        p.rho = 0.1 * corr_max;
      }
      write_text_file_atomic(fs::path(args.out) / ("problem" + suffix + ".json"),
                             problem_to_json(p, seed));
    } else {
      throw config_error("--what must be channel, measurement, or problem");
    }
  }
  return kExitOk;
}

struct SolveArgs {
  std::string input;
  std::string algo = "sldc_bb";
  double rho = 0.0;
  Index k_budget = -1;
  double tol = 0.0;
  int max_outer = 0;
  std::string init = "zeros";
  std::string out = ".";
};

int cmd_solve(const SolveArgs& args) {
  const auto& valid = algorithm_names();
  if (std::find(valid.begin(), valid.end(), args.algo) == valid.end() ||
      args.algo == "ls") {
    std::string names;
    for (const auto& v : valid)
      if (v != "ls") names += (names.empty() ? "" : ", ") + v;
    std::cerr << "error: unknown algorithm '" << args.algo
              << "' (valid: " << names << ")\n";
    return kExitConfig;
  }

  SparseProblem problem = problem_from_json(read_text_file(args.input));
  if (args.rho > 0.0) problem.rho = args.rho;
  if (args.k_budget >= 0) problem.k_budget = args.k_budget;
  problem.lipschitz = lipschitz_constant(problem.phi);

  SolverConfig config;
  if (args.tol > 0.0) config.tol_outer = args.tol;
  if (args.max_outer > 0) config.max_outer = args.max_outer;
  config.init = args.init == "backprojection" ? InitKind::backprojection
                                              : InitKind::zeros;
  config.record_error_trace = problem.x_true.size() > 0;

  fs::create_directories(args.out);
  const auto t0 = std::chrono::steady_clock::now();
  SolverResult result;
  if (args.algo == "omp")
    result = omp(problem, problem.k_budget, config.record_error_trace);
  else if (args.algo == "dldc")
    result = dldc_gpsr(problem, config);
  else if (args.algo == "sldc_basic")
    result = sldc_basic(problem, config);
  else if (args.algo == "sldc_bb")
    result = sldc_bb(problem, config);
  else if (args.algo == "l1_gpsr")
    result = l1_gpsr(problem, config);
  else
    result = ista(problem, config);
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  double error = std::numeric_limits<double>::quiet_NaN();
  if (problem.x_true.size() == result.x_hat.size() &&
      problem.x_true.squaredNorm() > 0.0)
    error = (result.x_hat - problem.x_true).squaredNorm() /
            problem.x_true.squaredNorm();

  write_text_file_atomic(fs::path(args.out) / ("result_" + args.algo + ".json"),
                         result_to_json(result, args.algo, runtime, error));
  write_text_file_atomic(fs::path(args.out) / ("trace_" + args.algo + ".csv"),
                         trace_to_csv(result.trace));
  std::cout << "algorithm=" << args.algo
            << " termination=" << to_string(result.termination)
            << " outer_iters=" << result.outer_iters << " runtime_seconds="
            << runtime;
  if (std::isfinite(error)) std::cout << " error_l2_normalized=" << error;
  std::cout << "\n";
  return kExitOk;
}

struct BenchArgs {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  bool has_seed = false;
  // sweep overrides
  std::string snr_list, pilot_list, algo_list;
  int trials = 0;
};

int cmd_bench(const BenchArgs& args, bool allow_overrides) {
  ExperimentConfig config =
      experiment_config_from_json(read_text_file(args.config_path));
  if (args.has_seed) config.base_seed = args.seed;
  if (allow_overrides) {
    if (!args.snr_list.empty()) {
      config.snr_db.clear();
      for (const auto& s : split_list(args.snr_list))
        config.snr_db.push_back(parse_snr(s));
    }
    if (!args.pilot_list.empty()) {
      config.pilot_lengths.clear();
      for (const auto& s : split_list(args.pilot_list))
        config.pilot_lengths.push_back(static_cast<Index>(std::stoll(s)));
    }
    if (!args.algo_list.empty()) config.algorithms = split_list(args.algo_list);
    if (args.trials > 0) config.trials = args.trials;
    // Re-validate the overridden axes through the JSON round trip.
    config = experiment_config_from_json(experiment_config_to_json(config));
  }
  const fs::path out_dir = args.out.empty() ? fs::path(config.output_dir)
                                            : fs::path(args.out);
  run_experiment_to_dir(config, out_dir);
  std::cout << "wrote " << (out_dir / "results.csv").string() << "\n";
  if (config.scenario == Scenario::runtime_table) {
    const std::string summary =
        read_text_file(out_dir / "runtime_summary.csv");
    std::cout << summary;
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse reconstruction benchmarks for beamspace channel "
               "estimation"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate channel/measurement/problem JSON envelopes");
  generate->add_option("--what", gen.what,
                       "channel, measurement, or problem");
  generate->add_option("--n-tx", gen.n_tx, "transmit antennas");
  generate->add_option("--n-rx", gen.n_rx, "receive antennas");
  generate->add_option("--paths", gen.n_paths, "multipath components");
  generate->add_option("--sparse", gen.n_sparse, "kept beamspace coefficients");
  generate->add_option("--kind", gen.kind, "measurement matrix kind");
  generate->add_option("--pilot-len", gen.pilot_len, "pilot length L");
  generate->add_option("--power", gen.power_budget, "pilot power budget");
  generate->add_option("--snr-db", gen.snr, "target SNR in dB or 'inf'");
  generate->add_option("--rho", gen.rho, "penalty weight (0 = auto)");
  generate->add_option("--seed", gen.seed, "base seed");
  generate->add_option("--count", gen.count, "number of draws");
  generate->add_option("--out", gen.out, "output directory");

  SolveArgs solve;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve one problem file");
  solve_cmd->add_option("--input", solve.input, "problem JSON file")
      ->required();
  solve_cmd->add_option("--algo", solve.algo, "solver name");
  solve_cmd->add_option("--rho", solve.rho, "penalty override");
  solve_cmd->add_option("--k", solve.k_budget, "sparsity budget override");
  solve_cmd->add_option("--tol", solve.tol, "termination tolerance");
  solve_cmd->add_option("--max-outer", solve.max_outer, "iteration cap");
  solve_cmd->add_option("--init", solve.init, "zeros or backprojection");
  solve_cmd->add_option("--out", solve.out, "output directory");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Run an experiment config and write result CSVs");
  bench_cmd->add_option("--config", bench.config_path, "experiment JSON")
      ->required();
  bench_cmd->add_option("--out", bench.out, "output directory override");
  bench_cmd->add_option("--seed", bench.seed, "base seed override")
      ->each([&](const std::string&) { bench.has_seed = true; });

  BenchArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run a config with axis overrides from flags");
  sweep_cmd->add_option("--config", sweep.config_path, "experiment JSON")
      ->required();
  sweep_cmd->add_option("--snr", sweep.snr_list, "comma list of SNRs (dB)");
  sweep_cmd->add_option("--pilot-len", sweep.pilot_list,
                        "comma list of pilot lengths");
  sweep_cmd->add_option("--algos", sweep.algo_list,
                        "comma list of algorithms");
  sweep_cmd->add_option("--trials", sweep.trials, "trial count override");
  sweep_cmd->add_option("--seed", sweep.seed, "base seed override")
      ->each([&](const std::string&) { sweep.has_seed = true; });
  sweep_cmd->add_option("--out", sweep.out, "output directory override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (solve_cmd->parsed()) return cmd_solve(solve);
    if (bench_cmd->parsed()) return cmd_bench(bench, false);
    if (sweep_cmd->parsed()) return cmd_bench(sweep, true);
  } catch (const numerical_failure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
