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

#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dcgpsr/channel.hpp"
#include "dcgpsr/measurement.hpp"
#include "dcgpsr/serialize.hpp"
#include "dcgpsr/solvers.hpp"

namespace dcgpsr {

enum class Scenario {
  reconstruction_demo,
  nmse_vs_snr,
  rate_vs_pilot_len,
  runtime_table,
  convergence_trace,
};

Scenario scenario_from_string(const std::string& name);
std::string to_string(Scenario s);

/// Registered solver names accepted in configs and on the command line.
const std::vector<std::string>& algorithm_names();

/// Solver settings plus the penalty policy: rho > 0 is used verbatim,
/// rho == 0 resolves per problem to rho_scale * ||Phi^T y||_inf.
struct SolverSettings {
  SolverConfig config;
  double rho_scale = 0.1;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::reconstruction_demo;
  ChannelParams channel;
  double spacing_over_wavelength = 0.5;
  MeasurementKind measurement_kind = MeasurementKind::gaussian;
  std::vector<Index> pilot_lengths = {128};
  double power_budget = 0.0; // 0 -> per-setup default (the pilot length)
  std::vector<double> snr_db = {
      std::numeric_limits<double>::infinity()};
  Index coherence_len = 600;
  std::vector<std::string> algorithms = {"dldc", "sldc_bb", "l1_gpsr"};
  int trials = 100;
  std::uint64_t base_seed = 1;
  SolverSettings solver;
  std::map<std::string, SolverSettings> per_algorithm; // merged overrides
  int workers = 0;    // 0 -> hardware concurrency
  bool emit_timing = true;
  std::string output_dir = ".";
};

/// Parses and validates the strict JSON schema; unknown keys are rejected.
/// Throws config_error with the offending key path or parse location.
ExperimentConfig experiment_config_from_json(const std::string& text);
std::string experiment_config_to_json(const ExperimentConfig& config);

/// Settings for one algorithm: the per-algorithm override when present,
/// otherwise the base solver settings.
const SolverSettings& settings_for(const ExperimentConfig& config,
                                   const std::string& algorithm);

struct ResultRow {
  std::string scenario;
  std::string algorithm;
  Index pilot_len = 0;
  double snr_db = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double nmse = 0.0;
  double error_l2_normalized = 0.0;
  double spectral_efficiency = 0.0;
  double runtime_seconds = 0.0;
  int outer_iters = 0;
  int inner_iters = 0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<std::string> failures; // one log line per flagged solve
  /// Header row + one line per row; '#' comment lines carry the timestamp
  /// (when timing is emitted) and the failure log.
  std::string to_csv(bool emit_timing) const;
};

/// Runs the configured sweep: per trial, one channel is generated, observed,
/// columnized once per (L, SNR) cell and solved by every selected algorithm
/// from identical inputs. Trials may run on a worker pool; the row order is
/// deterministic regardless of scheduling. Solver failures are flagged and
/// the run continues.
ResultTable run_experiment(const ExperimentConfig& config);

/// Per-iteration convergence traces (single trial, first L and SNR of the
/// config): writes trace_<algorithm>.csv files with columns
/// iter,is_outer,objective_dc_form,objective_l1_form,error_vs_truth.
void emit_convergence_trace(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir);

/// Dispatches by scenario: writes results.csv, plus runtime_summary.csv for
/// runtime_table and trace CSVs for convergence_trace.
void run_experiment_to_dir(const ExperimentConfig& config,
                           const std::filesystem::path& out_dir);

/// mean/median runtimes per algorithm plus the ratio against dldc.
std::string runtime_summary_csv(const ResultTable& table);

} // namespace dcgpsr
