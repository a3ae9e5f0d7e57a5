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

#include <stdexcept>
#include <string>
#include <vector>

#include "dcgpsr/measurement.hpp"
#include "dcgpsr/types.hpp"

namespace dcgpsr {

enum class Termination { tolerance, max_iters };
enum class InitKind { zeros, backprojection };

std::string to_string(Termination t);

struct SolverConfig {
  double rho = 0.0;     // 0 inherits the problem's penalty
  Index k_budget = -1;  // -1 inherits the problem's budget
  int max_outer = 1000;
  int max_inner = 200;
  double tol_outer = 1e-12; // epsilon on ||z^t - z^{t-1}||_2
  double tol_inner = 1e-8;  // relative, inner gradient-projection loop
  double alpha0 = 1.0;      // initial BB step
  double alpha_min = 1e-30;
  double alpha_max = 1e30;
  InitKind init = InitKind::zeros;
  Vec init_z; // explicit warm start in split coordinates; overrides init
  bool record_error_trace = false; // fill extended fields per iteration
};

struct IterRecord {
  int iter = 0;
  bool outer_marker = false; // DC outer-step completion (always true for
                             // single-loop solvers)
  double objective = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double delta_norm = 0.0;
  double elapsed_seconds = 0.0;
  // Extended fields, NaN unless record_error_trace is set.
  double objective_dc = 0.0;
  double objective_l1 = 0.0;
  double error_vs_truth = 0.0;
};

struct SolverResult {
  Vec x_hat;
  Vec z_final;
  std::vector<IterRecord> trace;
  int outer_iters = 0;
  int inner_iters_total = 0;
  Termination termination = Termination::max_iters;
  bool rank_deficient_ls = false; // OMP fell back to a pseudo-inverse refit
};

/// Thrown when an iterate or objective turns non-finite; carries the trace
/// accumulated up to the failure.
class numerical_failure : public std::runtime_error {
public:
  numerical_failure(const std::string& what, std::vector<IterRecord> trace)
      : std::runtime_error(what), trace(std::move(trace)) {}
  std::vector<IterRecord> trace;
};

/// The split-variable quadratic operator. apply_B computes
/// [t; -t] with t = Phi^T(Phi(u - v)); the 2n x 2n matrix is never formed.
class SplitOperator {
public:
  SplitOperator(const Mat& phi, const Vec& y, double lipschitz = 0.0);

  Index n() const { return phi_->cols(); }
  Index m() const { return phi_->rows(); }
  const Mat& phi() const { return *phi_; }
  const Vec& y() const { return *y_; }
  const Vec& phi_t_y() const { return phi_t_y_; }
  double lipschitz() const { return lipschitz_; }

  /// B z. When phi_d is given it receives Phi*(u - v) for objective reuse.
  Vec apply_B(const Vec& z, Vec* phi_d = nullptr) const;

private:
  const Mat* phi_;
  const Vec* y_;
  Vec phi_t_y_;
  double lipschitz_;
};

/// z = [(x)_+; (-x)_+].
Vec split(const Vec& x);
/// u - v.
Vec recombine(const Vec& z);
/// Elementwise max(0, v).
Vec project_nonneg(const Vec& v);

/// Double-loop DC gradient projection: outer DC linearization of the
/// top-(K,1) norm, inner BB gradient projection on the resulting BCQP.
SolverResult dldc_gpsr(const SparseProblem& problem, const SolverConfig& config);

/// Single-loop DC solver with the closed-form subproblem update
/// z^t = (z^{t-1} - (1/l)(B z^{t-1} - q - rho*1_K + rho*1))_+.
SolverResult sldc_basic(const SparseProblem& problem, const SolverConfig& config);

/// Single-loop DC solver accelerated with a monotone BB step.
SolverResult sldc_bb(const SparseProblem& problem, const SolverConfig& config);

/// Conventional l1-regularized gradient projection (same BCQP machinery,
/// no top-K subtraction).
SolverResult l1_gpsr(const SparseProblem& problem, const SolverConfig& config);

/// Iterative shrinkage-thresholding with the fixed step 1/l.
SolverResult ista(const SparseProblem& problem, const SolverConfig& config);

/// Greedy residual-correlation selection with a least-squares refit per step.
SolverResult omp(const SparseProblem& problem, Index k_budget,
                 bool record_error_trace = false);

/// Least-squares channel estimate from a full-rank pilot block:
/// H_hat = pinv(S) * R. Requires at least as many pilots as transmit
/// antennas and a full-column-rank S.
CMat ls_estimate(const CMat& s_matrix, const CMat& received);

/// sign(a) * max(|a| - tau, 0).
double soft_threshold(double a, double tau);

/// The single-loop engine shared by sldc_basic and sldc_bb.
enum class StepMode { fixed, monotone_bb };
SolverResult run_single_loop(const SparseProblem& problem,
                             const SolverConfig& config, StepMode mode);

namespace detail {
/// grad F(z) = B z - q - rho*1_K(z) + rho*1 for the special DC decomposition.
Vec grad_single_loop(const SplitOperator& op, const Vec& z, double rho,
                     Index k);
/// One projected gradient step (z - alpha*grad)_+.
Vec gp_step(const Vec& z, double alpha, const Vec& grad);
} // namespace detail

} // namespace dcgpsr
