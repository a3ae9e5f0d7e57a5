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

#include "dcgpsr/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "dcgpsr/topk.hpp"

namespace dcgpsr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double clamp_step(double a, double lo, double hi) {
  return std::min(hi, std::max(lo, a));
}

struct Effective {
  double rho;
  Index k;
};

Effective effective_params(const SparseProblem& problem,
                           const SolverConfig& config, bool needs_rho) {
  const double rho = config.rho > 0.0 ? config.rho : problem.rho;
  const Index k = config.k_budget >= 0 ? config.k_budget : problem.k_budget;
  if (needs_rho && !(rho > 0.0))
    throw std::invalid_argument("solver: rho must be positive");
  if (k < 0 || k > problem.phi.cols())
    throw std::invalid_argument("solver: k_budget out of range");
  return {rho, k};
}

void validate_problem(const SparseProblem& problem) {
  if (problem.phi.rows() != problem.y.size())
    throw std::invalid_argument("solver: phi rows and y length disagree");
  if (problem.phi.size() == 0)
    throw std::invalid_argument("solver: empty operator");
}

void validate_config(const SolverConfig& config) {
  if (!(config.alpha_min > 0.0) || !(config.alpha_min <= config.alpha_max) ||
      !std::isfinite(config.alpha_max))
    throw std::invalid_argument("solver: require 0 < alpha_min <= alpha_max < inf");
  if (!(config.tol_outer > 0.0) || !(config.tol_inner > 0.0))
    throw std::invalid_argument("solver: tolerances must be positive");
  if (config.max_outer < 1)
    throw std::invalid_argument("solver: max_outer must be >= 1");
}

class Tracer {
public:
  Tracer(const SparseProblem& problem, bool extended, double rho, Index k)
      : problem_(&problem), extended_(extended), rho_(rho), k_(k),
        start_(std::chrono::steady_clock::now()) {}

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  // phi_d is Phi*(u - v) for the current iterate; reused for the objective
  // forms so tracing never adds a matrix product.
  void record(int iter, bool marker, double objective, double alpha,
              double beta, double delta_norm, const Vec& x, const Vec& phi_d) {
    IterRecord rec;
    rec.iter = iter;
    rec.outer_marker = marker;
    rec.objective = objective;
    rec.alpha = alpha;
    rec.beta = beta;
    rec.delta_norm = delta_norm;
    rec.elapsed_seconds = elapsed();
    rec.objective_dc = kNaN;
    rec.objective_l1 = kNaN;
    rec.error_vs_truth = kNaN;
    if (extended_) {
      const double residual = 0.5 * (problem_->y - phi_d).squaredNorm();
      rec.objective_l1 = residual + rho_ * x.lpNorm<1>();
      rec.objective_dc = residual + rho_ * dc_gap(x, k_);
      if (problem_->x_true.size() == x.size()) {
        const double denom = problem_->x_true.squaredNorm();
        if (denom > 0.0)
          rec.error_vs_truth = (x - problem_->x_true).squaredNorm() / denom;
      }
    }
    trace.push_back(rec);
  }

  void check_finite(double objective, const Vec& z) {
    if (!std::isfinite(objective) || !z.allFinite())
      throw numerical_failure("solver: non-finite iterate encountered",
                              trace);
  }

  std::vector<IterRecord> trace;

private:
  const SparseProblem* problem_;
  bool extended_;
  double rho_;
  Index k_;
  std::chrono::steady_clock::time_point start_;
};

Vec initial_z(const SplitOperator& op, const SolverConfig& config) {
  if (config.init_z.size() > 0) {
    if (config.init_z.size() != 2 * op.n())
      throw std::invalid_argument("solver: init_z must have length 2n");
    if ((config.init_z.array() < 0.0).any())
      throw std::invalid_argument("solver: init_z must be nonnegative");
    return config.init_z;
  }
  if (config.init == InitKind::backprojection) return split(op.phi_t_y());
  return Vec::Zero(2 * op.n());
}

// q = [Phi^T y; -Phi^T y]; the constant linear term of the BCQP.
Vec stacked_phi_t_y(const SplitOperator& op) {
  Vec q(2 * op.n());
  q.head(op.n()) = op.phi_t_y();
  q.tail(op.n()) = -op.phi_t_y();
  return q;
}

// Monotone BB gradient projection for min 1/2 z^T B z + c^T z, z >= 0.
// Shared by the DlDC inner loop and the l1 baseline. Bz0/phi_d0 must match
// z0 (warm starts keep them across outer iterations).
struct QuadLoopResult {
  Vec z;
  Vec Bz;
  Vec phi_d;
  int iters = 0;
  bool hit_tol = false;
};

QuadLoopResult gpsr_quadratic(
    const SplitOperator& op, const Vec& c, Vec z, Vec Bz, Vec phi_d,
    const SolverConfig& config, double tol, bool tol_relative, int max_iters,
    Tracer& tracer,
    const std::function<double(const Vec&, const Vec&)>& objective_fn,
    const std::function<void(int, double, double, double, double, const Vec&,
                             const Vec&)>& on_iter) {
  const double lip = op.lipschitz();
  const double fallback_alpha =
      lip > 0.0 ? 1.0 / lip : clamp_step(config.alpha0, config.alpha_min,
                                         config.alpha_max);
  double alpha = clamp_step(config.alpha0, config.alpha_min, config.alpha_max);

  Vec g = Bz + c;
  QuadLoopResult out;
  int k = 0;
  for (k = 1; k <= max_iters; ++k) {
    if (k % 64 == 0) Bz = op.apply_B(z, &phi_d), g = Bz + c;

    Vec z_half = project_nonneg(z - alpha * g);
    Vec delta = z_half - z;
    double delta_norm = delta.norm();
    if (delta_norm == 0.0) {
      const double obj = objective_fn(z, phi_d);
      on_iter(k, obj, alpha, 0.0, 0.0, z, phi_d);
      out.hit_tol = true;
      break;
    }

    Vec phi_delta;
    Vec B_delta = op.apply_B(delta, &phi_delta);
    double dBd = delta.dot(B_delta);
    double dg = delta.dot(g);
    double beta = dBd > 0.0 ? -dg / dBd : 1.0;
    if (beta <= 0.0) {
      // Roundoff produced a non-descent direction; retake the step at 1/l
      // where the majorization makes the full step safe.
      alpha = fallback_alpha;
      z_half = project_nonneg(z - alpha * g);
      delta = z_half - z;
      delta_norm = delta.norm();
      if (delta_norm == 0.0) {
        const double obj = objective_fn(z, phi_d);
        on_iter(k, obj, alpha, 0.0, 0.0, z, phi_d);
        out.hit_tol = true;
        break;
      }
      B_delta = op.apply_B(delta, &phi_delta);
      dBd = delta.dot(B_delta);
      beta = 1.0;
    }
    beta = std::min(beta, 1.0);

    if (beta == 1.0)
      z = std::move(z_half);
    else
      z += beta * delta;
    Bz += beta * B_delta;
    phi_d += beta * phi_delta;
    g = Bz + c;

    const double step_norm = beta * delta_norm;
    const double obj = objective_fn(z, phi_d);
    on_iter(k, obj, alpha, beta, step_norm, z, phi_d);
    tracer.check_finite(obj, z);

    const double tol_scale = tol_relative ? std::max(1.0, z.norm()) : 1.0;
    if (step_norm <= tol * tol_scale) {
      out.hit_tol = true;
      break;
    }

    // BB1 step for the quadratic: s^T s / s^T B s reduces to
    // delta^T delta / delta^T B delta.
    double alpha_next;
    if (dBd > 0.0) {
      alpha_next = clamp_step(delta.squaredNorm() / dBd, config.alpha_min,
                              config.alpha_max);
      if (alpha_next >= config.alpha_max) alpha_next = fallback_alpha;
    } else {
      alpha_next = fallback_alpha;
    }
    alpha = alpha_next;
  }
  out.iters = std::min(k, max_iters);
  out.z = std::move(z);
  out.Bz = std::move(Bz);
  out.phi_d = std::move(phi_d);
  return out;
}

} // namespace

std::string to_string(Termination t) {
  return t == Termination::tolerance ? "tolerance" : "max_iters";
}

SplitOperator::SplitOperator(const Mat& phi, const Vec& y, double lipschitz)
    : phi_(&phi), y_(&y), phi_t_y_(phi.transpose() * y),
      lipschitz_(lipschitz > 0.0 ? lipschitz : lipschitz_constant(phi)) {
  if (phi.rows() != y.size())
    throw std::invalid_argument("SplitOperator: dimension mismatch");
}

Vec SplitOperator::apply_B(const Vec& z, Vec* phi_d) const {
  const Index n = phi_->cols();
  if (z.size() != 2 * n)
    throw std::invalid_argument("apply_B: z must have length 2n");
  const Vec d = z.head(n) - z.tail(n);
  Vec pd = (*phi_) * d;
  Vec t = phi_->transpose() * pd;
  if (phi_d) *phi_d = std::move(pd);
  Vec out(2 * n);
  out.head(n) = t;
  out.tail(n) = -t;
  return out;
}

Vec split(const Vec& x) {
  Vec z(2 * x.size());
  z.head(x.size()) = x.cwiseMax(0.0);
  z.tail(x.size()) = (-x).cwiseMax(0.0);
  return z;
}

Vec recombine(const Vec& z) {
  if (z.size() % 2 != 0)
    throw std::invalid_argument("recombine: z must have even length");
  const Index n = z.size() / 2;
  return z.head(n) - z.tail(n);
}

Vec project_nonneg(const Vec& v) { return v.cwiseMax(0.0); }

double soft_threshold(double a, double tau) {
  const double m = std::abs(a) - tau;
  if (m <= 0.0) return 0.0;
  return a > 0.0 ? m : -m;
}

SolverResult dldc_gpsr(const SparseProblem& problem,
                       const SolverConfig& config) {
  validate_problem(problem);
  validate_config(config);
  const auto [rho, k_budget] = effective_params(problem, config, true);

  SplitOperator op(problem.phi, problem.y, problem.lipschitz);
  const Index n = op.n();
  const Vec q = stacked_phi_t_y(op);
  Tracer tracer(problem, config.record_error_trace, rho, k_budget);

  auto dc_objective = [&](const Vec& z, const Vec& phi_d) {
    return 0.5 * (problem.y - phi_d).squaredNorm() +
           rho * (z.sum() - top_k1_norm(z, k_budget));
  };

  Vec z = initial_z(op, config);
  Vec phi_d;
  Vec Bz = op.apply_B(z, &phi_d);

  int global_iter = 0;
  tracer.record(global_iter, true, dc_objective(z, phi_d), config.alpha0, 0.0,
                0.0, recombine(z), phi_d);

  SolverResult result;
  result.termination = Termination::max_iters;
  for (int t = 1; t <= config.max_outer; ++t) {
    const Vec w_z = indicator_topk_nonneg(z, k_budget);
    const Vec c = -q + rho * (Vec::Ones(2 * n) - w_z);

    auto on_iter = [&](int, double obj, double alpha, double beta,
                       double delta_norm, const Vec& zk, const Vec& pd) {
      ++global_iter;
      tracer.record(global_iter, false, obj, alpha, beta, delta_norm,
                    recombine(zk), pd);
    };

    const Vec z_prev = z;
    QuadLoopResult inner = gpsr_quadratic(
        op, c, std::move(z), std::move(Bz), std::move(phi_d), config,
        config.tol_inner, /*tol_relative=*/true, config.max_inner, tracer,
        dc_objective, on_iter);
    z = std::move(inner.z);
    Bz = std::move(inner.Bz);
    phi_d = std::move(inner.phi_d);
    result.inner_iters_total += inner.iters;
    result.outer_iters = t;

    const double outer_delta = (z - z_prev).norm();
    tracer.record(global_iter, true, dc_objective(z, phi_d), 0.0, 0.0,
                  outer_delta, recombine(z), phi_d);
    tracer.check_finite(outer_delta, z);
    if (outer_delta <= config.tol_outer) {
      result.termination = Termination::tolerance;
      break;
    }
  }

  result.z_final = z;
  result.x_hat = recombine(z);
  result.trace = std::move(tracer.trace);
  return result;
}

namespace detail {

Vec grad_single_loop(const SplitOperator& op, const Vec& z, double rho,
                     Index k) {
  // Mirrors the single-loop engine expression exactly so a composed step is
  // bit-identical to an engine iterate.
  const Vec q = stacked_phi_t_y(op);
  const Vec c0 = -q + rho * Vec::Ones(2 * op.n());
  const Vec Bz = op.apply_B(z);
  return Bz + c0 - rho * indicator_topk_nonneg(z, k);
}

Vec gp_step(const Vec& z, double alpha, const Vec& grad) {
  return project_nonneg(z - alpha * grad);
}

} // namespace detail

SolverResult run_single_loop(const SparseProblem& problem,
                             const SolverConfig& config, StepMode mode) {
  validate_problem(problem);
  validate_config(config);
  const auto [rho, k_budget] = effective_params(problem, config, true);

  SplitOperator op(problem.phi, problem.y, problem.lipschitz);
  if (!(op.lipschitz() > 0.0))
    throw std::invalid_argument("single-loop solver: lipschitz must be > 0");
  const Index n = op.n();
  const double inv_l = 1.0 / op.lipschitz();
  const Vec q = stacked_phi_t_y(op);
  const Vec c0 = -q + rho * Vec::Ones(2 * n); // gradient = Bz + c0 - rho*1_K

  Tracer tracer(problem, config.record_error_trace, rho, k_budget);
  auto dc_objective = [&](const Vec& z, const Vec& phi_d) {
    return 0.5 * (problem.y - phi_d).squaredNorm() +
           rho * (z.sum() - top_k1_norm(z, k_budget));
  };

  Vec z = initial_z(op, config);
  Vec phi_d;
  Vec Bz = op.apply_B(z, &phi_d);
  Vec g = Bz + c0 - rho * indicator_topk_nonneg(z, k_budget);

  double alpha = mode == StepMode::fixed
                     ? inv_l
                     : clamp_step(config.alpha0, config.alpha_min,
                                  config.alpha_max);

  SolverResult result;
  result.termination = Termination::max_iters;
  tracer.record(0, true, dc_objective(z, phi_d), alpha, 0.0, 0.0,
                recombine(z), phi_d);

  for (int t = 1; t <= config.max_outer; ++t) {
    if (t % 64 == 0) {
      Bz = op.apply_B(z, &phi_d);
      g = Bz + c0 - rho * indicator_topk_nonneg(z, k_budget);
    }

    Vec z_half = detail::gp_step(z, alpha, g);
    Vec delta = z_half - z;
    const double delta_norm = delta.norm();
    if (delta_norm == 0.0) {
      tracer.record(t, true, dc_objective(z, phi_d), alpha, 0.0, 0.0,
                    recombine(z), phi_d);
      result.outer_iters = t;
      result.inner_iters_total = t;
      result.termination = Termination::tolerance;
      break;
    }

    Vec phi_delta;
    Vec B_delta = op.apply_B(delta, &phi_delta);

    double beta = 1.0;
    if (mode == StepMode::monotone_bb) {
      const double dBd = delta.dot(B_delta);
      const double dg = delta.dot(g);
      beta = dBd > 0.0 ? -dg / dBd : 1.0;
      if (beta <= 0.0) {
        alpha = inv_l;
        z_half = detail::gp_step(z, alpha, g);
        delta = z_half - z;
        if (delta.norm() == 0.0) {
          tracer.record(t, true, dc_objective(z, phi_d), alpha, 0.0, 0.0,
                        recombine(z), phi_d);
          result.outer_iters = t;
          result.inner_iters_total = t;
          result.termination = Termination::tolerance;
          break;
        }
        B_delta = op.apply_B(delta, &phi_delta);
        beta = 1.0;
      }
      beta = std::min(beta, 1.0);
    }

    if (beta == 1.0)
      z = std::move(z_half);
    else
      z += beta * delta;
    Bz += beta * B_delta;
    phi_d += beta * phi_delta;

    const Vec g_prev = std::move(g);
    g = Bz + c0 - rho * indicator_topk_nonneg(z, k_budget);

    const double step_norm = beta * delta_norm;
    const double obj = dc_objective(z, phi_d);
    tracer.record(t, true, obj, alpha, beta, step_norm, recombine(z), phi_d);
    tracer.check_finite(obj, z);

    result.outer_iters = t;
    result.inner_iters_total = t;
    if (step_norm <= config.tol_outer) {
      result.termination = Termination::tolerance;
      break;
    }

    if (mode == StepMode::monotone_bb) {
      // BB1 with each iterate's own DC linearization inside the gradients.
      const Vec s = beta * delta;
      const double denom = s.dot(g - g_prev);
      if (denom > 0.0) {
        alpha = clamp_step(s.squaredNorm() / denom, config.alpha_min,
                           config.alpha_max);
        if (alpha >= config.alpha_max) alpha = inv_l;
      } else {
        alpha = inv_l;
      }
    }
  }

  result.z_final = z;
  result.x_hat = recombine(z);
  result.trace = std::move(tracer.trace);
  return result;
}

SolverResult sldc_basic(const SparseProblem& problem,
                        const SolverConfig& config) {
  return run_single_loop(problem, config, StepMode::fixed);
}

SolverResult sldc_bb(const SparseProblem& problem, const SolverConfig& config) {
  return run_single_loop(problem, config, StepMode::monotone_bb);
}

SolverResult l1_gpsr(const SparseProblem& problem, const SolverConfig& config) {
  validate_problem(problem);
  validate_config(config);
  const auto [rho, k_unused] = effective_params(problem, config, true);
  (void)k_unused;

  SplitOperator op(problem.phi, problem.y, problem.lipschitz);
  const Index n = op.n();
  const Vec q = stacked_phi_t_y(op);
  const Vec c = -q + rho * Vec::Ones(2 * n);

  Tracer tracer(problem, config.record_error_trace, rho, problem.k_budget);
  auto l1_objective = [&](const Vec& z, const Vec& phi_d) {
    return 0.5 * (problem.y - phi_d).squaredNorm() + rho * z.sum();
  };

  Vec z = initial_z(op, config);
  Vec phi_d;
  Vec Bz = op.apply_B(z, &phi_d);
  tracer.record(0, true, l1_objective(z, phi_d), config.alpha0, 0.0, 0.0,
                recombine(z), phi_d);

  int iters = 0;
  auto on_iter = [&](int kk, double obj, double alpha, double beta,
                     double delta_norm, const Vec& zk, const Vec& pd) {
    iters = kk;
    tracer.record(kk, true, obj, alpha, beta, delta_norm, recombine(zk), pd);
  };

  QuadLoopResult loop = gpsr_quadratic(
      op, c, std::move(z), std::move(Bz), std::move(phi_d), config,
      config.tol_outer, /*tol_relative=*/false, config.max_outer, tracer,
      l1_objective, on_iter);

  SolverResult result;
  result.z_final = std::move(loop.z);
  result.x_hat = recombine(result.z_final);
  result.outer_iters = loop.iters;
  result.inner_iters_total = loop.iters;
  result.termination =
      loop.hit_tol ? Termination::tolerance : Termination::max_iters;
  result.trace = std::move(tracer.trace);
  return result;
}

SolverResult ista(const SparseProblem& problem, const SolverConfig& config) {
  validate_problem(problem);
  validate_config(config);
  const auto [rho, k_unused] = effective_params(problem, config, true);
  (void)k_unused;

  SplitOperator op(problem.phi, problem.y, problem.lipschitz);
  if (!(op.lipschitz() > 0.0))
    throw std::invalid_argument("ista: lipschitz must be > 0");
  const double inv_l = 1.0 / op.lipschitz();
  const double tau = rho * inv_l;

  Tracer tracer(problem, config.record_error_trace, rho, problem.k_budget);

  Vec x = config.init == InitKind::backprojection
              ? Vec(op.phi_t_y())
              : Vec(Vec::Zero(op.n()));
  Vec phi_x = problem.phi * x;
  auto objective = [&](const Vec& xi, const Vec& pxi) {
    return 0.5 * (problem.y - pxi).squaredNorm() + rho * xi.lpNorm<1>();
  };
  tracer.record(0, true, objective(x, phi_x), inv_l, 0.0, 0.0, x, phi_x);

  SolverResult result;
  result.termination = Termination::max_iters;
  for (int t = 1; t <= config.max_outer; ++t) {
    const Vec grad = problem.phi.transpose() * (phi_x - problem.y);
    Vec x_next = x - inv_l * grad;
    for (Index i = 0; i < x_next.size(); ++i)
      x_next[i] = soft_threshold(x_next[i], tau);

    const double step_norm = (x_next - x).norm();
    x = std::move(x_next);
    phi_x = problem.phi * x;

    const double obj = objective(x, phi_x);
    tracer.record(t, true, obj, inv_l, 1.0, step_norm, x, phi_x);
    tracer.check_finite(obj, x);
    result.outer_iters = t;
    result.inner_iters_total = t;
    if (step_norm <= config.tol_outer) {
      result.termination = Termination::tolerance;
      break;
    }
  }

  result.x_hat = x;
  result.z_final = split(x);
  result.trace = std::move(tracer.trace);
  return result;
}

SolverResult omp(const SparseProblem& problem, Index k_budget,
                 bool record_error_trace) {
  validate_problem(problem);
  if (k_budget < 0 || k_budget > problem.phi.cols())
    throw std::invalid_argument("omp: k_budget out of range");

  Tracer tracer(problem, record_error_trace, problem.rho, k_budget);
  const Mat& phi = problem.phi;
  const Index n = phi.cols();

  SolverResult result;
  result.x_hat = Vec::Zero(n);
  result.termination = Termination::max_iters;

  Vec residual = problem.y;
  std::vector<Index> support;
  std::vector<char> in_support(static_cast<std::size_t>(n), 0);
  Vec coeffs;

  constexpr double kResidualTol = 1e-12;
  tracer.record(0, true, 0.5 * residual.squaredNorm(), 0.0, 0.0, 0.0,
                result.x_hat, Vec::Zero(phi.rows()));

  for (Index step = 1; step <= k_budget; ++step) {
    if (residual.norm() < kResidualTol) {
      result.termination = Termination::tolerance;
      break;
    }
    const Vec corr = phi.transpose() * residual;
    Index best = -1;
    double best_mag = -1.0;
    for (Index i = 0; i < n; ++i) {
      if (in_support[static_cast<std::size_t>(i)]) continue;
      const double mag = std::abs(corr[i]);
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best < 0) break;
    support.push_back(best);
    in_support[static_cast<std::size_t>(best)] = 1;

    Mat sub(phi.rows(), static_cast<Index>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j)
      sub.col(static_cast<Index>(j)) = phi.col(support[j]);

    Eigen::CompleteOrthogonalDecomposition<Mat> cod(sub);
    if (cod.rank() < static_cast<Index>(support.size()))
      result.rank_deficient_ls = true;
    coeffs = cod.solve(problem.y);
    residual = problem.y - sub * coeffs;

    result.outer_iters = static_cast<int>(step);
    result.inner_iters_total = static_cast<int>(step);
    Vec x_step = Vec::Zero(n);
    for (std::size_t j = 0; j < support.size(); ++j)
      x_step[support[j]] = coeffs[static_cast<Index>(j)];
    tracer.record(static_cast<int>(step), true, 0.5 * residual.squaredNorm(),
                  0.0, 0.0, residual.norm(), x_step, problem.y - residual);
  }

  for (std::size_t j = 0; j < support.size(); ++j)
    result.x_hat[support[j]] = coeffs[static_cast<Index>(j)];
  if (residual.norm() < kResidualTol)
    result.termination = Termination::tolerance;
  result.z_final = split(result.x_hat);
  result.trace = std::move(tracer.trace);
  return result;
}

CMat ls_estimate(const CMat& s_matrix, const CMat& received) {
  if (s_matrix.rows() < s_matrix.cols())
    throw std::invalid_argument(
        "ls_estimate: needs at least as many pilots as antennas");
  if (received.rows() != s_matrix.rows())
    throw std::invalid_argument("ls_estimate: dimension mismatch");
  Eigen::CompleteOrthogonalDecomposition<CMat> cod(s_matrix);
  if (cod.rank() < s_matrix.cols())
    throw std::invalid_argument("ls_estimate: rank-deficient pilot matrix");
  return cod.solve(received);
}

} // namespace dcgpsr
