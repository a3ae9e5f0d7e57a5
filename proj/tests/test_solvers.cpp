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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "dcgpsr/channel.hpp"
#include "dcgpsr/measurement.hpp"
#include "dcgpsr/solvers.hpp"
#include "dcgpsr/topk.hpp"
#include "test_util.hpp"

using namespace dcgpsr;

namespace {

Index support_size(const Vec& x, double threshold) {
  Index nnz = 0;
  for (Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > threshold) ++nnz;
  return nnz;
}

double planted_error(const SolverResult& result, const Vec& x_true) {
  return (result.x_hat - x_true).squaredNorm() / x_true.squaredNorm();
}

} // namespace

TEST_CASE("split and recombine are inverse on the sign decomposition") {
  Vec x(3);
  x << 1, -2, 0;
  const Vec z = split(x);
  Vec expected(6);
  expected << 1, 0, 0, 0, 2, 0;
  CHECK(z == expected);
  CHECK(recombine(z) == x);

  Rng rng(50);
  for (int c = 0; c < 1000; ++c) {
    const Vec v = test::random_vec(rng, 1 + rng.uniform_int(0, 20));
    CHECK(recombine(split(v)) == v);
    const Vec zz = split(v);
    const Index n = v.size();
    for (Index i = 0; i < n; ++i) CHECK(std::min(zz[i], zz[i + n]) == 0.0);
  }
  CHECK(split(Vec::Zero(4)).norm() == 0.0);
}

TEST_CASE("projection onto the nonnegative orthant") {
  Vec v(3);
  v << 1, -2, 0;
  Vec p = project_nonneg(v);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == 0.0);
  CHECK(project_nonneg(p) == p);

  Rng rng(51);
  for (int c = 0; c < 1000; ++c) {
    const Vec a = test::random_vec(rng, 8);
    const Vec b = test::random_vec(rng, 8);
    CHECK((project_nonneg(a) - project_nonneg(b)).norm() <=
          (a - b).norm() + 1e-15);
  }
}

TEST_CASE("implicit operator matches the dense split matrix") {
  Rng rng(52);
  for (Index n : {Index{4}, Index{16}, Index{64}}) {
    const Mat phi = test::random_mat(rng, n / 2 + 3, n);
    const Vec y = test::random_vec(rng, n / 2 + 3);
    const SplitOperator op(phi, y);
    const Mat dense = test::dense_split_matrix(phi);
    for (int c = 0; c < 5; ++c) {
      const Vec z = test::random_vec(rng, 2 * n).cwiseAbs();
      const Vec via_op = op.apply_B(z);
      const Vec via_dense = dense * z;
      CHECK((via_op - via_dense).lpNorm<Eigen::Infinity>() <=
            1e-12 * (1.0 + via_dense.lpNorm<Eigen::Infinity>()));
    }
    // z = [u; u] lies in the null space and maps to exactly zero.
    const Vec u = test::random_vec(rng, n).cwiseAbs();
    Vec z(2 * n);
    z << u, u;
    CHECK(op.apply_B(z).norm() == 0.0);
  }
}

TEST_CASE("single-loop gradient matches central finite differences") {
  Rng rng(53);
  const double h = 1e-6;
  for (int inst = 0; inst < 50; ++inst) {
    const Index n = 6 + rng.uniform_int(0, 4);
    const Index m = n + 2;
    const Mat phi = test::random_mat(rng, m, n);
    const Vec y = test::random_vec(rng, m);
    const double rho = rng.uniform(0.1, 2.0);
    const Index k = rng.uniform_int(1, n - 1);
    const SplitOperator op(phi, y);

    // Strictly positive entries with well-separated values keep every
    // component in the interior and the top-k selection stable across the
    // finite-difference stencil.
    Vec z(2 * n);
    for (Index i = 0; i < 2 * n; ++i)
      z[i] = 0.5 + 0.01 * static_cast<double>(i) + rng.uniform(0.0, 0.004);

    const Vec grad = detail::grad_single_loop(op, z, rho, k);
    const Mat dense = test::dense_split_matrix(phi);
    Vec qv(2 * n);
    qv.head(n) = phi.transpose() * y;
    qv.tail(n) = -(phi.transpose() * y);
    auto objective = [&](const Vec& zz) {
      return 0.5 * zz.dot(dense * zz) - qv.dot(zz) -
             rho * top_k1_norm(zz, k) + rho * zz.sum();
    };
    for (Index i = 0; i < 2 * n; ++i) {
      Vec zp = z, zm = z;
      zp[i] += h;
      zm[i] -= h;
      const double fd = (objective(zp) - objective(zm)) / (2.0 * h);
      CHECK(std::abs(fd - grad[i]) <=
            1e-6 * std::max(1.0, std::abs(grad[i])));
    }
  }
}

TEST_CASE("double-loop solver recovers a planted sparse vector") {
  Rng rng(54);
  const test::Planted p = test::make_planted(rng, 12, 16, 2);
  const double q = 2.0 * p.x_true.norm();
  const double rho = penalty_threshold(p.phi, p.y, q).rho_star;
  SparseProblem prob = test::planted_problem(p, 2, rho);
  SolverConfig config;
  config.tol_outer = 1e-12;
  config.init = InitKind::backprojection;
  const SolverResult result = dldc_gpsr(prob, config);
  CHECK(planted_error(result, p.x_true) <= 1e-10);
  CHECK(result.termination == Termination::tolerance);
  // x_hat must reproduce u - v of the final iterate.
  CHECK(result.x_hat == recombine(result.z_final));
}

TEST_CASE("double-loop solver returns zero for zero measurements") {
  Rng rng(55);
  SparseProblem prob;
  prob.phi = test::random_mat(rng, 8, 12);
  prob.y = Vec::Zero(8);
  prob.k_budget = 3;
  prob.rho = 0.5;
  const SolverResult result = dldc_gpsr(prob, SolverConfig{});
  CHECK(result.x_hat.norm() == 0.0);
}

TEST_CASE("solvers reject dimension mismatches and bad parameters") {
  SparseProblem prob;
  prob.phi = Mat::Identity(4, 4);
  prob.y = Vec::Zero(3); // mismatch
  prob.rho = 1.0;
  CHECK_THROWS_AS(dldc_gpsr(prob, SolverConfig{}), std::invalid_argument);

  prob.y = Vec::Zero(4);
  prob.rho = 0.0; // rho must be positive
  CHECK_THROWS_AS(sldc_bb(prob, SolverConfig{}), std::invalid_argument);

  prob.rho = 1.0;
  prob.k_budget = 9; // beyond the ambient dimension
  CHECK_THROWS_AS(sldc_bb(prob, SolverConfig{}), std::invalid_argument);
}

TEST_CASE("non-finite measurements raise a numerical failure with a trace") {
  SparseProblem prob;
  prob.phi = Mat::Identity(4, 4);
  prob.y = Vec::Constant(4, std::numeric_limits<double>::quiet_NaN());
  prob.k_budget = 1;
  prob.rho = 1.0;
  prob.lipschitz = 1.0;
  try {
    sldc_bb(prob, SolverConfig{});
    FAIL("expected numerical_failure");
  } catch (const numerical_failure& e) {
    CHECK(!e.trace.empty());
  }
}

TEST_CASE("one basic single-loop iterate equals the two-step pipeline") {
  // Oracle: evaluate update steps (a) gradient of the concave part and
  // (b) scaled projection, composed by hand with a dense operator.
  Rng rng(56);
  for (int c = 0; c < 50; ++c) {
    const Index n = 6, m = 8;
    const Mat phi = test::random_mat(rng, m, n);
    const Vec y = test::random_vec(rng, m);
    const double rho = rng.uniform(0.05, 1.0);
    const Index k = 2;
    const double l = lipschitz_constant(phi);
    const Vec z0 = test::random_vec(rng, 2 * n).cwiseAbs();

    SparseProblem prob;
    prob.phi = phi;
    prob.y = y;
    prob.k_budget = k;
    prob.rho = rho;
    prob.lipschitz = l;
    SolverConfig config;
    config.max_outer = 1;
    config.init_z = z0;
    const SolverResult result = sldc_basic(prob, config);

    const Mat dense = test::dense_split_matrix(phi);
    Vec qv(2 * n);
    qv.head(n) = phi.transpose() * y;
    qv.tail(n) = -(phi.transpose() * y);
    const Vec grad_concave = l * z0 - dense * z0 + qv +
                             rho * indicator_topk_nonneg(z0, k);
    const Vec z1 = project_nonneg(
        (1.0 / l) * (grad_concave - rho * Vec::Ones(2 * n)));
    CHECK((result.z_final - z1).lpNorm<Eigen::Infinity>() <= 1e-14);
  }
}

TEST_CASE("basic single-loop iterate is exactly one projected gradient step") {
  // A fixed-step iterate and gp_step with alpha = 1/l must agree exactly,
  // not merely to a tolerance: the two share one code path.
  Rng rng(57);
  for (int c = 0; c < 100; ++c) {
    const Index n = 5, m = 7;
    const Mat phi = test::random_mat(rng, m, n);
    const Vec y = test::random_vec(rng, m);
    const double l = lipschitz_constant(phi);
    const Vec z0 = test::random_vec(rng, 2 * n).cwiseAbs();

    SparseProblem prob;
    prob.phi = phi;
    prob.y = y;
    prob.k_budget = 2;
    prob.rho = 0.3;
    prob.lipschitz = l;
    SolverConfig config;
    config.max_outer = 1;
    config.init_z = z0;
    const SolverResult via_solver = sldc_basic(prob, config);

    const SplitOperator op(phi, y, l);
    const Vec grad = detail::grad_single_loop(op, z0, 0.3, 2);
    const Vec via_step = detail::gp_step(z0, 1.0 / l, grad);
    CHECK(via_solver.z_final == via_step);
  }
}

TEST_CASE("planted optimum is a fixed point of the basic single loop") {
  Rng rng(58);
  const test::Planted p = test::make_planted(rng, 12, 16, 2);
  SparseProblem prob = test::planted_problem(p, 2, 0.7);
  SolverConfig config;
  config.max_outer = 1;
  config.init_z = split(p.x_true);
  const SolverResult result = sldc_basic(prob, config);
  CHECK((result.z_final - split(p.x_true)).norm() <= 1e-12);
}

TEST_CASE("fixed-mode engine and sldc_basic are the same algorithm") {
  Rng rng(59);
  const test::Planted p = test::make_planted(rng, 10, 14, 2);
  SparseProblem prob = test::planted_problem(p, 2, 0.4);
  SolverConfig config;
  config.max_outer = 50;
  const SolverResult a = sldc_basic(prob, config);
  const SolverResult b = run_single_loop(prob, config, StepMode::fixed);
  CHECK(a.z_final == b.z_final);
  CHECK(a.outer_iters == b.outer_iters);
}

TEST_CASE("single-loop solvers agree with the double loop on planted data") {
  Rng rng(60);
  const test::Planted p = test::make_planted(rng, 12, 16, 2);
  const double rho = 0.5 * (p.phi.transpose() * p.y).lpNorm<Eigen::Infinity>();
  SparseProblem prob = test::planted_problem(p, 2, rho);

  SolverConfig config;
  config.tol_outer = 1e-13;
  config.max_outer = 5000;
  config.init = InitKind::backprojection;
  const SolverResult dl = dldc_gpsr(prob, config);
  const SolverResult bb = sldc_bb(prob, config);
  const SolverResult basic = sldc_basic(prob, config);

  CHECK(planted_error(dl, p.x_true) <= 1e-10);
  CHECK(planted_error(bb, p.x_true) <= 1e-10);
  CHECK((dl.x_hat - bb.x_hat).norm() <= 1e-8);
  CHECK((basic.x_hat - bb.x_hat).norm() <= 1e-6);
  // The BB step accelerates the fixed-step iteration.
  CHECK(bb.outer_iters < basic.outer_iters);
}

TEST_CASE("l1 solver returns zero above the nullity threshold") {
  Rng rng(61);
  const test::Planted p = test::make_planted(rng, 10, 14, 3);
  const double corr_max = (p.phi.transpose() * p.y).lpNorm<Eigen::Infinity>();
  SparseProblem prob = test::planted_problem(p, 3, 1.01 * corr_max);
  const SolverResult result = l1_gpsr(prob, SolverConfig{});
  CHECK(result.x_hat.norm() == 0.0);
  // Subgradient optimality of zero: the residual correlation stays within
  // the penalty weight.
  CHECK((p.phi.transpose() * (p.y - p.phi * result.x_hat))
            .lpNorm<Eigen::Infinity>() <= prob.rho);
}

TEST_CASE("tiny penalties trade sparsity for data fit in the l1 solver") {
  Rng rng(62);
  const test::Planted p = test::make_planted(rng, 12, 16, 2);
  const double corr_max = (p.phi.transpose() * p.y).lpNorm<Eigen::Infinity>();

  SparseProblem prob = test::planted_problem(p, 2, 1e-6 * corr_max);
  SolverConfig config;
  config.max_outer = 5000;
  const SolverResult l1 = l1_gpsr(prob, config);
  CHECK((p.y - p.phi * l1.x_hat).norm() <= 1e-4 * p.y.norm());

  prob.rho = 0.5 * corr_max;
  const SolverResult dc = sldc_bb(prob, config);
  const double scale = p.x_true.cwiseAbs().maxCoeff();
  CHECK(support_size(l1.x_hat, 1e-6 * scale) >
        support_size(dc.x_hat, 1e-6 * scale));
}

TEST_CASE("soft threshold operator") {
  CHECK(soft_threshold(3.0, 1.0) == doctest::Approx(2.0));
  CHECK(soft_threshold(-0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-3.0, 1.0) == doctest::Approx(-2.0));
}

TEST_CASE("ista solves the scalar lasso in closed form") {
  SparseProblem prob;
  prob.phi = Mat::Identity(1, 1);
  prob.y = Vec::Constant(1, 3.0);
  prob.k_budget = 1;
  prob.rho = 1.0;
  const SolverResult result = ista(prob, SolverConfig{});
  CHECK(result.x_hat[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(result.termination == Termination::tolerance);
}

TEST_CASE("ista objective decreases monotonically over many steps") {
  Rng rng(63);
  const test::Planted p = test::make_planted(rng, 10, 8, 3, 0.05);
  SparseProblem prob = test::planted_problem(p, 3, 0.05);
  SolverConfig config;
  config.max_outer = 10000;
  config.tol_outer = 1e-300; // force the full budget
  const SolverResult result = ista(prob, config);
  for (std::size_t i = 1; i < result.trace.size(); ++i)
    CHECK(result.trace[i].objective <=
          result.trace[i - 1].objective + 1e-12);
}

TEST_CASE("omp recovers a one-sparse vector over an orthonormal frame") {
  SparseProblem prob;
  prob.phi = Mat::Identity(6, 6);
  Vec x = Vec::Zero(6);
  x[3] = -2.5;
  prob.y = prob.phi * x;
  prob.x_true = x;
  const SolverResult result = omp(prob, 1);
  CHECK(planted_error(result, x) <= 1e-28);
  CHECK(result.outer_iters == 1);
  CHECK(result.termination == Termination::tolerance);
}

TEST_CASE("omp recovers a planted two-sparse support") {
  Rng rng(64);
  const test::Planted p = test::make_planted(rng, 12, 16, 2);
  SparseProblem prob = test::planted_problem(p, 2, 1.0);
  const SolverResult result = omp(prob, 2);
  CHECK(planted_error(result, p.x_true) <= 1e-20);
  for (Index i = 0; i < 16; ++i) {
    if (p.x_true[i] == 0.0) CHECK(result.x_hat[i] == 0.0);
  }
}

TEST_CASE("omp with a zero budget returns the zero vector") {
  Rng rng(65);
  const test::Planted p = test::make_planted(rng, 8, 10, 2);
  SparseProblem prob = test::planted_problem(p, 2, 1.0);
  const SolverResult result = omp(prob, 0);
  CHECK(result.x_hat.norm() == 0.0);
}

TEST_CASE("ls estimate is exact without noise and errors with short pilots") {
  const ChannelParams params{8, 2, 2, 4};
  const ChannelRealization chan = generate_channel(params, 70);
  const MeasurementSetup setup = make_measurement_matrix(
      MeasurementKind::partial_fourier, 8, 8, 8.0, 71);
  const Observation obs =
      observe(setup, chan, std::numeric_limits<double>::infinity(), 0);
  const CMat estimate = ls_estimate(setup.s_matrix, obs.received);
  const CMat truth = chan.beamspace_sparse.transpose();
  CHECK((estimate - truth).norm() <= 1e-10 * truth.norm());

  const MeasurementSetup short_setup =
      make_measurement_matrix(MeasurementKind::gaussian, 4, 8, 4.0, 72);
  CHECK_THROWS_AS(ls_estimate(short_setup.s_matrix, obs.received.topRows(4)),
                  std::invalid_argument);
}

TEST_CASE("ls estimate error tracks the noise-to-signal ratio") {
  // With a scaled-orthonormal pilot block the per-realization error ratio is
  // exactly 1/SNR, so the Monte-Carlo mean sits at 0.01 for 20 dB.
  const ChannelParams params{8, 1, 2, 4};
  double acc = 0.0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    const ChannelRealization chan = generate_channel(params, 500 + s);
    const MeasurementSetup setup = make_measurement_matrix(
        MeasurementKind::partial_fourier, 8, 8, 8.0, 600 + s);
    const Observation obs = observe(setup, chan, 20.0, 700 + s);
    const CMat estimate = ls_estimate(setup.s_matrix, obs.received);
    const CMat truth = chan.beamspace_sparse.transpose();
    acc += (estimate - truth).squaredNorm() / truth.squaredNorm();
  }
  CHECK(acc / seeds == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("descent traces are monotone") {
  Rng rng(66);
  const test::Planted p = test::make_planted(rng, 24, 32, 4, 0.02);
  const double rho = 0.3 * (p.phi.transpose() * p.y).lpNorm<Eigen::Infinity>();
  SparseProblem prob = test::planted_problem(p, 4, rho);
  SolverConfig config;
  config.max_outer = 300;

  SUBCASE("double-loop outer objectives") {
    const SolverResult result = dldc_gpsr(prob, config);
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& rec : result.trace) {
      if (!rec.outer_marker) continue;
      CHECK(rec.objective <= prev + 1e-12 * (1.0 + std::abs(prev)));
      prev = rec.objective;
    }
  }
  SUBCASE("bb single-loop per-iterate objectives") {
    const SolverResult result = sldc_bb(prob, config);
    for (std::size_t i = 1; i < result.trace.size(); ++i)
      CHECK(result.trace[i].objective <=
            result.trace[i - 1].objective +
                1e-12 * (1.0 + std::abs(result.trace[i - 1].objective)));
  }
  SUBCASE("l1 per-iterate objectives") {
    const SolverResult result = l1_gpsr(prob, config);
    for (std::size_t i = 1; i < result.trace.size(); ++i)
      CHECK(result.trace[i].objective <=
            result.trace[i - 1].objective +
                1e-12 * (1.0 + std::abs(result.trace[i - 1].objective)));
  }
}

TEST_CASE("converged split iterates are complementary") {
  Rng rng(67);
  const test::Planted p = test::make_planted(rng, 16, 20, 3);
  const double rho = 0.4 * (p.phi.transpose() * p.y).lpNorm<Eigen::Infinity>();
  SparseProblem prob = test::planted_problem(p, 3, rho);
  SolverConfig config;
  config.max_outer = 3000;
  for (const SolverResult& result :
       {dldc_gpsr(prob, config), sldc_bb(prob, config),
        l1_gpsr(prob, config)}) {
    const Index n = result.x_hat.size();
    const double scale = result.z_final.lpNorm<Eigen::Infinity>();
    for (Index i = 0; i < n; ++i)
      CHECK(std::min(result.z_final[i], result.z_final[i + n]) <=
            1e-10 * scale);
  }
}

TEST_CASE("dc sparsity certificate holds at planted optima") {
  Rng rng(68);
  const test::Planted p = test::make_planted(rng, 14, 18, 3);
  const double rho = 0.5 * (p.phi.transpose() * p.y).lpNorm<Eigen::Infinity>();
  SparseProblem prob = test::planted_problem(p, 3, rho);
  SolverConfig config;
  config.tol_outer = 1e-13;
  config.init = InitKind::backprojection;
  for (const SolverResult& result :
       {dldc_gpsr(prob, config), sldc_bb(prob, config)}) {
    CHECK(dc_gap(result.x_hat, 3) <= 1e-10 * result.x_hat.lpNorm<1>());
  }
}

TEST_CASE("config overrides take precedence over problem parameters") {
  Rng rng(169);
  const test::Planted p = test::make_planted(rng, 12, 16, 2);
  SparseProblem prob = test::planted_problem(p, 2, 1e9); // absurd defaults
  prob.k_budget = 0;
  SolverConfig config;
  config.rho = 0.5 * (p.phi.transpose() * p.y).lpNorm<Eigen::Infinity>();
  config.k_budget = 2;
  config.init = InitKind::backprojection;
  const SolverResult result = sldc_bb(prob, config);
  CHECK(planted_error(result, p.x_true) <= 1e-10);
}
