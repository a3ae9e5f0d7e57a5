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

#include "dcgpsr/topk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace dcgpsr {

namespace {

void check_k(Index k, Index n) {
  if (k < 0 || k > n)
    throw std::invalid_argument("top-k: k out of range [0, len(x)]");
}

} // namespace

std::vector<Index> topk_indices_abs(const Vec& x, Index k) {
  check_k(k, x.size());
  std::vector<Index> idx(static_cast<std::size_t>(x.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  const auto kth = idx.begin() + k;
  std::partial_sort(idx.begin(), kth, idx.end(), [&](Index a, Index b) {
    const double ma = std::abs(x[a]), mb = std::abs(x[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

double top_k1_norm(const Vec& x, Index k) {
  check_k(k, x.size());
  double sum = 0.0;
  for (Index i : topk_indices_abs(x, k)) sum += std::abs(x[i]);
  return sum;
}

double dc_gap(const Vec& x, Index k) {
  // Computed as the tail sum over the non-top-k entries rather than as a
  // difference of two norms: exactly zero on k-sparse inputs and free of
  // cancellation.
  check_k(k, x.size());
  std::vector<char> in_top(static_cast<std::size_t>(x.size()), 0);
  for (Index i : topk_indices_abs(x, k))
    in_top[static_cast<std::size_t>(i)] = 1;
  double tail = 0.0;
  for (Index i = 0; i < x.size(); ++i)
    if (!in_top[static_cast<std::size_t>(i)]) tail += std::abs(x[i]);
  return tail;
}

Vec subgradient_topk_signed(const Vec& x, Index k) {
  check_k(k, x.size());
  Vec w = Vec::Zero(x.size());
  for (Index i : topk_indices_abs(x, k)) {
    if (x[i] > 0.0)
      w[i] = 1.0;
    else if (x[i] < 0.0)
      w[i] = -1.0;
  }
  return w;
}

Vec indicator_topk_nonneg(const Vec& z, Index k) {
  check_k(k, z.size());
  if ((z.array() < 0.0).any())
    throw std::invalid_argument("indicator_topk_nonneg: z must be nonnegative");
  Vec ind = Vec::Zero(z.size());
  for (Index i : topk_indices_abs(z, k)) ind[i] = 1.0;
  return ind;
}

PenaltyCertificate penalty_threshold(const Mat& phi, const Vec& y, double q) {
  if (!(q > 0.0))
    throw std::invalid_argument("penalty_threshold: q must be positive");
  if (phi.rows() != y.size())
    throw std::invalid_argument("penalty_threshold: dimension mismatch");

  const Vec corr = (phi.transpose() * y).cwiseAbs();
  PenaltyCertificate cert;
  cert.q_bound = q;
  cert.per_index_terms.resize(phi.cols());
  for (Index i = 0; i < phi.cols(); ++i) {
    const Vec col = phi.col(i);
    const double gram_col_norm = (phi.transpose() * col).norm();
    const double gram_diag = col.squaredNorm();
    cert.per_index_terms[i] = q * (gram_col_norm + gram_diag / 2.0) + corr[i];
  }
  cert.rho_star = cert.per_index_terms.maxCoeff();
  return cert;
}

double lipschitz_constant(const Mat& phi) {
  const Index n = phi.cols();
  if (n == 0 || phi.rows() == 0) return 0.0;

  // Deterministic dense start vector from a splitmix64 stream.
  Vec v(n);
  std::uint64_t state = 0x6a09e667f3bcc909ULL;
  for (Index i = 0; i < n; ++i) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    v[i] = 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
  }
  v.normalize();

  double lambda = 0.0;
  constexpr int kMaxIters = 5000;
  constexpr double kTol = 1e-10;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    Vec w = phi.transpose() * (phi * v);
    const double norm = w.norm();
    if (!(norm > 0.0)) return 0.0;
    const double rayleigh = v.dot(w); // v is unit norm
    w /= norm;
    if (iter > 0 && std::abs(rayleigh - lambda) <= kTol * std::max(1.0, rayleigh)) {
      return rayleigh;
    }
    lambda = rayleigh;
    v = w;
  }
  return lambda;
}

double default_q_bound(const Mat& phi, const Vec& y) {
  Eigen::BDCSVD<Mat> svd(phi);
  const double sigma_min = svd.singularValues().tail(1)(0);
  if (!(sigma_min > 1e-12 * svd.singularValues()(0)))
    throw std::runtime_error("default_q_bound: smallest singular value is "
                             "numerically zero; supply q explicitly");
  return 2.0 * y.norm() / sigma_min;
}

double objective_f(const Vec& x, const Mat& phi, const Vec& y, double rho,
                   Index k) {
  if (phi.cols() != x.size() || phi.rows() != y.size())
    throw std::invalid_argument("objective_f: dimension mismatch");
  return 0.5 * (y - phi * x).squaredNorm() + rho * dc_gap(x, k);
}

double objective_l1(const Vec& x, const Mat& phi, const Vec& y, double rho) {
  if (phi.cols() != x.size() || phi.rows() != y.size())
    throw std::invalid_argument("objective_l1: dimension mismatch");
  return 0.5 * (y - phi * x).squaredNorm() + rho * x.lpNorm<1>();
}

} // namespace dcgpsr
