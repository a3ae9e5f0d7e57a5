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

#include <vector>

#include "dcgpsr/types.hpp"

namespace dcgpsr {

/// Indices of the k largest-magnitude entries of x, ordered by magnitude
/// descending and then by index ascending. The selection is deterministic
/// under ties, which keeps subgradients and indicators reproducible.
std::vector<Index> topk_indices_abs(const Vec& x, Index k);

/// Sum of the k largest |x_i|. k = 0 gives 0, k = len(x) gives the l1 norm.
double top_k1_norm(const Vec& x, Index k);

/// ||x||_1 - ||x||_{K,1}. Zero exactly when x has at most k nonzeros.
double dc_gap(const Vec& x, Index k);

/// A subgradient of the top-(K,1) norm at x: sign(x_i) on the k
/// largest-magnitude entries, zero elsewhere. sign(0) = 0, so entries
/// selected purely by the tie rule contribute nothing.
/// Satisfies x^T w = ||x||_{K,1}.
Vec subgradient_topk_signed(const Vec& x, Index k);

/// Subgradient of the top-(K,1) norm at a nonnegative z in indicator form:
/// exactly min(k, len) ones marking the k largest entries (lowest index wins
/// ties). Throws if z has a negative entry.
Vec indicator_topk_nonneg(const Vec& z, Index k);

/// Penalty lower threshold: with q bounding the norm of any minimizer, a
/// penalty at or above rho_star makes the penalized problem share its
/// optimum with the sparsity-constrained one.
struct PenaltyCertificate {
  double rho_star = 0.0;
  double q_bound = 0.0;
  Vec per_index_terms; // the per-coordinate candidates; rho_star is their max
};

/// rho_star = max_i { q*(||Phi^T Phi e_i||_2 + |(Phi^T Phi)_ii|/2) + |(Phi^T y)_i| }.
PenaltyCertificate penalty_threshold(const Mat& phi, const Vec& y, double q);

/// Largest eigenvalue of Phi^T Phi via power iteration on the implicit
/// operator v -> Phi^T (Phi v); the Gram matrix is never formed.
/// Returns 0 for the zero matrix.
double lipschitz_constant(const Mat& phi);

/// Heuristic bound q on minimizer norms: 2*||y||_2 / sigma_min(Phi), using
/// the smallest singular value of Phi. Only meaningful when that value is
/// well separated from zero; never used inside solver logic.
double default_q_bound(const Mat& phi, const Vec& y);

/// 0.5*||y - Phi x||_2^2 + rho*(||x||_1 - ||x||_{K,1}).
double objective_f(const Vec& x, const Mat& phi, const Vec& y, double rho,
                   Index k);

/// 0.5*||y - Phi x||_2^2 + rho*||x||_1.
double objective_l1(const Vec& x, const Mat& phi, const Vec& y, double rho);

} // namespace dcgpsr
