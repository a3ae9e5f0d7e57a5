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
#include <string>
#include <string_view>
#include <vector>

#include "dcgpsr/channel.hpp"
#include "dcgpsr/types.hpp"

namespace dcgpsr {

enum class MeasurementKind { gaussian, rademacher, bernoulli01, partial_fourier };

MeasurementKind measurement_kind_from_string(std::string_view name);
std::string to_string(MeasurementKind kind);

/// Measurement matrix S (L x n_tx) plus the pilot matrix it induces.
/// S is scaled so that the pilot meets the power budget exactly:
/// S = sqrt(power_budget) * S' / ||S'||_F, pilot = U_t * S^T.
struct MeasurementSetup {
  MeasurementKind kind = MeasurementKind::gaussian;
  CMat s_matrix;      // L x n_tx
  CMat pilot;         // n_tx x L
  double power_budget = 0.0;
  std::uint64_t seed = 0;
};

MeasurementSetup make_measurement_matrix(MeasurementKind kind, Index pilot_len,
                                         Index n_tx, double power_budget,
                                         std::uint64_t seed);

/// Which beamspace form of the channel an observation is generated from.
enum class ChannelSelect { sparse, full };

struct Observation {
  CMat received;          // L x n_rx
  double realized_snr_db; // equals the target by construction
  double noise_variance;  // implied per-entry complex noise variance
};

/// R = S*H + W with H the (transposed) beamspace channel. The noise draw is
/// rescaled so that ||S*H||_F^2 / ||W||_F^2 hits the target SNR exactly for
/// this realization; target_snr_db = +inf means W = 0.
/// Throws if the noise-free observation has zero energy.
Observation observe(const MeasurementSetup& setup,
                    const ChannelRealization& channel, double target_snr_db,
                    std::uint64_t noise_seed,
                    ChannelSelect select = ChannelSelect::sparse);

/// The solver-facing contract: a real-stacked measurement pair plus the
/// sparsity budget and penalty weight.
struct SparseProblem {
  Mat phi;          // 2L x 2n_tx, [[Re S, -Im S], [Im S, Re S]]
  Vec y;            // 2L
  Index k_budget = 0;
  double rho = 1.0;
  double noise_variance = 0.0;
  Vec x_true;             // ground truth for evaluation; empty when unknown
  double lipschitz = 0.0; // lambda_max(phi^T phi) when precomputed, else 0
};

/// Real stacking of a complex matrix: [[Re, -Im], [Im, Re]].
Mat stack_real(const CMat& s);

/// Splits the multiple-measurement observation into one real-valued
/// single-measurement problem per receive antenna. Ground truth columns of
/// the channel are attached for evaluation.
std::vector<SparseProblem> columnize(const CMat& received, const CMat& s_matrix,
                                     const ChannelRealization& channel,
                                     double noise_variance, Index k_budget,
                                     double rho,
                                     ChannelSelect select = ChannelSelect::sparse);

/// Inverse of the real stacking of a vector: h[i] = x[i] + j*x[i + n].
/// Throws on odd length.
CVec complexify(const Vec& x);

/// [Re h; Im h].
Vec realify(const CVec& h);

} // namespace dcgpsr
