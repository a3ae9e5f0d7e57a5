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

/// One evaluated (algorithm, pilot length, SNR, trial) cell.
struct EvaluationRecord {
  double nmse = 0.0;
  double snr_db = 0.0;
  double snr_eff_db = 0.0;
  Index pilot_len = 0;
  Index coherence_len = 0;
  double spectral_efficiency = 0.0;
  double runtime_seconds = 0.0;
};

/// Mean over samples of ||H_i - Hhat_i||_F^2 / ||H_i||_F^2.
/// Throws on shape mismatch or a zero-norm truth sample.
double nmse(const std::vector<CMat>& truth, const std::vector<CMat>& estimates);

/// ||S*H||_F^2 / ||W||_F^2 (linear ratio); +inf when W = 0.
double system_snr(const CMat& s_matrix, const CMat& channel, const CMat& noise);

/// (1 - L/L_c) * log2(1 + snr_eff) with
/// snr_eff = snr*(1 - e) / (1 + snr*e), e = min(nmse, 1).
double spectral_efficiency(Index pilot_len, Index coherence_len,
                           double snr_linear, double nmse_value);

} // namespace dcgpsr
