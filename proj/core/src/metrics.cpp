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

#include "dcgpsr/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dcgpsr {

double nmse(const std::vector<CMat>& truth,
            const std::vector<CMat>& estimates) {
  if (truth.size() != estimates.size() || truth.empty())
    throw std::invalid_argument("nmse: sample lists must match and be non-empty");
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i].rows() != estimates[i].rows() ||
        truth[i].cols() != estimates[i].cols())
      throw std::invalid_argument("nmse: shape mismatch");
    const double denom = truth[i].squaredNorm();
    if (!(denom > 0.0))
      throw std::invalid_argument("nmse: zero-norm truth sample");
    acc += (truth[i] - estimates[i]).squaredNorm() / denom;
  }
  return acc / static_cast<double>(truth.size());
}

double system_snr(const CMat& s_matrix, const CMat& channel,
                  const CMat& noise) {
  const double signal = (s_matrix * channel).squaredNorm();
  const double noise_energy = noise.squaredNorm();
  if (noise_energy == 0.0) return std::numeric_limits<double>::infinity();
  return signal / noise_energy;
}

double spectral_efficiency(Index pilot_len, Index coherence_len,
                           double snr_linear, double nmse_value) {
  if (pilot_len < 0 || coherence_len < 1 || pilot_len > coherence_len)
    throw std::invalid_argument("spectral_efficiency: need 0 <= L <= L_c");
  if (!(snr_linear >= 0.0) || !(nmse_value >= 0.0))
    throw std::invalid_argument("spectral_efficiency: negative inputs");

  const double overhead =
      1.0 - static_cast<double>(pilot_len) / static_cast<double>(coherence_len);
  const double err = std::min(nmse_value, 1.0);
  double snr_eff;
  if (std::isinf(snr_linear)) {
    // Perfect-SNR limit of snr*(1-e)/(1+snr*e).
    snr_eff = err > 0.0 ? (1.0 - err) / err
                        : std::numeric_limits<double>::infinity();
  } else {
    snr_eff = snr_linear * (1.0 - err) / (1.0 + snr_linear * err);
  }
  return overhead * std::log2(1.0 + snr_eff);
}

} // namespace dcgpsr
