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

#include "dcgpsr/types.hpp"

namespace dcgpsr {

/// One-dimensional uniform linear array.
struct ArrayGeometry {
  Index n_elements = 1;
  double spacing_over_wavelength = 0.5; // d / lambda
};

/// Multipath channel draw parameters. Gains are unit-variance complex
/// Gaussian, arrival/departure angles uniform over [-pi/2, pi/2].
struct ChannelParams {
  Index n_tx = 256;    // transmit antennas
  Index n_rx = 1;      // receive antennas
  Index n_paths = 3;   // multipath components
  Index n_sparse = 16; // beamspace coefficients kept after sparsification
};

/// One coherence block: the spatial channel, its angular (beamspace) form,
/// and the sparsified beamspace form that keeps the n_sparse
/// largest-magnitude coefficients.
struct ChannelRealization {
  CMat spatial;          // n_rx x n_tx
  CMat beamspace;        // n_rx x n_tx
  CMat beamspace_sparse; // n_rx x n_tx, at most n_sparse nonzeros
};

/// ULA steering vector: element m is (1/sqrt(N)) * exp(-j*2*pi*v*m) with
/// v = (d/lambda)*sin(theta). Unit l2 norm by construction.
/// theta must lie in [-pi/2, pi/2].
CVec steering_vector(double theta, const ArrayGeometry& geometry);

/// Unitary DFT matrix whose rows are steering vectors of a half-wavelength
/// ULA at the n virtual angles sin(theta_i) = -1 + 2i/n, i = 0..n-1.
CMat dft_matrix(Index n);

/// Keeps the n_keep largest-magnitude entries of m and zeros the rest.
/// Ties at the boundary keep the lowest row-major linear index.
CMat sparsify_largest(const CMat& m, Index n_keep);

/// Draws one multipath channel realization. Deterministic in (params,
/// geometries, seed). The beamspace form is related to the spatial form by
/// the unitary transmit/receive DFT matrices.
ChannelRealization generate_channel(const ChannelParams& params,
                                    const ArrayGeometry& tx_geometry,
                                    const ArrayGeometry& rx_geometry,
                                    std::uint64_t seed);

/// Convenience overload using half-wavelength arrays on both ends.
ChannelRealization generate_channel(const ChannelParams& params,
                                    std::uint64_t seed);

} // namespace dcgpsr
