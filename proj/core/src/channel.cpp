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

#include "dcgpsr/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dcgpsr/rng.hpp"

namespace dcgpsr {

namespace {

void check_geometry(const ArrayGeometry& g) {
  if (g.n_elements < 1)
    throw std::invalid_argument("ArrayGeometry: n_elements must be >= 1");
  if (!(g.spacing_over_wavelength > 0.0))
    throw std::invalid_argument("ArrayGeometry: spacing must be positive");
}

} // namespace

CVec steering_vector(double theta, const ArrayGeometry& geometry) {
  check_geometry(geometry);
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (theta < -half_pi - 1e-12 || theta > half_pi + 1e-12)
    throw std::invalid_argument("steering_vector: theta outside [-pi/2, pi/2]");

  const Index n = geometry.n_elements;
  const double v = geometry.spacing_over_wavelength * std::sin(theta);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVec a(n);
  for (Index m = 0; m < n; ++m) {
    const double phase = -2.0 * std::numbers::pi * v * static_cast<double>(m);
    a[m] = scale * cplx(std::cos(phase), std::sin(phase));
  }
  return a;
}

CMat dft_matrix(Index n) {
  if (n < 1)
    throw std::invalid_argument("dft_matrix: n must be >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CMat u(n, n);
  for (Index i = 0; i < n; ++i) {
    // Half-wavelength spacing puts the virtual angle at i/n - 1/2.
    const double v = static_cast<double>(i) / static_cast<double>(n) - 0.5;
    for (Index m = 0; m < n; ++m) {
      const double phase = -2.0 * std::numbers::pi * v * static_cast<double>(m);
      u(i, m) = scale * cplx(std::cos(phase), std::sin(phase));
    }
  }
  return u;
}

CMat sparsify_largest(const CMat& m, Index n_keep) {
  const Index total = m.size();
  if (n_keep < 0 || n_keep > total)
    throw std::invalid_argument("sparsify_largest: n_keep out of range");

  // Row-major linear index so the tie rule is layout independent.
  std::vector<Index> order(static_cast<std::size_t>(total));
  for (Index i = 0; i < total; ++i) order[static_cast<std::size_t>(i)] = i;
  const Index cols = m.cols();
  auto mag = [&](Index lin) {
    return std::abs(m(lin / cols, lin % cols));
  };
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = mag(a), mb = mag(b);
    if (ma != mb) return ma > mb;
    return a < b;
  });

  CMat out = CMat::Zero(m.rows(), m.cols());
  for (Index r = 0; r < n_keep; ++r) {
    const Index lin = order[static_cast<std::size_t>(r)];
    out(lin / cols, lin % cols) = m(lin / cols, lin % cols);
  }
  return out;
}

ChannelRealization generate_channel(const ChannelParams& params,
                                    const ArrayGeometry& tx_geometry,
                                    const ArrayGeometry& rx_geometry,
                                    std::uint64_t seed) {
  check_geometry(tx_geometry);
  check_geometry(rx_geometry);
  if (params.n_tx != tx_geometry.n_elements ||
      params.n_rx != rx_geometry.n_elements)
    throw std::invalid_argument("generate_channel: geometry/params mismatch");
  if (params.n_paths < 1)
    throw std::invalid_argument("generate_channel: n_paths must be >= 1");
  if (params.n_sparse < 1 || params.n_sparse > params.n_tx * params.n_rx)
    throw std::invalid_argument("generate_channel: n_sparse out of range");

  constexpr double half_pi = std::numbers::pi / 2.0;
  Rng rng(seed);

  const double gain_scale =
      std::sqrt(static_cast<double>(params.n_rx * params.n_tx));
  CMat spatial = CMat::Zero(params.n_rx, params.n_tx);
  for (Index l = 0; l < params.n_paths; ++l) {
    const cplx alpha = rng.cnormal();
    const double theta_r = rng.uniform(-half_pi, half_pi);
    const double theta_t = rng.uniform(-half_pi, half_pi);
    const CVec ar = steering_vector(theta_r, rx_geometry);
    const CVec at = steering_vector(theta_t, tx_geometry);
    spatial.noalias() += (gain_scale * alpha) * (ar * at.adjoint());
  }

  const CMat ut = dft_matrix(params.n_tx);
  const CMat ur = dft_matrix(params.n_rx);

  ChannelRealization real;
  real.spatial = spatial;
  real.beamspace = ur.adjoint() * spatial * ut;
  real.beamspace_sparse = sparsify_largest(real.beamspace, params.n_sparse);
  return real;
}

ChannelRealization generate_channel(const ChannelParams& params,
                                    std::uint64_t seed) {
  return generate_channel(params, ArrayGeometry{params.n_tx, 0.5},
                          ArrayGeometry{params.n_rx, 0.5}, seed);
}

} // namespace dcgpsr
