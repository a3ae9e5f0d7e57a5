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

#include "dcgpsr/measurement.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dcgpsr/rng.hpp"

namespace dcgpsr {

MeasurementKind measurement_kind_from_string(std::string_view name) {
  if (name == "gaussian") return MeasurementKind::gaussian;
  if (name == "rademacher") return MeasurementKind::rademacher;
  if (name == "bernoulli01") return MeasurementKind::bernoulli01;
  if (name == "partial_fourier") return MeasurementKind::partial_fourier;
  throw std::invalid_argument(
      "unknown measurement kind '" + std::string(name) +
      "' (valid: gaussian, rademacher, bernoulli01, partial_fourier)");
}

std::string to_string(MeasurementKind kind) {
  switch (kind) {
    case MeasurementKind::gaussian: return "gaussian";
    case MeasurementKind::rademacher: return "rademacher";
    case MeasurementKind::bernoulli01: return "bernoulli01";
    case MeasurementKind::partial_fourier: return "partial_fourier";
  }
  return "?";
}

MeasurementSetup make_measurement_matrix(MeasurementKind kind, Index pilot_len,
                                         Index n_tx, double power_budget,
                                         std::uint64_t seed) {
  if (pilot_len < 1 || n_tx < 1)
    throw std::invalid_argument("make_measurement_matrix: bad dimensions");
  if (!(power_budget > 0.0))
    throw std::invalid_argument("make_measurement_matrix: power budget must be positive");
  if (kind == MeasurementKind::partial_fourier && pilot_len > n_tx)
    throw std::invalid_argument(
        "make_measurement_matrix: partial_fourier needs pilot_len <= n_tx");

  Rng rng(seed);
  CMat s(pilot_len, n_tx);
  switch (kind) {
    case MeasurementKind::gaussian:
      for (Index i = 0; i < pilot_len; ++i)
        for (Index j = 0; j < n_tx; ++j) s(i, j) = rng.normal();
      break;
    case MeasurementKind::rademacher:
      for (Index i = 0; i < pilot_len; ++i)
        for (Index j = 0; j < n_tx; ++j)
          s(i, j) = rng.uniform_int(0, 1) == 0 ? -1.0 : 1.0;
      break;
    case MeasurementKind::bernoulli01:
      for (Index i = 0; i < pilot_len; ++i)
        for (Index j = 0; j < n_tx; ++j)
          s(i, j) = static_cast<double>(rng.uniform_int(0, 1));
      break;
    case MeasurementKind::partial_fourier: {
      // L distinct rows of the unitary n_tx-point DFT, sampled without
      // replacement (partial Fisher-Yates).
      const CMat dft = dft_matrix(n_tx);
      std::vector<Index> rows(static_cast<std::size_t>(n_tx));
      std::iota(rows.begin(), rows.end(), Index{0});
      for (Index i = 0; i < pilot_len; ++i) {
        const auto j = static_cast<Index>(rng.uniform_int(i, n_tx - 1));
        std::swap(rows[static_cast<std::size_t>(i)],
                  rows[static_cast<std::size_t>(j)]);
        s.row(i) = dft.row(rows[static_cast<std::size_t>(i)]);
      }
      break;
    }
  }

  const double norm = s.norm();
  if (!(norm > 0.0))
    throw std::runtime_error("make_measurement_matrix: degenerate draw");
  s *= std::sqrt(power_budget) / norm;

  MeasurementSetup setup;
  setup.kind = kind;
  setup.s_matrix = s;
  setup.pilot = dft_matrix(n_tx) * s.transpose();
  setup.power_budget = power_budget;
  setup.seed = seed;
  return setup;
}

namespace {

const CMat& select_beamspace(const ChannelRealization& channel,
                             ChannelSelect select) {
  return select == ChannelSelect::sparse ? channel.beamspace_sparse
                                         : channel.beamspace;
}

} // namespace

Observation observe(const MeasurementSetup& setup,
                    const ChannelRealization& channel, double target_snr_db,
                    std::uint64_t noise_seed, ChannelSelect select) {
  const CMat h = select_beamspace(channel, select).transpose(); // n_tx x n_rx
  if (setup.s_matrix.cols() != h.rows())
    throw std::invalid_argument("observe: dimension mismatch");

  const CMat signal = setup.s_matrix * h;
  const double signal_energy = signal.squaredNorm();
  if (!(signal_energy > 0.0))
    throw std::invalid_argument("observe: zero-signal SNR undefined");

  Observation obs;
  if (std::isinf(target_snr_db)) {
    obs.received = signal;
    obs.realized_snr_db = std::numeric_limits<double>::infinity();
    obs.noise_variance = 0.0;
    return obs;
  }

  Rng rng(noise_seed);
  CMat w(signal.rows(), signal.cols());
  for (Index i = 0; i < w.rows(); ++i)
    for (Index j = 0; j < w.cols(); ++j) w(i, j) = rng.cnormal();
  const double snr_linear = std::pow(10.0, target_snr_db / 10.0);
  const double c = std::sqrt(signal_energy / (snr_linear * w.squaredNorm()));
  w *= c;

  obs.received = signal + w;
  obs.realized_snr_db = 10.0 * std::log10(signal_energy / w.squaredNorm());
  obs.noise_variance = c * c;
  return obs;
}

Mat stack_real(const CMat& s) {
  const Index rows = s.rows(), cols = s.cols();
  Mat phi(2 * rows, 2 * cols);
  phi.topLeftCorner(rows, cols) = s.real();
  phi.topRightCorner(rows, cols) = -s.imag();
  phi.bottomLeftCorner(rows, cols) = s.imag();
  phi.bottomRightCorner(rows, cols) = s.real();
  return phi;
}

std::vector<SparseProblem> columnize(const CMat& received, const CMat& s_matrix,
                                     const ChannelRealization& channel,
                                     double noise_variance, Index k_budget,
                                     double rho, ChannelSelect select) {
  const CMat h = select_beamspace(channel, select).transpose(); // n_tx x n_rx
  if (received.rows() != s_matrix.rows() || received.cols() != h.cols() ||
      s_matrix.cols() != h.rows())
    throw std::invalid_argument("columnize: dimension mismatch");
  if (k_budget < 0 || k_budget > 2 * s_matrix.cols())
    throw std::invalid_argument("columnize: k_budget out of range");

  const Mat phi = stack_real(s_matrix);
  std::vector<SparseProblem> problems;
  problems.reserve(static_cast<std::size_t>(received.cols()));
  for (Index i = 0; i < received.cols(); ++i) {
    SparseProblem p;
    p.phi = phi;
    p.y = realify(received.col(i));
    p.k_budget = k_budget;
    p.rho = rho;
    p.noise_variance = noise_variance;
    p.x_true = realify(h.col(i));
    problems.push_back(std::move(p));
  }
  return problems;
}

CVec complexify(const Vec& x) {
  if (x.size() % 2 != 0)
    throw std::invalid_argument("complexify: vector length must be even");
  const Index n = x.size() / 2;
  CVec h(n);
  for (Index i = 0; i < n; ++i) h[i] = cplx(x[i], x[i + n]);
  return h;
}

Vec realify(const CVec& h) {
  const Index n = h.size();
  Vec x(2 * n);
  x.head(n) = h.real();
  x.tail(n) = h.imag();
  return x;
}

} // namespace dcgpsr
