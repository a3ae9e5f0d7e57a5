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

#include "dcgpsr/channel.hpp"
#include "dcgpsr/measurement.hpp"
#include "dcgpsr/metrics.hpp"
#include "test_util.hpp"

using namespace dcgpsr;

TEST_CASE("nmse basics") {
  Rng rng(80);
  const CMat h = test::random_cmat(rng, 3, 4);
  CHECK(nmse({h}, {h}) == 0.0);
  CHECK(nmse({h}, {CMat::Zero(3, 4)}) == doctest::Approx(1.0).epsilon(1e-15));

  // Two samples with per-sample ratios 0.1 and 0.3 average to 0.2.
  CMat t1 = CMat::Identity(1, 1);
  CMat e1 = t1 * (1.0 - std::sqrt(0.1));
  CMat t2 = CMat::Identity(1, 1);
  CMat e2 = t2 * (1.0 - std::sqrt(0.3));
  CHECK(nmse({t1, t2}, {e1, e2}) == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(nmse({CMat::Zero(2, 2)}, {CMat::Zero(2, 2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(nmse({h}, {CMat::Zero(2, 2)}), std::invalid_argument);
}

TEST_CASE("nmse is invariant under simultaneous unitary rotation") {
  Rng rng(81);
  for (int c = 0; c < 50; ++c) {
    const CMat h = test::random_cmat(rng, 6, 6);
    const CMat e = test::random_cmat(rng, 6, 6);
    const Eigen::HouseholderQR<CMat> qr(test::random_cmat(rng, 6, 6));
    const CMat qmat = qr.householderQ();
    const double base = nmse({h}, {e});
    const double rotated = nmse({qmat * h}, {qmat * e});
    CHECK(rotated == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("system snr ratio and scaling") {
  Rng rng(82);
  const CMat s = test::random_cmat(rng, 4, 6);
  const CMat h = test::random_cmat(rng, 6, 2);
  CMat w = test::random_cmat(rng, 4, 2);

  const double signal = (s * h).squaredNorm();
  CHECK(system_snr(s, h, w) ==
        doctest::Approx(signal / w.squaredNorm()).epsilon(1e-14));
  // Doubling the noise quarters the ratio exactly.
  CHECK(system_snr(s, h, 2.0 * w) == system_snr(s, h, w) / 4.0);
  CHECK(std::isinf(system_snr(s, h, CMat::Zero(4, 2))));
}

TEST_CASE("system snr closes the loop with observe") {
  const ChannelParams params{16, 2, 2, 4};
  const ChannelRealization chan = generate_channel(params, 83);
  const MeasurementSetup setup =
      make_measurement_matrix(MeasurementKind::gaussian, 8, 16, 8.0, 84);
  const Observation obs = observe(setup, chan, 25.0, 85);
  const CMat h = chan.beamspace_sparse.transpose();
  const CMat w = obs.received - setup.s_matrix * h;
  const double snr = system_snr(setup.s_matrix, h, w);
  CHECK(10.0 * std::log10(snr) == doctest::Approx(25.0).epsilon(1e-9));
}

TEST_CASE("spectral efficiency endpoints") {
  CHECK(spectral_efficiency(600, 600, 100.0, 0.01) == 0.0);
  CHECK(spectral_efficiency(0, 600, 100.0, 0.0) ==
        doctest::Approx(std::log2(101.0)).epsilon(1e-14));
  CHECK(spectral_efficiency(128, 600, 100.0, 1.0) == 0.0);
  CHECK(spectral_efficiency(128, 600, 100.0, 7.5) == 0.0); // clamped error
  CHECK_THROWS_AS(spectral_efficiency(601, 600, 10.0, 0.1),
                  std::invalid_argument);
}

TEST_CASE("spectral efficiency is monotone in error and overhead") {
  int points = 0;
  for (Index l = 0; l <= 500; l += 50) {
    double prev_in_nmse = std::numeric_limits<double>::infinity();
    for (double e = 0.0; e <= 1.2; e += 0.012) {
      const double se = spectral_efficiency(l, 600, 316.0, e);
      CHECK(se <= prev_in_nmse + 1e-12);
      prev_in_nmse = se;
      ++points;
    }
  }
  CHECK(points >= 1000);

  for (double e : {0.0, 0.03, 0.4}) {
    double prev = std::numeric_limits<double>::infinity();
    for (Index l = 0; l <= 600; l += 40) {
      const double se = spectral_efficiency(l, 600, 316.0, e);
      CHECK(se <= prev + 1e-12);
      prev = se;
    }
  }
}
