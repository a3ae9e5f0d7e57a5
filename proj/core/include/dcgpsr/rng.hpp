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
#include <random>

#include "dcgpsr/types.hpp"

namespace dcgpsr {

/// Derives an independent stream seed from a base seed and a salt
/// (splitmix64 finalizer). Used to give each trial/axis its own stream.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

/// Seeded draws used by the simulator. Every consumer owns its own Rng, so
/// concurrent trials never share generator state.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi);
  /// Standard normal N(0,1).
  double normal();
  /// Circularly symmetric complex Gaussian CN(0,1); Re and Im are N(0,1/2).
  cplx cnormal();
  /// Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

private:
  std::mt19937_64 gen_;
};

} // namespace dcgpsr
