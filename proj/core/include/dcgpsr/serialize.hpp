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
#include <filesystem>
#include <string>
#include <vector>

#include "dcgpsr/channel.hpp"
#include "dcgpsr/measurement.hpp"
#include "dcgpsr/solvers.hpp"
#include "dcgpsr/types.hpp"

namespace dcgpsr {

/// Raised for malformed files and configs; the CLI maps it to exit code 1.
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string base64_encode(const std::uint8_t* data, std::size_t len);
std::vector<std::uint8_t> base64_decode(const std::string& text);

/// JSON envelopes: {"kind": ..., "meta": {...}, "layout": "row-major",
/// "data": {name: {rows, cols, complex, b64}}}. Arrays are little-endian
/// float64, row-major, complex entries interleaved (re, im).
std::string channel_to_json(const ChannelRealization& channel,
                            const ChannelParams& params, std::uint64_t seed);
ChannelRealization channel_from_json(const std::string& text,
                                     ChannelParams* params = nullptr,
                                     std::uint64_t* seed = nullptr);

std::string measurement_to_json(const MeasurementSetup& setup);
MeasurementSetup measurement_from_json(const std::string& text);

std::string problem_to_json(const SparseProblem& problem, std::uint64_t seed);
SparseProblem problem_from_json(const std::string& text,
                                std::uint64_t* seed = nullptr);

/// Solver result without the trace (the trace goes to CSV).
std::string result_to_json(const SolverResult& result,
                           const std::string& algorithm,
                           double runtime_seconds, double error_vs_truth);

/// Text columns: iter, objective, alpha, beta, delta_norm, elapsed_seconds.
std::string trace_to_csv(const std::vector<IterRecord>& trace);

std::string read_text_file(const std::filesystem::path& path);
/// Writes via a temporary file and renames, removing the temporary on error.
void write_text_file_atomic(const std::filesystem::path& path,
                            const std::string& content);

} // namespace dcgpsr
