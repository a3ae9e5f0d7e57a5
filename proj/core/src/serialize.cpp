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

#include "dcgpsr/serialize.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "array envelopes assume a little-endian host");

namespace dcgpsr {

using nlohmann::json;

namespace {

constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

json encode_array(const double* data, Index rows, Index cols, bool complex_) {
  const std::size_t bytes = static_cast<std::size_t>(rows) *
                            static_cast<std::size_t>(cols) *
                            (complex_ ? 2 : 1) * sizeof(double);
  json j;
  j["rows"] = rows;
  j["cols"] = cols;
  j["complex"] = complex_;
  j["b64"] = base64_encode(reinterpret_cast<const std::uint8_t*>(data), bytes);
  return j;
}

// Row-major buffers with complex entries interleaved (re, im).
json encode_cmat(const CMat& m) {
  std::vector<double> buf(static_cast<std::size_t>(m.size()) * 2);
  std::size_t pos = 0;
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      buf[pos++] = m(r, c).real();
      buf[pos++] = m(r, c).imag();
    }
  return encode_array(buf.data(), m.rows(), m.cols(), true);
}

json encode_mat(const Mat& m) {
  std::vector<double> buf(static_cast<std::size_t>(m.size()));
  std::size_t pos = 0;
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) buf[pos++] = m(r, c);
  return encode_array(buf.data(), m.rows(), m.cols(), false);
}

json encode_vec(const Vec& v) {
  return encode_array(v.data(), v.size(), 1, false);
}

std::vector<double> decode_doubles(const json& j, bool complex_,
                                   Index* rows, Index* cols) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("b64") || !j.contains("complex"))
    throw config_error("array entry missing rows/cols/complex/b64");
  *rows = j.at("rows").get<Index>();
  *cols = j.at("cols").get<Index>();
  if (j.at("complex").get<bool>() != complex_)
    throw config_error("array entry has unexpected complex flag");
  const auto bytes = base64_decode(j.at("b64").get<std::string>());
  const std::size_t expect = static_cast<std::size_t>(*rows) *
                             static_cast<std::size_t>(*cols) *
                             (complex_ ? 2 : 1) * sizeof(double);
  if (bytes.size() != expect)
    throw config_error("array payload size does not match rows*cols");
  std::vector<double> out(bytes.size() / sizeof(double));
  std::memcpy(out.data(), bytes.data(), bytes.size());
  return out;
}

CMat decode_cmat(const json& j) {
  Index rows = 0, cols = 0;
  const auto buf = decode_doubles(j, true, &rows, &cols);
  CMat m(rows, cols);
  std::size_t pos = 0;
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = cplx(buf[pos], buf[pos + 1]);
      pos += 2;
    }
  return m;
}

Mat decode_mat(const json& j) {
  Index rows = 0, cols = 0;
  const auto buf = decode_doubles(j, false, &rows, &cols);
  Mat m(rows, cols);
  std::size_t pos = 0;
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = buf[pos++];
  return m;
}

Vec decode_vec(const json& j) {
  const Mat m = decode_mat(j);
  if (m.cols() != 1) throw config_error("expected a column vector entry");
  return m.col(0);
}

json parse_envelope(const std::string& text, const std::string& kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object() || j.value("kind", "") != kind)
    throw config_error("expected a '" + kind + "' envelope");
  if (j.value("layout", "") != "row-major")
    throw config_error("unsupported array layout");
  return j;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

std::string base64_encode(const std::uint8_t* data, std::size_t len) {
  std::string out;
  out.reserve((len + 2) / 3 * 4);
  for (std::size_t i = 0; i < len; i += 3) {
    const std::uint32_t b0 = data[i];
    const std::uint32_t b1 = i + 1 < len ? data[i + 1] : 0;
    const std::uint32_t b2 = i + 2 < len ? data[i + 2] : 0;
    const std::uint32_t triple = (b0 << 16) | (b1 << 8) | b2;
    out.push_back(kB64Alphabet[(triple >> 18) & 0x3f]);
    out.push_back(kB64Alphabet[(triple >> 12) & 0x3f]);
    out.push_back(i + 1 < len ? kB64Alphabet[(triple >> 6) & 0x3f] : '=');
    out.push_back(i + 2 < len ? kB64Alphabet[triple & 0x3f] : '=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  auto value_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  if (text.size() % 4 != 0)
    throw config_error("base64 payload length must be a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int vals[4];
    int pad = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=') {
        vals[k] = 0;
        ++pad;
      } else {
        vals[k] = value_of(c);
        if (vals[k] < 0 || pad > 0)
          throw config_error("invalid base64 character");
      }
    }
    const std::uint32_t triple = (static_cast<std::uint32_t>(vals[0]) << 18) |
                                 (static_cast<std::uint32_t>(vals[1]) << 12) |
                                 (static_cast<std::uint32_t>(vals[2]) << 6) |
                                 static_cast<std::uint32_t>(vals[3]);
    out.push_back(static_cast<std::uint8_t>((triple >> 16) & 0xff));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>((triple >> 8) & 0xff));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(triple & 0xff));
  }
  return out;
}

std::string channel_to_json(const ChannelRealization& channel,
                            const ChannelParams& params, std::uint64_t seed) {
  json j;
  j["kind"] = "channel";
  j["layout"] = "row-major";
  j["meta"] = {{"seed", seed},
               {"params",
                {{"n_tx", params.n_tx},
                 {"n_rx", params.n_rx},
                 {"n_paths", params.n_paths},
                 {"n_sparse", params.n_sparse}}}};
  j["data"] = {{"spatial", encode_cmat(channel.spatial)},
               {"beamspace", encode_cmat(channel.beamspace)},
               {"beamspace_sparse", encode_cmat(channel.beamspace_sparse)}};
  return j.dump(2);
}

ChannelRealization channel_from_json(const std::string& text,
                                     ChannelParams* params,
                                     std::uint64_t* seed) {
  const json j = parse_envelope(text, "channel");
  ChannelRealization channel;
  channel.spatial = decode_cmat(j.at("data").at("spatial"));
  channel.beamspace = decode_cmat(j.at("data").at("beamspace"));
  channel.beamspace_sparse = decode_cmat(j.at("data").at("beamspace_sparse"));
  if (params) {
    const json& p = j.at("meta").at("params");
    params->n_tx = p.at("n_tx").get<Index>();
    params->n_rx = p.at("n_rx").get<Index>();
    params->n_paths = p.at("n_paths").get<Index>();
    params->n_sparse = p.at("n_sparse").get<Index>();
  }
  if (seed) *seed = j.at("meta").at("seed").get<std::uint64_t>();
  return channel;
}

std::string measurement_to_json(const MeasurementSetup& setup) {
  json j;
  j["kind"] = "measurement";
  j["layout"] = "row-major";
  j["meta"] = {{"seed", setup.seed},
               {"params",
                {{"kind", to_string(setup.kind)},
                 {"pilot_len", setup.s_matrix.rows()},
                 {"n_tx", setup.s_matrix.cols()},
                 {"power_budget", setup.power_budget}}}};
  j["data"] = {{"s_matrix", encode_cmat(setup.s_matrix)},
               {"pilot", encode_cmat(setup.pilot)}};
  return j.dump(2);
}

MeasurementSetup measurement_from_json(const std::string& text) {
  const json j = parse_envelope(text, "measurement");
  MeasurementSetup setup;
  const json& p = j.at("meta").at("params");
  setup.kind = measurement_kind_from_string(p.at("kind").get<std::string>());
  setup.power_budget = p.at("power_budget").get<double>();
  setup.seed = j.at("meta").at("seed").get<std::uint64_t>();
  setup.s_matrix = decode_cmat(j.at("data").at("s_matrix"));
  setup.pilot = decode_cmat(j.at("data").at("pilot"));
  return setup;
}

std::string problem_to_json(const SparseProblem& problem, std::uint64_t seed) {
  json j;
  j["kind"] = "problem";
  j["layout"] = "row-major";
  j["meta"] = {{"seed", seed},
               {"params",
                {{"k_budget", problem.k_budget},
                 {"rho", problem.rho},
                 {"noise_variance", problem.noise_variance}}}};
  j["data"] = {{"phi", encode_mat(problem.phi)}, {"y", encode_vec(problem.y)}};
  if (problem.x_true.size() > 0) j["data"]["x_true"] = encode_vec(problem.x_true);
  return j.dump(2);
}

SparseProblem problem_from_json(const std::string& text, std::uint64_t* seed) {
  const json j = parse_envelope(text, "problem");
  SparseProblem problem;
  const json& p = j.at("meta").at("params");
  problem.k_budget = p.at("k_budget").get<Index>();
  problem.rho = p.at("rho").get<double>();
  problem.noise_variance = p.at("noise_variance").get<double>();
  problem.phi = decode_mat(j.at("data").at("phi"));
  problem.y = decode_vec(j.at("data").at("y"));
  if (j.at("data").contains("x_true"))
    problem.x_true = decode_vec(j.at("data").at("x_true"));
  if (problem.phi.rows() != problem.y.size())
    throw config_error("problem envelope: phi rows and y length disagree");
  if (seed) *seed = j.at("meta").at("seed").get<std::uint64_t>();
  return problem;
}

std::string result_to_json(const SolverResult& result,
                           const std::string& algorithm,
                           double runtime_seconds, double error_vs_truth) {
  json j;
  j["algorithm"] = algorithm;
  j["termination"] = to_string(result.termination);
  j["outer_iters"] = result.outer_iters;
  j["inner_iters_total"] = result.inner_iters_total;
  j["runtime_seconds"] = runtime_seconds;
  if (std::isfinite(error_vs_truth))
    j["error_l2_normalized"] = error_vs_truth;
  if (result.rank_deficient_ls) j["rank_deficient_ls"] = true;
  j["x_hat"] = encode_vec(result.x_hat);
  return j.dump(2);
}

std::string trace_to_csv(const std::vector<IterRecord>& trace) {
  std::ostringstream os;
  os << "iter,objective,alpha,beta,delta_norm,elapsed_seconds\n";
  for (const auto& r : trace) {
    os << r.iter << ',' << fmt_double(r.objective) << ',' << fmt_double(r.alpha)
       << ',' << fmt_double(r.beta) << ',' << fmt_double(r.delta_norm) << ','
       << fmt_double(r.elapsed_seconds) << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file_atomic(const std::filesystem::path& path,
                            const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file: " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("rename failed: " + path.string());
  }
}

} // namespace dcgpsr
