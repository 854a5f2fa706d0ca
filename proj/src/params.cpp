// Copyright 2026 The Qjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qjump/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qjump/errors.hpp"

#ifndef QJUMP_DATA_DIR
#define QJUMP_DATA_DIR "data"
#endif

namespace qjump {

using nlohmann::json;

InfParams InfParams::parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("params: malformed JSON at byte " + std::to_string(e.byte));
  }
  const json* depths = &doc;
  if (doc.is_object() && doc.contains("depths")) depths = &doc["depths"];
  if (!depths->is_object()) throw ParseError("params: expected an object of depths");
  InfParams out;
  for (const auto& [key, entry] : depths->items()) {
    int q = 0;
    try {
      std::size_t used = 0;
      q = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError("params: depth key '" + key + "' is not an integer");
    }
    if (q < 1) throw ParseError("params: depth " + key + " must be >= 1");
    InfLayers layers;
    try {
      layers.gammas = entry.at("gammas").get<std::vector<double>>();
      layers.betas = entry.at("betas").get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ParseError("params: depth " + key + " needs numeric arrays 'gammas' and 'betas'");
    }
    if (static_cast<int>(layers.gammas.size()) != q || static_cast<int>(layers.betas.size()) != q) {
      throw ParseError("params: depth " + key + " arrays must have length " + key);
    }
    for (std::size_t l = 0; l < layers.gammas.size(); ++l) {
      if (!std::isfinite(layers.gammas[l]) || !std::isfinite(layers.betas[l])) {
        throw ParseError("params: depth " + key + " layer " + std::to_string(l + 1) + " not finite");
      }
    }
    out.depths[q] = std::move(layers);
  }
  return out;
}

InfParams InfParams::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open parameter file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::filesystem::path default_params_path() {
  return std::filesystem::path(QJUMP_DATA_DIR) / "params" / "inf_params.json";
}

InfParams InfParams::load_default() { return load(default_params_path()); }

InfLayers InfParams::linear_ramp(int q) {
  if (q < 1) throw InputError("linear ramp depth must be >= 1");
  InfLayers layers;
  for (int l = 0; l < q; ++l) {
    const double t = (l + 0.5) / q;
    layers.gammas.push_back(0.7 * t);
    layers.betas.push_back(0.7 * (1.0 - t));
  }
  return layers;
}

bool InfParams::has(int q) const { return depths.count(q) != 0 || (ramp_fallback && q >= 1); }

std::string InfParams::available() const {
  std::string out;
  for (const auto& [q, layers] : depths) out += (out.empty() ? "" : ", ") + std::to_string(q);
  return out.empty() ? "none" : out;
}

InfLayers InfParams::layers(int q) const {
  if (auto it = depths.find(q); it != depths.end()) return it->second;
  if (ramp_fallback) return linear_ramp(q);
  throw InputError("no parameters for depth Q=" + std::to_string(q) + "; available: " + available());
}

double rescale_factor(const IsingInstance& inst) {
  double sum_j = 0.0;
  double sum_h = 0.0;
  long count_j = 0;
  long count_h = 0;
  for (const auto& e : inst.edges()) {
    if (e.coupling != 0.0) {
      sum_j += e.coupling * e.coupling;
      ++count_j;
    }
  }
  for (double h : inst.fields()) {
    if (h != 0.0) {
      sum_h += h * h;
      ++count_h;
    }
  }
  if (count_j == 0 && count_h == 0) {
    throw DegenerateInstanceError("rescale factor undefined: all couplings and fields are zero");
  }
  double a2 = 0.0;
  if (count_j > 0) a2 += sum_j / static_cast<double>(count_j);
  if (count_h > 0) a2 += sum_h / static_cast<double>(count_h);
  return std::sqrt(a2);
}

double average_degree(const IsingInstance& inst) {
  long nonzero = 0;
  for (const auto& e : inst.edges()) nonzero += e.coupling != 0.0 ? 2 : 0;
  return static_cast<double>(nonzero) / inst.size();
}

ParamSchedule build_schedule(const InfParams& inf, const IsingInstance& inst, int L, int Q) {
  if (Q < 1 || L < 1 || L > Q) {
    throw InputError("schedule needs 1 <= L <= Q (got L=" + std::to_string(L) + ", Q=" +
                     std::to_string(Q) + ")");
  }
  const InfLayers layers = inf.layers(Q);
  ParamSchedule p;
  p.L = L;
  p.Q = Q;
  p.A = rescale_factor(inst);
  p.D = average_degree(inst);
  if (!(p.D > 1.0)) {
    throw DegenerateInstanceError("average degree " + std::to_string(p.D) +
                                  " <= 1: angle rescaling undefined");
  }
  const double angle = std::atan(1.0 / std::sqrt(p.D - 1.0));
  for (int l = 0; l < L; ++l) {
    p.gammas.push_back(-angle * layers.gammas[l] / p.A);
    p.betas.push_back(layers.betas[l]);
  }
  return p;
}

ParamSchedule explicit_schedule(std::vector<double> gammas, std::vector<double> betas) {
  if (gammas.size() != betas.size()) throw InputError("gamma and beta counts differ");
  ParamSchedule p;
  p.L = static_cast<int>(gammas.size());
  p.Q = p.L;
  p.gammas = std::move(gammas);
  p.betas = std::move(betas);
  p.A = 1.0;
  return p;
}

}  // namespace qjump
