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

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qjump/ising.hpp"

namespace qjump {

struct InfLayers {
  std::vector<double> gammas;
  std::vector<double> betas;
};

/// Depth-indexed angles for infinite-size regular unweighted graphs.
struct InfParams {
  std::map<int, InfLayers> depths;
  /// When set, depths missing from `depths` get the linear ramp below.
  bool ramp_fallback = false;

  static InfParams parse(std::string_view json_text);
  static InfParams load(const std::filesystem::path& path);
  /// The file shipped in the source tree.
  static InfParams load_default();

  /// gamma_l = 0.7 t_l, beta_l = 0.7 (1 - t_l), t_l = (l - 1/2) / q.
  static InfLayers linear_ramp(int q);

  bool has(int q) const;
  InfLayers layers(int q) const;
  std::string available() const;
};

std::filesystem::path default_params_path();

struct ParamSchedule {
  int L = 0;
  int Q = 0;
  std::vector<double> gammas;
  std::vector<double> betas;
  double A = 0.0;
  double D = 0.0;
};

/// sqrt(sum J^2 / C_J + sum h^2 / C_h) over nonzero entries.
double rescale_factor(const IsingInstance& inst);
/// Nonzero entries of the symmetric coupling matrix divided by n.
double average_degree(const IsingInstance& inst);

/// First L layers of the depth-Q set rescaled to `inst`:
///   gamma_l = -arctan(1/sqrt(D-1)) gamma_inf_l / A,   beta_l = beta_inf_l.
ParamSchedule build_schedule(const InfParams& inf, const IsingInstance& inst, int L, int Q);

/// Schedule with explicit angles (A = 1, D = 0); used for hand-built circuits.
ParamSchedule explicit_schedule(std::vector<double> gammas, std::vector<double> betas);

}  // namespace qjump
