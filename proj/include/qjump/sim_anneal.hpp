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

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qjump/ising.hpp"

namespace qjump {

/// linear_beta steps the inverse temperature linearly from 1/T0 to 1/T_end.
enum class Schedule { geometric, linear, linear_beta };

struct SaConfig {
  int sweeps = 1000;
  double t0 = 1.0;
  double t_end = 0.01;
  Schedule schedule = Schedule::linear_beta;
  std::uint64_t seed = 0;
};

struct Temperatures {
  double t0 = 0.0;
  double t_end = 0.0;
};

/// Mean |dE| over all bits of 10 random states, accepted with probability 0.9 at T0.
Temperatures init_temperatures(const IsingInstance& inst, std::uint64_t seed);

/// Temperature used during sweep `sweep` (0-based).
/// "geometric", "linear" or "linear-beta".
const char* schedule_name(Schedule s);
/// Inverse of schedule_name; throws InputError on unknown names.
Schedule parse_schedule(std::string_view name);

double temperature_at(const SaConfig& config, int sweep);

/// Precomputed acceptance thresholds r = -T ln u, one row of n per sweep.
class RTable {
 public:
  RTable(int n, const SaConfig& config, std::uint64_t seed);

  int size() const { return n_; }
  int sweeps() const { return sweeps_; }
  std::span<const double> row(int sweep) const {
    return {values_.data() + static_cast<std::size_t>(sweep) * n_, static_cast<std::size_t>(n_)};
  }

 private:
  int n_;
  int sweeps_;
  std::vector<double> values_;
};

struct SaStats {
  std::uint64_t attempted = 0;
  std::uint64_t accepted = 0;
  double acceptance() const {
    return attempted == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(attempted);
  }
};

struct SaResult {
  Bitstring best;
  double e_best = 0.0;
  SaStats stats;
};

SaResult run_sa(const IsingInstance& inst, const SaConfig& config);
/// Reuses a table built for the same n and sweep count; the seed drives the
/// start state and the per-sweep shifts.
SaResult run_sa(const IsingInstance& inst, const SaConfig& config, const RTable& table);

struct SaTimeModel {
  double accept_ns = 18.0;
  double reject_ns = 0.8;
};

/// Modeled single-core runtime in nanoseconds.
double sa_time_model(int n, int sweeps, double acceptance, const SaTimeModel& model = {});

}  // namespace qjump
