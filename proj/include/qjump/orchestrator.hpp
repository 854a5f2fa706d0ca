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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "qjump/ising.hpp"
#include "qjump/local_search.hpp"
#include "qjump/params.hpp"
#include "qjump/sampler.hpp"

namespace qjump {

enum class Backend { statevector, classical_random };

struct SamplerConfig {
  int L = 2;
  int Q = 20;
  double alpha = 0.5;
  int M = 20;
  Backend backend = Backend::statevector;
  double eta = 0.3;  // classical_random backend only
  MixerKind mixer = MixerKind::warm_start;
  int cap = kStatevectorCap;
};

struct QjumpConfig {
  SamplerConfig sampler;
  int iterations = 12;
  std::uint64_t seed = 0;
  /// Warm start for the first iteration; random from the seed when empty.
  std::optional<Bitstring> initial;
  TieBreak tie = TieBreak::lowest_index;
  bool keep_samples = false;
};

struct IterationRecord {
  Bitstring s_circ;
  double alpha = 0.0;
  Bitstring best;
  double e_best = 0.0;
  std::vector<int> n_ls;
  std::vector<int> flips;
  std::vector<Bitstring> samples;  // filled when keep_samples is set
};

struct QjumpTrace {
  std::vector<IterationRecord> iterations;
  Bitstring best;
  double e_best = 0.0;

  double mean_n_ls() const;
  /// Mean replay flips per sample divided by n.
  double mean_flip_ratio() const;
};

/// Holds the energy table, schedule and cached sampling distributions for
/// repeated runs on one instance. Thread-safe.
class QjumpSolver {
 public:
  QjumpSolver(const IsingInstance& inst, ParamSchedule schedule, SamplerConfig sampler);
  QjumpSolver(const IsingInstance& inst, const InfParams& inf, SamplerConfig sampler);

  QjumpTrace run(int iterations, std::uint64_t seed, std::optional<Bitstring> initial = {},
                 TieBreak tie = TieBreak::lowest_index, bool keep_samples = false) const;

  /// Draws M samples for warm start s_circ at the given alpha.
  std::vector<Bitstring> draw(const Bitstring& s_circ, double alpha, int M, std::uint64_t seed) const;
  /// Exact output distribution of the circuit (statevector backend only).
  std::vector<double> distribution(const Bitstring& s_circ, double alpha) const;

  const IsingInstance& instance() const { return inst_; }
  const ParamSchedule& schedule() const { return schedule_; }
  const SamplerConfig& sampler() const { return config_; }
  std::span<const double> energies() const { return energies_; }

 private:
  std::shared_ptr<const Sampler> sampler_for(const Bitstring& s_circ, double alpha) const;

  const IsingInstance& inst_;
  ParamSchedule schedule_;
  SamplerConfig config_;
  std::vector<double> energies_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::uint64_t, double>, std::shared_ptr<const Sampler>> cache_;
};

QjumpTrace run_qjump(const IsingInstance& inst, const InfParams& inf, const QjumpConfig& config);

struct Tts {
  double seconds = 0.0;
  bool infinite = false;
};

/// t_r ln(0.01) / ln(1 - p_s), never below t_r; p_s = 0 gives the infinite flag.
Tts tts(double t_r, double p_s);

}  // namespace qjump
