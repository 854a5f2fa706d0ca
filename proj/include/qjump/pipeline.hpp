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
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qjump/analysis.hpp"
#include "qjump/cost_model.hpp"
#include "qjump/ising.hpp"
#include "qjump/orchestrator.hpp"
#include "qjump/params.hpp"
#include "qjump/sim_anneal.hpp"

namespace qjump {

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written to per-index slots so output order does not depend on scheduling.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

/// Ground state used for hit flags: exact when n <= exact_cap, otherwise the
/// best energy over an SA ensemble with certified = false.
struct GroundTruth {
  GroundState ground;
  bool certified = false;
};

struct SaEnsemble {
  int sweeps = 2000;
  int restarts = 100;
};

GroundTruth ground_truth(const IsingInstance& inst, std::uint64_t seed, int exact_cap = 24,
                         SaEnsemble ensemble = {});

struct RunResult {
  int run = 0;
  Bitstring best;
  double e_best = 0.0;
  bool hit = false;
  double model_ns = 0.0;
  double acceptance = 0.0;  // SA only
  double n_ls = 0.0;        // mean descent steps, loop algorithms
  double eta = 0.0;         // mean flip ratio, loop algorithms
};

struct BenchmarkRun {
  std::string instance_id;
  std::string algorithm;  // qjump, sa, qaoa+ls, classical-jump
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<RunResult> runs;
  double p_s = 0.0;
  double t_r_ns = 0.0;  // mean model time per run
  Tts tts;

  void summarize();
};

struct SaBench {
  int sweeps = 700;
  Schedule schedule = Schedule::linear_beta;
  SaTimeModel time_model;
};

BenchmarkRun sa_benchmark(const IsingInstance& inst, const GroundState& ground, const SaBench& sa,
                          int runs, std::uint64_t seed, int jobs = 1);

/// Qjump loop runs (statevector backend) or classical jumping (classical_random backend).
BenchmarkRun qjump_benchmark(const IsingInstance& inst, const InfParams& inf,
                             const GroundState& ground, const SamplerConfig& sampler,
                             int iterations, int runs, std::uint64_t seed,
                             const CostModel& cost, int jobs = 1);

/// Full-depth QAOA (L = Q, alpha = 0), one shot per run plus local search.
BenchmarkRun qaoa_baseline(const IsingInstance& inst, const InfParams& inf,
                           const GroundState& ground, int Q, int runs, std::uint64_t seed,
                           const CostModel& cost, int jobs = 1);

struct FilterConfig {
  int count = 200;
  LatticeSpec spec{3, {16, 17, 18, 19, 20, 21, 22, 23}};
  SaBench sa{};
  int sa_runs = 100;
  int keep_tts = 50;
  int keep_cjump = 20;
  // Desk-scale stage 2: few samples so that classical-jump p_s stays below 1.
  SamplerConfig cjump{2, 20, 0.5, 2, Backend::classical_random, 0.3};
  int cjump_iterations = 3;
  int cjump_runs = 100;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct FilterRecord {
  int index = 0;
  std::uint64_t seed = 0;
  IsingInstance instance;
  GroundState ground;
  bool certified = false;
  double sa_p_s = 0.0;
  Tts sa_tts;
  bool stage1 = false;
  double cjump_p_s = 0.0;
  bool stage2 = false;
  int rank = 0;  // position in the final selection, 1-based; 0 if dropped
};

struct FilterResult {
  std::vector<FilterRecord> records;  // generation order
  std::vector<int> selected;          // record indices, hardest first
};

/// Ranks by SA TTS (descending), keeps keep_tts, then ranks those by
/// classical-jump success probability (ascending) and keeps keep_cjump.
FilterResult filter_instances(const FilterConfig& config);

struct BudgetAlgorithm {
  std::string name;
  std::function<RunResult(int run)> run;
};

struct BudgetResult {
  std::string algorithm;
  std::vector<RunResult> runs;
  double used_ns = 0.0;
  OccurrenceGrid grid;
  bool zero_runs = false;
};

/// Executes runs while the accumulated model time stays within budget_ns.
BudgetResult run_within_budget(const BudgetAlgorithm& algorithm, double budget_ns,
                               const IsingInstance& inst, const GroundState& ground,
                               GridOptions grid = {}, int max_runs = 1000000);

struct CompareConfig {
  double budget_ms = 40.0;
  int L = 2;
  int Q = 20;
  double alpha = 0.5;
  int M = 20;
  int iterations = 12;
  double cjump_eta = 0.3;
  int qaoa_Q = 6;
  SaBench sa{};
  std::uint64_t seed = 0;
};

/// Fixed-budget comparison of qjump, sa, qaoa+ls and classical-jump on one instance.
std::vector<BudgetResult> fixed_budget_comparison(const IsingInstance& inst, const InfParams& inf,
                                                  const GroundState& ground,
                                                  const CompareConfig& config,
                                                  const CostModel& cost);

}  // namespace qjump
