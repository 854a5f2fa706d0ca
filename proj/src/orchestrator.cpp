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

#include "qjump/orchestrator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

namespace {

constexpr double kCacheBytes = 256.0 * 1024 * 1024;

void validate(const SamplerConfig& c, int n) {
  if (c.M < 1) throw InputError("sampler: M must be >= 1");
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw InputError("sampler: alpha outside [0,1]");
  if (c.backend == Backend::classical_random) {
    if (!(c.eta >= 0.0 && c.eta <= 1.0)) throw InputError("sampler: eta outside [0,1]");
    return;
  }
  if (c.L < 1 || c.L > c.Q) throw InputError("sampler: need 1 <= L <= Q");
  if (n > c.cap) {
    throw CapacityError("statevector backend refuses n=" + std::to_string(n) + " above cap " +
                        std::to_string(c.cap) + "; use the classical backend or analyze condmc");
  }
}

}  // namespace

double QjumpTrace::mean_n_ls() const {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& it : iterations) {
    for (int v : it.n_ls) total += v;
    count += it.n_ls.size();
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

double QjumpTrace::mean_flip_ratio() const {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& it : iterations) {
    for (int v : it.flips) total += static_cast<double>(v) / static_cast<double>(best.size());
    count += it.flips.size();
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

QjumpSolver::QjumpSolver(const IsingInstance& inst, ParamSchedule schedule, SamplerConfig sampler)
    : inst_(inst), schedule_(std::move(schedule)), config_(sampler) {
  validate(config_, inst.size());
  if (config_.backend == Backend::statevector) energies_ = energy_table(inst, config_.cap);
}

QjumpSolver::QjumpSolver(const IsingInstance& inst, const InfParams& inf, SamplerConfig sampler)
    : QjumpSolver(inst,
                  sampler.backend == Backend::statevector
                      ? build_schedule(inf, inst, sampler.L, sampler.Q)
                      : ParamSchedule{},
                  sampler) {}

std::shared_ptr<const Sampler> QjumpSolver::sampler_for(const Bitstring& s_circ, double alpha) const {
  // alpha = 0 erases the warm start, so every reference shares one entry.
  const std::pair<std::uint64_t, double> key{alpha == 0.0 ? 0 : s_circ.to_index(), alpha};
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const Statevector state =
      run_circuit(energies_, s_circ, alpha, schedule_, config_.mixer, config_.cap);
  auto made = std::make_shared<const Sampler>(state);
  std::lock_guard lock(mutex_);
  const double entry_bytes = 8.0 * static_cast<double>(energies_.size());
  if ((cache_.size() + 1) * entry_bytes > kCacheBytes) cache_.clear();
  cache_.emplace(key, made);
  return made;
}

std::vector<Bitstring> QjumpSolver::draw(const Bitstring& s_circ, double alpha, int M,
                                         std::uint64_t seed) const {
  if (config_.backend == Backend::classical_random) {
    return classical_random_sample(s_circ, config_.eta, M, seed);
  }
  return sampler_for(s_circ, alpha)->draw(M, seed);
}

std::vector<double> QjumpSolver::distribution(const Bitstring& s_circ, double alpha) const {
  if (config_.backend != Backend::statevector) {
    throw InputError("exact distribution needs the statevector backend");
  }
  return run_circuit(energies_, s_circ, alpha, schedule_, config_.mixer, config_.cap).probabilities();
}

QjumpTrace QjumpSolver::run(int iterations, std::uint64_t seed, std::optional<Bitstring> initial,
                            TieBreak tie, bool keep_samples) const {
  if (iterations < 1) throw InputError("qjump: iterations must be >= 1");
  const int n = inst_.size();
  Bitstring s_circ;
  if (initial) {
    if (static_cast<int>(initial->size()) != n) throw InputError("qjump: initial state size mismatch");
    s_circ = *initial;
  } else {
    Rng rng(derive_seed(seed, 0));
    std::bernoulli_distribution coin(0.5);
    s_circ = Bitstring(n);
    for (int j = 0; j < n; ++j) s_circ.set(j, coin(rng));
  }
  DeltaTable table = delta_table(inst_, s_circ);

  QjumpTrace trace;
  bool have_incumbent = false;
  for (int k = 0; k < iterations; ++k) {
    IterationRecord rec;
    rec.s_circ = s_circ;
    rec.alpha = k == 0 ? 0.0 : config_.alpha;
    auto samples = draw(s_circ, rec.alpha, config_.M, derive_seed(seed, k + 1));

    std::optional<SearchResult> best;
    if (have_incumbent) {
      best.emplace();
      best->s_star = s_circ;
      best->table_star = table;
      best->e_star = table.energy;
    }
    for (const auto& sample : samples) {
      SearchResult r = greedy_descent(inst_, s_circ, table, sample, tie);
      rec.n_ls.push_back(r.n_ls);
      rec.flips.push_back(r.flips_from_input);
      if (!best || r.e_star < best->e_star - 1e-9) best = std::move(r);
    }
    if (keep_samples) rec.samples = std::move(samples);
    rec.best = best->s_star;
    rec.e_best = best->e_star;
    s_circ = best->s_star;
    table = std::move(best->table_star);
    have_incumbent = true;
    trace.iterations.push_back(std::move(rec));
  }
  trace.best = s_circ;
  trace.e_best = energy(inst_, s_circ);
  return trace;
}

QjumpTrace run_qjump(const IsingInstance& inst, const InfParams& inf, const QjumpConfig& config) {
  const QjumpSolver solver(inst, inf, config.sampler);
  return solver.run(config.iterations, config.seed, config.initial, config.tie, config.keep_samples);
}

Tts tts(double t_r, double p_s) {
  if (!(t_r >= 0.0)) throw InputError("tts: run time must be non-negative");
  if (!(p_s >= 0.0 && p_s <= 1.0)) throw InputError("tts: success probability outside [0,1]");
  if (p_s == 0.0) return {std::numeric_limits<double>::infinity(), true};
  if (p_s >= 0.99) return {t_r, false};
  return {t_r * std::log(0.01) / std::log1p(-p_s), false};
}

}  // namespace qjump
