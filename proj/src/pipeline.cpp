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

#include "qjump/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <cstdio>
#include <limits>
#include <thread>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1, jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

GroundTruth ground_truth(const IsingInstance& inst, std::uint64_t seed, int exact_cap,
                         SaEnsemble ensemble) {
  GroundTruth truth;
  if (inst.size() <= exact_cap) {
    truth.ground = brute_force_ground(inst, exact_cap);
    truth.certified = true;
    return truth;
  }
  const Temperatures temps = init_temperatures(inst, derive_seed(seed, 0));
  truth.ground.energy = std::numeric_limits<double>::infinity();
  for (int r = 0; r < ensemble.restarts; ++r) {
    SaConfig c{ensemble.sweeps, temps.t0, temps.t_end, Schedule::linear_beta, derive_seed(seed, r + 1)};
    const SaResult res = run_sa(inst, c);
    if (res.e_best < truth.ground.energy - 1e-9) {
      truth.ground.energy = res.e_best;
      truth.ground.minimizers.assign(1, res.best);
    } else if (res.e_best <= truth.ground.energy + 1e-9 &&
               std::find(truth.ground.minimizers.begin(), truth.ground.minimizers.end(), res.best) ==
                   truth.ground.minimizers.end()) {
      truth.ground.minimizers.push_back(res.best);
    }
  }
  std::sort(truth.ground.minimizers.begin(), truth.ground.minimizers.end());
  return truth;
}

void BenchmarkRun::summarize() {
  if (runs.empty()) {
    p_s = 0.0;
    t_r_ns = 0.0;
    tts = {std::numeric_limits<double>::infinity(), true};
    return;
  }
  const auto hits = std::count_if(runs.begin(), runs.end(), [](const RunResult& r) { return r.hit; });
  p_s = static_cast<double>(hits) / static_cast<double>(runs.size());
  double total = 0.0;
  for (const auto& r : runs) total += r.model_ns;
  t_r_ns = total / static_cast<double>(runs.size());
  tts = qjump::tts(t_r_ns * 1e-9, p_s);
}

namespace {

std::string str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

RunResult sa_run(const IsingInstance& inst, const GroundState& ground, const SaBench& sa,
                 const Temperatures& temps, int run, std::uint64_t seed) {
  SaConfig c{sa.sweeps, temps.t0, temps.t_end, sa.schedule, derive_seed(seed, run + 1)};
  const SaResult res = run_sa(inst, c);
  RunResult out;
  out.run = run;
  out.best = res.best;
  out.e_best = res.e_best;
  out.hit = ground.is_ground(res.e_best);
  out.acceptance = res.stats.acceptance();
  out.model_ns = sa_time_model(inst.size(), sa.sweeps, out.acceptance, sa.time_model);
  return out;
}

RunResult loop_run(const QjumpSolver& solver, const GroundState& ground, int iterations, int run,
                   std::uint64_t seed, const CostModel& cost) {
  const QjumpTrace trace = solver.run(iterations, derive_seed(seed, run + 1));
  const auto& cfg = solver.sampler();
  const int n = solver.instance().size();
  RunResult out;
  out.run = run;
  out.best = trace.best;
  out.e_best = trace.e_best;
  out.hit = ground.is_ground(trace.e_best);
  out.n_ls = trace.mean_n_ls();
  out.eta = trace.mean_flip_ratio();
  if (cfg.backend == Backend::statevector) {
    out.model_ns = estimate_runtime(cost, n, cfg.L, cfg.M, iterations, out.eta, out.n_ls).run_ns;
  } else {
    // No quantum block: random flips are generated by the classical stream.
    out.model_ns =
        iterations * (cfg.M * classical_block_ns(cost, n, out.eta, out.n_ls) + cost.t_po);
  }
  return out;
}

}  // namespace

BenchmarkRun sa_benchmark(const IsingInstance& inst, const GroundState& ground, const SaBench& sa,
                          int runs, std::uint64_t seed, int jobs) {
  BenchmarkRun bench;
  bench.instance_id = inst.metadata().id;
  bench.algorithm = "sa";
  bench.config = {{"sweeps", std::to_string(sa.sweeps)},
                  {"schedule", schedule_name(sa.schedule)},
                  {"seed", std::to_string(seed)}};
  const Temperatures temps = init_temperatures(inst, derive_seed(seed, 0));
  bench.runs.resize(runs);
  parallel_for(runs, jobs, [&](std::size_t r) {
    bench.runs[r] = sa_run(inst, ground, sa, temps, static_cast<int>(r), seed);
  });
  bench.summarize();
  return bench;
}

BenchmarkRun qjump_benchmark(const IsingInstance& inst, const InfParams& inf,
                             const GroundState& ground, const SamplerConfig& sampler,
                             int iterations, int runs, std::uint64_t seed, const CostModel& cost,
                             int jobs) {
  BenchmarkRun bench;
  bench.instance_id = inst.metadata().id;
  const bool quantum = sampler.backend == Backend::statevector;
  bench.algorithm = quantum ? "qjump" : "classical-jump";
  if (quantum) {
    bench.config = {{"L", std::to_string(sampler.L)}, {"Q", std::to_string(sampler.Q)},
                    {"alpha", str(sampler.alpha)}};
  } else {
    bench.config = {{"eta", str(sampler.eta)}};
  }
  bench.config.insert(bench.config.end(), {{"M", std::to_string(sampler.M)},
                                           {"iterations", std::to_string(iterations)},
                                           {"seed", std::to_string(seed)}});
  const QjumpSolver solver(inst, inf, sampler);
  bench.runs.resize(runs);
  parallel_for(runs, jobs, [&](std::size_t r) {
    bench.runs[r] = loop_run(solver, ground, iterations, static_cast<int>(r), seed, cost);
  });
  bench.summarize();
  return bench;
}

BenchmarkRun qaoa_baseline(const IsingInstance& inst, const InfParams& inf,
                           const GroundState& ground, int Q, int runs, std::uint64_t seed,
                           const CostModel& cost, int jobs) {
  SamplerConfig sampler;
  sampler.L = Q;
  sampler.Q = Q;
  sampler.alpha = 0.0;
  sampler.M = 1;
  sampler.backend = Backend::statevector;
  const QjumpSolver solver(inst, inf, sampler);
  BenchmarkRun bench;
  bench.instance_id = inst.metadata().id;
  bench.algorithm = "qaoa+ls";
  bench.config = {{"Q", std::to_string(Q)}, {"seed", std::to_string(seed)}};
  bench.runs.resize(runs);
  parallel_for(runs, jobs, [&](std::size_t r) {
    RunResult out = loop_run(solver, ground, 1, static_cast<int>(r), seed, cost);
    out.model_ns = qaoa_run_ns(cost, Q);
    bench.runs[r] = out;
  });
  bench.summarize();
  return bench;
}

FilterResult filter_instances(const FilterConfig& c) {
  if (!(c.count >= c.keep_tts && c.keep_tts >= c.keep_cjump && c.keep_cjump >= 1)) {
    throw InputError("filter needs count >= keep_tts >= keep_cjump >= 1");
  }
  FilterResult result;
  result.records.resize(c.count);
  const CostModel cost = CostModel::for_size(static_cast<int>(lattice_site_count(c.spec.L) - c.spec.mask.size()));
  parallel_for(c.count, c.jobs, [&](std::size_t i) {
    FilterRecord& rec = result.records[i];
    rec.index = static_cast<int>(i);
    rec.seed = derive_seed(c.seed, i);
    IsingInstance inst = generate_lattice_instance(c.spec, rec.seed);
    InstanceMetadata meta = inst.metadata();
    char id[32];
    std::snprintf(id, sizeof id, "inst-%04zu", i);
    meta.id = id;
    rec.instance = IsingInstance(inst.size(), {inst.edges().begin(), inst.edges().end()},
                                 {inst.fields().begin(), inst.fields().end()}, meta);
    const GroundTruth truth = ground_truth(rec.instance, rec.seed);
    rec.ground = truth.ground;
    rec.certified = truth.certified;
    const BenchmarkRun sa = sa_benchmark(rec.instance, truth.ground, c.sa, c.sa_runs, rec.seed);
    rec.sa_p_s = sa.p_s;
    rec.sa_tts = sa.tts;
  });

  std::vector<int> order(c.count);
  std::iota(order.begin(), order.end(), 0);
  auto tts_key = [&](int i) {
    const auto& t = result.records[i].sa_tts;
    return t.infinite ? std::numeric_limits<double>::infinity() : t.seconds;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return tts_key(a) > tts_key(b); });
  order.resize(c.keep_tts);
  for (int i : order) result.records[i].stage1 = true;

  const InfParams none;
  parallel_for(order.size(), c.jobs, [&](std::size_t k) {
    FilterRecord& rec = result.records[order[k]];
    const BenchmarkRun cj = qjump_benchmark(rec.instance, none, rec.ground, c.cjump, c.cjump_iterations,
                                            c.cjump_runs, derive_seed(rec.seed, 1), cost);
    rec.cjump_p_s = cj.p_s;
  });
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return result.records[a].cjump_p_s < result.records[b].cjump_p_s;
  });
  order.resize(c.keep_cjump);
  for (std::size_t k = 0; k < order.size(); ++k) {
    result.records[order[k]].stage2 = true;
    result.records[order[k]].rank = static_cast<int>(k) + 1;
  }
  result.selected = order;
  return result;
}

BudgetResult run_within_budget(const BudgetAlgorithm& algorithm, double budget_ns,
                               const IsingInstance& inst, const GroundState& ground,
                               GridOptions grid, int max_runs) {
  BudgetResult out;
  out.algorithm = algorithm.name;
  for (int r = 0; r < max_runs; ++r) {
    RunResult res = algorithm.run(r);
    if (out.used_ns + res.model_ns > budget_ns) break;
    out.used_ns += res.model_ns;
    out.runs.push_back(std::move(res));
  }
  out.zero_runs = out.runs.empty();
  std::vector<Bitstring> bests;
  for (const auto& r : out.runs) bests.push_back(r.best);
  if (ground.energy < 0.0) out.grid = occurrence_grid(bests, inst, ground, grid);
  return out;
}

std::vector<BudgetResult> fixed_budget_comparison(const IsingInstance& inst, const InfParams& inf,
                                                  const GroundState& ground,
                                                  const CompareConfig& c, const CostModel& cost) {
  const double budget = c.budget_ms * 1e6;
  SamplerConfig q;
  q.L = c.L;
  q.Q = c.Q;
  q.alpha = c.alpha;
  q.M = c.M;
  const QjumpSolver qjump(inst, inf, q);

  SamplerConfig cj = q;
  cj.backend = Backend::classical_random;
  cj.eta = c.cjump_eta;
  const QjumpSolver cjump(inst, inf, cj);

  SamplerConfig qa;
  qa.L = c.qaoa_Q;
  qa.Q = c.qaoa_Q;
  qa.alpha = 0.0;
  qa.M = 1;
  const QjumpSolver qaoa(inst, inf, qa);

  const Temperatures temps = init_temperatures(inst, derive_seed(c.seed, 10));
  const std::uint64_t s_q = derive_seed(c.seed, 11);
  const std::uint64_t s_sa = derive_seed(c.seed, 12);
  const std::uint64_t s_qa = derive_seed(c.seed, 13);
  const std::uint64_t s_cj = derive_seed(c.seed, 14);

  std::vector<BudgetAlgorithm> algos{
      {"qjump", [&](int r) { return loop_run(qjump, ground, c.iterations, r, s_q, cost); }},
      {"sa", [&](int r) { return sa_run(inst, ground, c.sa, temps, r, s_sa); }},
      {"qaoa+ls",
       [&](int r) {
         RunResult res = loop_run(qaoa, ground, 1, r, s_qa, cost);
         res.model_ns = qaoa_run_ns(cost, c.qaoa_Q);
         return res;
       }},
      {"classical-jump", [&](int r) { return loop_run(cjump, ground, c.iterations, r, s_cj, cost); }},
  };
  std::vector<BudgetResult> out;
  for (const auto& a : algos) out.push_back(run_within_budget(a, budget, inst, ground));
  return out;
}

}  // namespace qjump
