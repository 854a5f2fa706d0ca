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

#include <doctest.h>

#include <cmath>

#include "qjump/errors.hpp"
#include "qjump/pipeline.hpp"
#include "qjump/rng.hpp"

using namespace qjump;

namespace {

IsingInstance desk(std::uint64_t seed) {
  return generate_lattice_instance({3, {16, 17, 18, 19, 20, 21, 22, 23}}, seed);
}

FilterConfig small_filter() {
  FilterConfig c;
  c.count = 12;
  c.keep_tts = 6;
  c.keep_cjump = 3;
  c.sa.sweeps = 5;
  c.sa_runs = 20;
  c.cjump.M = 2;
  c.cjump_iterations = 3;
  c.cjump_runs = 20;
  c.seed = 77;
  return c;
}

}  // namespace

TEST_CASE("filter ranking keeps the hardest instances") {
  const auto c = small_filter();
  const auto r = filter_instances(c);
  REQUIRE(r.records.size() == 12);
  REQUIRE(r.selected.size() == 3);
  double kept_min = 1e300, dropped_max = 0;
  for (const auto& rec : r.records) {
    const double t = rec.sa_tts.infinite ? 1e300 : rec.sa_tts.seconds;
    if (rec.stage1) {
      kept_min = std::min(kept_min, t);
    } else {
      dropped_max = std::max(dropped_max, t);
    }
  }
  CHECK(kept_min >= dropped_max);
  for (std::size_t k = 1; k < r.selected.size(); ++k) {
    CHECK(r.records[r.selected[k]].cjump_p_s >= r.records[r.selected[k - 1]].cjump_p_s);
  }
  const auto again = filter_instances(c);
  CHECK(again.selected == r.selected);
  for (std::size_t i = 0; i < r.records.size(); ++i) CHECK(again.records[i].sa_p_s == r.records[i].sa_p_s);

  auto threaded = c;
  threaded.jobs = 3;
  CHECK(filter_instances(threaded).selected == r.selected);

  auto all = c;
  all.keep_tts = all.count;
  const auto every = filter_instances(all);
  for (const auto& rec : every.records) CHECK(rec.stage1);

  auto bad = c;
  bad.keep_cjump = 7;
  CHECK_THROWS_AS(filter_instances(bad), InputError);
}

TEST_CASE("single-layer baseline equals a one-shot loop") {
  const auto inst = desk(5);
  const auto inf = InfParams::load_default();
  const auto g = brute_force_ground(inst);
  const auto cost = CostModel::for_size(16);
  InfParams with_one = inf;
  const auto base = qaoa_baseline(inst, with_one, g, 1, 30, 8, cost);
  SamplerConfig s;
  s.L = 1;
  s.Q = 1;
  s.alpha = 0.0;
  s.M = 1;
  const QjumpSolver solver(inst, inf, s);
  for (int r = 0; r < 30; ++r) {
    const auto trace = solver.run(1, derive_seed(8, r + 1));
    CHECK(trace.best == base.runs[r].best);
    CHECK(base.runs[r].hit == g.is_ground(trace.e_best));
  }
  CHECK(base.runs[0].model_ns == qaoa_run_ns(cost, 1));
}

TEST_CASE("hit flags agree with the exact ground state") {
  const auto inst = desk(9);
  const auto g = brute_force_ground(inst);
  SaBench short_sa;
  short_sa.sweeps = 20;
  const auto sa = sa_benchmark(inst, g, short_sa, 40, 3);
  for (const auto& r : sa.runs) CHECK(r.hit == (std::abs(energy(inst, r.best) - g.energy) <= 1e-9));
  CHECK(sa.p_s >= 0.0);
  CHECK(sa.p_s <= 1.0);
  const auto par = sa_benchmark(inst, g, short_sa, 40, 3, 4);
  for (std::size_t i = 0; i < sa.runs.size(); ++i) CHECK(par.runs[i].best == sa.runs[i].best);
}

TEST_CASE("budgeted runs") {
  const auto inst = desk(2);
  const auto g = brute_force_ground(inst);
  int calls = 0;
  BudgetAlgorithm fixed{"fixed", [&](int r) {
                          ++calls;
                          RunResult out;
                          out.run = r;
                          out.best = g.minimizers[0];
                          out.e_best = g.energy;
                          out.model_ns = 1000.0;
                          return out;
                        }};
  CHECK(run_within_budget(fixed, 1000.0, inst, g).runs.size() == 1);
  CHECK(run_within_budget(fixed, 999.0, inst, g).zero_runs);
  CHECK(run_within_budget(fixed, 5000.0, inst, g).runs.size() == 5);
  CHECK(run_within_budget(fixed, 10000.0, inst, g).runs.size() == 10);
  // Full-scale ratio: 40 ms over 0.78 ms per run.
  BudgetAlgorithm headline{"q", [&](int r) {
                             RunResult out;
                             out.run = r;
                             out.best = g.minimizers[0];
                             out.e_best = g.energy;
                             out.model_ns = 0.78e6;
                             return out;
                           }};
  CHECK(run_within_budget(headline, 40e6, inst, g).runs.size() == 51);
}

TEST_CASE("fixed budget comparison runs every algorithm") {
  const auto inst = desk(4);
  const auto g = brute_force_ground(inst);
  CompareConfig c;
  c.budget_ms = 0.5;
  c.M = 4;
  c.iterations = 3;
  const auto res = fixed_budget_comparison(inst, InfParams::load_default(), g, c, CostModel::for_size(16));
  REQUIRE(res.size() == 4);
  for (const auto& r : res) {
    CHECK(r.used_ns <= 0.5e6);
    CHECK_FALSE(r.zero_runs);
    CHECK(r.grid.total == static_cast<double>(r.runs.size()));
  }
}
