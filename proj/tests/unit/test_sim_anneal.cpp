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
#include <random>

#include "oracles.hpp"
#include "qjump/errors.hpp"
#include "qjump/local_search.hpp"
#include "qjump/sim_anneal.hpp"

using namespace qjump;

namespace {

IsingInstance desk(std::uint64_t seed) {
  return generate_lattice_instance({3, {16, 17, 18, 19, 20, 21, 22, 23}}, seed);
}

}  // namespace

TEST_CASE("initial temperature from the mean flip energy") {
  // One spin with |h| = 1/2: every |dE| is 1.
  const IsingInstance unit(1, {}, {0.5});
  const auto t = init_temperatures(unit, 3);
  CHECK(t.t0 == doctest::Approx(9.4912).epsilon(1e-4));
  CHECK(t.t_end == doctest::Approx(0.094912).epsilon(1e-4));
  const IsingInstance twice(1, {}, {1.0});
  CHECK(init_temperatures(twice, 3).t0 == doctest::Approx(2.0 * t.t0).epsilon(1e-14));

  const auto inst = desk(1);
  CHECK(init_temperatures(inst, 8).t0 == init_temperatures(inst, 8).t0);
  CHECK_THROWS_AS(init_temperatures(IsingInstance(3, {}, {0, 0, 0}), 1), DegenerateInstanceError);
}

TEST_CASE("threshold rule equals the Metropolis rule") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> de(-5.0, 5.0), temp(0.01, 10.0), u01(0.0, 1.0);
  int disagreements = 0;
  for (int k = 0; k < 100000; ++k) {
    const double d = de(rng), T = temp(rng), u = 1.0 - u01(rng);
    const bool threshold = d < -T * std::log(u);
    const bool metropolis = u < std::exp(-d / T);
    disagreements += threshold != metropolis;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("threshold table is non-negative") {
  SaConfig c{50, 3.0, 0.03, Schedule::geometric, 1};
  const RTable table(16, c, 5);
  for (int t = 0; t < 50; ++t) {
    for (double r : table.row(t)) CHECK(r >= 0.0);
  }
  CHECK(temperature_at(c, 0) == 3.0);
  CHECK(temperature_at(c, 49) == doctest::Approx(0.03));
  c.schedule = Schedule::linear;
  CHECK(temperature_at(c, 49) == doctest::Approx(0.03));
  CHECK(temperature_at(c, 24) > temperature_at(c, 25));

  // Inverse temperature moves in equal steps.
  c.schedule = Schedule::linear_beta;
  CHECK(temperature_at(c, 0) == doctest::Approx(3.0));
  CHECK(temperature_at(c, 49) == doctest::Approx(0.03));
  const double step = 1.0 / temperature_at(c, 1) - 1.0 / temperature_at(c, 0);
  for (int t = 1; t < 49; ++t) {
    CHECK(1.0 / temperature_at(c, t + 1) - 1.0 / temperature_at(c, t) == doctest::Approx(step));
  }

  for (Schedule s : {Schedule::geometric, Schedule::linear, Schedule::linear_beta}) {
    CHECK(parse_schedule(schedule_name(s)) == s);
  }
  CHECK_THROWS_AS(parse_schedule("cosine"), InputError);
}

TEST_CASE("zero temperature limit ends in a local minimum") {
  const auto inst = desk(3);
  const SaConfig c{30, 1e-12, 1e-13, Schedule::geometric, 9};
  const auto r = run_sa(inst, c);
  const auto d = delta_table(inst, r.best);
  for (double v : d.deltas) CHECK(v >= 0.0);
}

TEST_CASE("downhill moves are always accepted") {
  // Single spin pointing against its field: dE = -2 < r for any r >= 0.
  const IsingInstance one(1, {}, {1.0});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = run_sa(one, SaConfig{1, 5.0, 1.0, Schedule::geometric, seed});
    CHECK(r.best.to_string() == "0");
  }
}

TEST_CASE("determinism and best energy") {
  const auto inst = desk(5);
  const auto t = init_temperatures(inst, 1);
  const SaConfig c{200, t.t0, t.t_end, Schedule::geometric, 17};
  const auto a = run_sa(inst, c);
  const auto b = run_sa(inst, c);
  CHECK(a.best == b.best);
  CHECK(a.e_best == b.e_best);
  CHECK(a.e_best == doctest::Approx(oracle::energy(inst, a.best)));
  CHECK(a.stats.attempted == 200u * 16u);
  CHECK(a.stats.acceptance() > 0.0);
  CHECK(a.stats.acceptance() < 1.0);
}

TEST_CASE("generic neighbour path matches expectations on dense graphs") {
  const auto inst = oracle::random_instance(14, 0.6, 3);
  REQUIRE(inst.max_degree() > 4);
  const auto g = brute_force_ground(inst);
  const auto t = init_temperatures(inst, 1);
  int hits = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto r = run_sa(inst, SaConfig{1000, t.t0, t.t_end, Schedule::geometric, s});
    CHECK(r.e_best == doctest::Approx(oracle::energy(inst, r.best)));
    hits += g.is_ground(r.e_best);
  }
  CHECK(hits >= 15);
}

TEST_CASE("reused threshold tables keep the hit rate") {
  const auto inst = desk(11);
  const auto g = brute_force_ground(inst);
  const auto t = init_temperatures(inst, 2);
  SaConfig c{20, t.t0, t.t_end, Schedule::geometric, 0};
  const RTable shared(16, c, 12345);
  int fresh = 0, reused = 0;
  const int runs = 1000;
  for (int r = 0; r < runs; ++r) {
    c.seed = 1000 + r;
    fresh += g.is_ground(run_sa(inst, c).e_best);
    reused += g.is_ground(run_sa(inst, c, shared).e_best);
  }
  const double p1 = static_cast<double>(fresh) / runs;
  const double p2 = static_cast<double>(reused) / runs;
  const double sigma = std::sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / runs);
  MESSAGE("fresh " << p1 << " reused " << p2);
  CHECK(std::abs(p1 - p2) <= 2.0 * std::max(sigma, 1e-3) + 1e-12);
}

TEST_CASE("time model") {
  CHECK(sa_time_model(104, 700, 1.0) == doctest::Approx(1310400.0));
  CHECK(sa_time_model(104, 700, 0.0) == doctest::Approx(58240.0));
  CHECK_THROWS_AS(sa_time_model(104, 700, 1.5), InputError);
}
