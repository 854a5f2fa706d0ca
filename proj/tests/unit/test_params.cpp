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
#include "qjump/params.hpp"
#include "qjump/sampler.hpp"

using namespace qjump;

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("rescale factor") {
  CHECK(rescale_factor(IsingInstance(3, {{0, 1, 1.0}, {1, 2, -1.0}}, {0, 0, 0})) == doctest::Approx(1.0));
  CHECK(rescale_factor(IsingInstance(2, {}, {2.0, -2.0})) == doctest::Approx(2.0));
  CHECK_THROWS_AS(rescale_factor(IsingInstance(2, {}, {0.0, 0.0})), DegenerateInstanceError);

  const auto inst = generate_lattice_instance({5, {}}, 3);
  double sj = 0, sh = 0;
  int cj = 0, ch = 0;
  for (const auto& e : inst.edges()) {
    if (e.coupling != 0.0) {
      sj += e.coupling * e.coupling;
      ++cj;
    }
  }
  for (double h : inst.fields()) {
    if (h != 0.0) {
      sh += h * h;
      ++ch;
    }
  }
  CHECK(rescale_factor(inst) == doctest::Approx(std::sqrt(sj / cj + sh / ch)).epsilon(1e-14));
}

TEST_CASE("average degree") {
  CHECK(average_degree(generate_regular_instance(12, 4, 1)) == doctest::Approx(4.0));
  CHECK(average_degree(IsingInstance(2, {{0, 1, 1.0}}, {0, 0})) == doctest::Approx(1.0));
  CHECK(average_degree(IsingInstance(3, {}, {1, 0, 0})) == 0.0);
}

TEST_CASE("data file loads with the expected depths") {
  const auto inf = InfParams::load_default();
  for (int q : {1, 2, 3, 4, 20}) {
    REQUIRE(inf.has(q));
    CHECK(inf.layers(q).gammas.size() == static_cast<std::size_t>(q));
  }
  CHECK(inf.layers(1).betas[0] == doctest::Approx(kPi / 8));
  CHECK_THROWS_AS(inf.layers(7), InputError);
  try {
    inf.layers(7);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("1, 2, 3, 4, 5, 6, 20") != std::string::npos);
  }
  CHECK_THROWS_AS(InfParams::parse(R"({"depths":{"2":{"gammas":[1],"betas":[1,2]}}})"), ParseError);
}

TEST_CASE("schedule truncation and angle factor") {
  InfParams ramp;
  ramp.ramp_fallback = true;
  const auto inst = generate_regular_instance(12, 4, 9);
  const auto full = build_schedule(ramp, inst, 20, 20);
  const auto cut = build_schedule(ramp, inst, 2, 20);
  CHECK(cut.gammas.size() == 2);
  CHECK(cut.gammas[0] == full.gammas[0]);
  CHECK(cut.gammas[1] == full.gammas[1]);
  CHECK(cut.betas[1] == full.betas[1]);
  for (int L = 1; L <= 20; ++L) {
    const auto p = build_schedule(ramp, inst, L, 20);
    for (int l = 0; l < L; ++l) CHECK(p.gammas[l] == full.gammas[l]);
  }
  const auto layers = InfParams::linear_ramp(20);
  const double factor = std::atan(1.0 / std::sqrt(3.0));
  CHECK(full.gammas[4] == doctest::Approx(-factor * layers.gammas[4] / full.A));
  CHECK(full.betas[4] == layers.betas[4]);

  // Average degree 2: a ring.
  std::vector<Edge> ring;
  for (int j = 0; j < 6; ++j) ring.push_back({std::min(j, (j + 1) % 6), std::max(j, (j + 1) % 6), 1.0});
  const IsingInstance cyc(6, ring, std::vector<double>(6, 0.0));
  const auto pr = build_schedule(ramp, cyc, 1, 1);
  CHECK(pr.gammas[0] == doctest::Approx(-(kPi / 4) * InfParams::linear_ramp(1).gammas[0] / pr.A));

  CHECK_THROWS_AS(build_schedule(ramp, IsingInstance(2, {{0, 1, 1.0}}, {0, 0}), 1, 1),
                  DegenerateInstanceError);
  CHECK_THROWS_AS(build_schedule(ramp, inst, 3, 2), InputError);
}

TEST_CASE("scaling the instance leaves every cost phase unchanged") {
  InfParams ramp;
  ramp.ramp_fallback = true;
  const auto inst = generate_regular_instance(10, 3, 2);
  const auto big = inst.scaled(3.5);
  const auto p1 = build_schedule(ramp, inst, 4, 4);
  const auto p2 = build_schedule(ramp, big, 4, 4);
  CHECK(p2.A == doctest::Approx(3.5 * p1.A));
  std::mt19937_64 rng(1);
  for (int l = 0; l < 4; ++l) {
    CHECK(p2.betas[l] == p1.betas[l]);
    for (int k = 0; k < 20; ++k) {
      const auto s = oracle::random_bits(10, rng);
      CHECK(p2.gammas[l] * energy(big, s) == doctest::Approx(p1.gammas[l] * energy(inst, s)).epsilon(1e-12));
    }
  }
  const auto a = run_circuit(inst, Bitstring(10), 0.0, p1);
  const auto b = run_circuit(big, Bitstring(10), 0.0, p2);
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    CHECK(std::abs(a.amplitudes()[i] - b.amplitudes()[i]) < 1e-9);
  }
}
