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
#include <map>
#include <random>

#include "oracles.hpp"
#include "qjump/analysis.hpp"
#include "qjump/errors.hpp"
#include "qjump/local_search.hpp"
#include "qjump/params.hpp"
#include "qjump/sampler.hpp"

using namespace qjump;

namespace {

constexpr double kPi = 3.14159265358979323846;

IsingInstance desk(std::uint64_t seed) {
  return generate_lattice_instance({3, {16, 17, 18, 19, 20, 21, 22, 23}}, seed);
}

}  // namespace

TEST_CASE("occurrence grid basics") {
  const auto inst = desk(2);
  const auto g = brute_force_ground(inst);
  const std::vector<Bitstring> one{g.minimizers[0]};
  const auto grid = occurrence_grid(one, inst, g);
  CHECK(grid.cells.size() == 1);
  CHECK(grid.cells.at({0, 0}) == 1.0);

  std::mt19937_64 rng(5);
  std::vector<Bitstring> many;
  for (int k = 0; k < 300; ++k) many.push_back(oracle::random_bits(16, rng));
  const auto big = occurrence_grid(many, inst, g);
  CHECK(big.total == 300.0);
  double sum = 0;
  for (const auto& [key, c] : big.cells) {
    CHECK(key.first >= 0);
    sum += c;
  }
  CHECK(sum == 300.0);

  GroundState positive = g;
  positive.energy = 1.0;
  CHECK_THROWS_AS(occurrence_grid(one, inst, positive), InputError);
}

TEST_CASE("grid marginals match an independent histogram") {
  const auto inst = desk(4);
  const auto g = brute_force_ground(inst);
  const auto sched = build_schedule(InfParams::load_default(), inst, 2, 20);
  const auto samples = sample(run_circuit(inst, Bitstring(16), 0.0, sched), 2000, 9);
  const auto grid = occurrence_grid(samples, inst, g);
  std::map<int, double> energy_hist, hd_hist;
  for (const auto& s : samples) {
    const double ratio = oracle::energy(inst, s) / g.energy;
    energy_hist[static_cast<int>(std::floor((1.0 - ratio) / 0.01 + 1e-9))] += 1;
    int hd = 16;
    for (const auto& m : g.minimizers) hd = std::min(hd, hamming(s, m));
    hd_hist[hd / 2] += 1;
  }
  for (const auto& [box, c] : energy_hist) CHECK(grid.marginal_energy(box) == c);
  for (const auto& [box, c] : hd_hist) CHECK(grid.marginal_hd(box) == c);
}

TEST_CASE("samples below the supplied ground energy trigger a rebin") {
  const auto inst = desk(6);
  const auto g = brute_force_ground(inst);
  GroundState stale;
  stale.energy = g.energy + 3.0;
  stale.minimizers.push_back(Bitstring(16));
  const std::vector<Bitstring> s{g.minimizers[0]};
  const auto grid = occurrence_grid(s, inst, stale);
  CHECK(grid.e_g_updated);
  CHECK(grid.e_g == doctest::Approx(g.energy));
  CHECK(grid.cells.at({0, 0}) == 1.0);
}

TEST_CASE("square regions") {
  const auto inst = desk(3);
  const auto g = brute_force_ground(inst);
  const auto e = energy_table(inst);
  std::vector<double> p(e.size(), 1.0 / e.size());
  auto grid = occurrence_grid(p, e, g);
  grid.normalize();
  const auto full = square_region_sums(grid, 16, {true, 0.0});
  CHECK(full[16] == doctest::Approx(1.0));
  const auto sq = square_region_sums(grid, 16);
  for (int d = 1; d <= 16; ++d) {
    CHECK(sq[d] >= sq[d - 1]);
    CHECK(full[d] >= full[d - 1]);
    CHECK(sq[d] <= full[d] + 1e-15);
  }
  CHECK(effective_jump_index(6) == 5);
}

TEST_CASE("Gaussian model") {
  CHECK(gamma_star({1.0, 0.0}) == 0.0);
  CHECK(gamma_star({1.0, -1.0}) == doctest::Approx(kPi / 2));
  const GaussianModel m{1.3, -0.8};
  const double g = oracle::golden_max([&](double x) { return gaussian_prob(m, x); }, -10, 10);
  CHECK(std::abs(g - gamma_star(m)) < 1e-6);
  CHECK(gaussian_prob(m, gamma_star(m)) == doctest::Approx(gaussian_peak(m)));
  const auto fit = fit_gaussian_model(desk(1), Bitstring(16), 0.3);
  CHECK(fit.sigma_e > 0.0);
}

TEST_CASE("conditional weights") {
  const auto inst = desk(1);
  const auto x = Bitstring::parse("0110010110100101");
  const auto ref = Bitstring::parse("0000111100001111");
  const auto y1 = Bitstring::parse("1110010110100101");
  const auto y2 = Bitstring::parse("0111010110100101");
  // theta = pi/2: only d(x, y) matters.
  CHECK(conditional_log_weight(y1, x, ref, kPi / 2, 0.4) ==
        doctest::Approx(conditional_log_weight(y2, x, ref, kPi / 2, 0.4)));
  CHECK_THROWS_AS(conditional_mc_sample(inst, x, ref, 0.0, 0.0, 10, 1), InputError);
  CHECK_NOTHROW(conditional_mc_sample(inst, ref, ref, 0.0, 0.0, 10, 1));
}

TEST_CASE("Metropolis chain reproduces exact weights at small n") {
  const int n = 8;
  const auto inst = oracle::random_instance(n, 0.4, 3);
  std::mt19937_64 rng(2);
  const auto x = oracle::random_bits(n, rng);
  const auto ref = oracle::random_bits(n, rng);
  const double theta = reference_theta(0.5), beta = 0.45;
  std::vector<double> exact(1u << n);
  double z = 0;
  for (std::uint32_t i = 0; i < exact.size(); ++i) {
    z += exact[i] = std::exp(conditional_log_weight(Bitstring::from_index(i, n), x, ref, theta, beta));
  }
  const int M = 200000;
  const auto draws = conditional_mc_sample(inst, x, ref, theta, beta, M, 5);
  std::vector<double> freq(exact.size(), 0.0);
  for (const auto& s : draws) freq[s.to_index()] += 1.0 / M;
  double tv = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) tv += 0.5 * std::abs(freq[i] - exact[i] / z);
  MESSAGE("tv " << tv);
  CHECK(tv < 0.02);
}

TEST_CASE("local covariance") {
  const IsingInstance flat(12, {}, std::vector<double>(12, 0.0));
  std::mt19937_64 rng(1);
  const auto x = oracle::random_bits(12, rng);
  std::vector<Bitstring> s;
  for (int k = 0; k < 30; ++k) s.push_back(oracle::random_bits(12, rng));
  for (const auto& row : local_covariance(flat, s, x)) CHECK(row.mean == 0.0);

  // One sample, radius 1: n + 1 points checked by hand.
  const auto inst = oracle::random_instance(10, 0.4, 8);
  const auto y = oracle::random_bits(10, rng);
  const auto x2 = oracle::random_bits(10, rng);
  std::vector<double> es{oracle::energy(inst, y)};
  std::vector<double> ds{static_cast<double>(hamming(x2, y))};
  for (int j = 0; j < 10; ++j) {
    auto z = y;
    z.flip(j);
    es.push_back(oracle::energy(inst, z));
    ds.push_back(hamming(x2, z));
  }
  double me = 0, md = 0;
  for (std::size_t i = 0; i < es.size(); ++i) {
    me += es[i] / es.size();
    md += ds[i] / ds.size();
  }
  double cov = 0;
  for (std::size_t i = 0; i < es.size(); ++i) cov += (es[i] - me) * (ds[i] - md) / es.size();
  LocalCovarianceOptions o;
  o.radius = 1;
  const std::vector<Bitstring> one{y};
  const auto rows = local_covariance(inst, one, x2, o);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].d == hamming(x2, y));
  CHECK(rows[0].mean == doctest::Approx(cov).epsilon(1e-9));

  // Sampled balls approach the enumerated value.
  o.radius = 3;
  const auto enumerated = local_covariance(inst, one, x2, o);
  o.max_ball = 10;
  o.ball_samples = 20000;
  const auto sampled = local_covariance(inst, one, x2, o);
  CHECK(sampled[0].mean == doctest::Approx(enumerated[0].mean).epsilon(0.1));
}

TEST_CASE("flip ratio statistics") {
  const auto ref = Bitstring::parse("0101010101");
  const std::vector<Bitstring> same(10, ref);
  CHECK(flip_ratio_stats(same, ref).mean == 0.0);
  const auto c = classical_random_sample(Bitstring(50), 0.3, 5000, 2);
  const auto st = flip_ratio_stats(c, Bitstring(50));
  CHECK(std::abs(st.mean - 0.3) < 3 * std::sqrt(0.3 * 0.7 / (50.0 * 5000)));
  const auto u = sample(encode(Bitstring(12), 0.0), 5000, 4);
  CHECK(std::abs(flip_ratio_stats(u, Bitstring(12)).mean - 0.5) < 3 * std::sqrt(0.25 / (12.0 * 5000)));
}

TEST_CASE("exact classical distribution and local-search pushforward") {
  const auto ref = Bitstring::parse("0110100");
  const auto p = classical_flip_distribution(ref, 0.2);
  double total = 0;
  for (double v : p) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p[ref.to_index()] == doctest::Approx(std::pow(0.8, 7)));
  CHECK(exact_flip_ratio(p, ref) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(classical_flip_distribution(ref, 1.5), InputError);

  const auto inst = oracle::random_instance(7, 0.5, 8, 2.0, 1.0);
  const auto basins = basin_map(inst);
  const auto moved = after_local_search(p, basins);
  double moved_total = 0;
  for (std::size_t i = 0; i < moved.size(); ++i) {
    moved_total += moved[i];
    if (moved[i] > 0) CHECK(basins[i] == i);
  }
  CHECK(moved_total == doctest::Approx(1.0).epsilon(1e-12));
  const auto ground = brute_force_ground(inst);
  double direct = 0;
  for (std::size_t i = 0; i < moved.size(); ++i) {
    if (ground.is_ground(energy(inst, Bitstring::from_index(i, 7)))) direct += moved[i];
  }
  CHECK(direct == doctest::Approx(global_basin_probability(inst, p, ground)).epsilon(1e-12));
}
