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

#include "qjump/analysis.hpp"

#include <algorithm>
#include <bit>
#include <complex>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

namespace {

constexpr double kPi = 3.14159265358979323846;

OccurrenceGrid bin(std::span<const double> energies, std::span<const int> hds,
                   std::span<const double> weights, double e_g, std::vector<Bitstring> minimizers,
                   GridOptions options) {
  if (!(options.box_e > 0.0) || options.box_hd < 1) throw InputError("grid: box sizes must be positive");
  OccurrenceGrid grid;
  grid.options = options;
  grid.e_g = e_g;
  grid.minimizers = std::move(minimizers);
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const int ie = energy_box(grid, energies[i]);
    if (ie < 0) throw std::logic_error("grid: negative 1 - R after E_g update");
    grid.cells[{ie, hd_box(grid, hds[i])}] += weights[i];
    grid.total += weights[i];
  }
  return grid;
}

void require_negative(const GroundState& ground) {
  if (!(ground.energy < 0.0)) {
    throw InputError("occurrence grid needs E_g < 0 (got " + std::to_string(ground.energy) + ")");
  }
  if (ground.minimizers.empty()) throw InputError("occurrence grid needs at least one minimizer");
}

double sample_stddev(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

void OccurrenceGrid::normalize() {
  if (total <= 0.0) return;
  for (auto& [key, mass] : cells) mass /= total;
  total = 1.0;
}

double OccurrenceGrid::marginal_energy(int box) const {
  double m = 0.0;
  for (const auto& [key, mass] : cells) {
    if (key.first == box) m += mass;
  }
  return m;
}

double OccurrenceGrid::marginal_hd(int box) const {
  double m = 0.0;
  for (const auto& [key, mass] : cells) {
    if (key.second == box) m += mass;
  }
  return m;
}

int hd_box(const OccurrenceGrid& grid, int hd) { return hd / grid.options.box_hd; }

int energy_box(const OccurrenceGrid& grid, double e) {
  const double one_minus_r = 1.0 - e / grid.e_g;
  return static_cast<int>(std::floor(one_minus_r / grid.options.box_e + 1e-9));
}

OccurrenceGrid occurrence_grid(std::span<const Bitstring> samples, const IsingInstance& inst,
                               const GroundState& ground, GridOptions options) {
  require_negative(ground);
  std::vector<double> energies;
  energies.reserve(samples.size());
  for (const auto& s : samples) energies.push_back(energy(inst, s));
  GroundState g = ground;
  bool updated = false;
  if (!energies.empty()) {
    const double low = *std::min_element(energies.begin(), energies.end());
    if (low < g.energy - 1e-9) {
      g.energy = low;
      g.minimizers.clear();
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (energies[i] <= low + 1e-9 &&
            std::find(g.minimizers.begin(), g.minimizers.end(), samples[i]) == g.minimizers.end()) {
          g.minimizers.push_back(samples[i]);
        }
      }
      updated = true;
    }
  }
  std::vector<int> hds;
  hds.reserve(samples.size());
  for (const auto& s : samples) hds.push_back(g.distance(s));
  const std::vector<double> weights(samples.size(), 1.0);
  auto grid = bin(energies, hds, weights, g.energy, g.minimizers, options);
  grid.e_g_updated = updated;
  return grid;
}

OccurrenceGrid occurrence_grid(std::span<const double> probs, std::span<const double> energies,
                               const GroundState& ground, GridOptions options) {
  require_negative(ground);
  if (probs.size() != energies.size() || !std::has_single_bit(probs.size())) {
    throw InputError("grid: distribution and energy table must cover all 2^n states");
  }
  const int n = std::countr_zero(probs.size());
  GroundState g = ground;
  bool updated = false;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0 && energies[i] < g.energy - 1e-9) {
      g.energy = energies[i];
      updated = true;
    }
  }
  if (updated) {
    g.minimizers.clear();
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (energies[i] <= g.energy + 1e-9) g.minimizers.push_back(Bitstring::from_index(i, n));
    }
  }
  std::vector<std::uint64_t> mins;
  for (const auto& m : g.minimizers) mins.push_back(m.to_index());
  std::vector<int> hds(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    int best = n;
    for (auto m : mins) best = std::min(best, std::popcount(i ^ m));
    hds[i] = best;
  }
  auto grid = bin(energies, hds, probs, g.energy, g.minimizers, options);
  grid.e_g_updated = updated;
  return grid;
}

std::vector<double> square_region_sums(const OccurrenceGrid& grid, int max_index,
                                       RegionOptions options) {
  const double aspect =
      options.aspect > 0.0 ? options.aspect : grid.options.box_e / grid.options.box_hd;
  std::vector<double> sums(std::max(0, max_index + 1), 0.0);
  for (int d = 0; d <= max_index; ++d) {
    double mass = 0.0;
    for (const auto& [key, m] : grid.cells) {
      const bool in_hd = key.second * grid.options.box_hd <= d;
      const bool in_e =
          options.full_energy_range || key.first * grid.options.box_e <= d * aspect + 1e-12;
      if (in_hd && in_e) mass += m;
    }
    sums[d] = grid.total > 0.0 ? mass / grid.total : 0.0;
  }
  return sums;
}

int effective_jump_index(int hd_circ) { return std::max(0, hd_circ - 1); }

double gaussian_prob(const GaussianModel& m, double gamma) {
  return std::exp(-gamma * gamma * m.sigma_e * m.sigma_e - kPi * gamma * m.cov);
}

double gamma_star(const GaussianModel& m) {
  if (!(m.sigma_e > 0.0)) throw InputError("gaussian model needs sigma_E > 0");
  return -kPi * m.cov / (2.0 * m.sigma_e * m.sigma_e);
}

double gaussian_peak(const GaussianModel& m) {
  if (!(m.sigma_e > 0.0)) throw InputError("gaussian model needs sigma_E > 0");
  return std::exp(kPi * kPi * m.cov * m.cov / (4.0 * m.sigma_e * m.sigma_e));
}

GaussianModel fit_gaussian_model(const IsingInstance& inst, const Bitstring& s_x, double beta) {
  const auto energies = energy_table(inst, 20);
  const std::uint64_t x = s_x.to_index();
  const double t = std::abs(std::tan(beta));
  std::vector<double> tpow(inst.size() + 1, 1.0);
  for (int d = 1; d <= inst.size(); ++d) tpow[d] = tpow[d - 1] * t;
  double mean_e = 0.0;
  for (double e : energies) mean_e += e;
  mean_e /= static_cast<double>(energies.size());
  double var_e = 0.0;
  double w_sum = 0.0, w_e = 0.0, w_d = 0.0;
  for (std::uint64_t y = 0; y < energies.size(); ++y) {
    var_e += (energies[y] - mean_e) * (energies[y] - mean_e);
    const int d = std::popcount(x ^ y);
    w_sum += tpow[d];
    w_e += tpow[d] * energies[y];
    w_d += tpow[d] * d;
  }
  var_e /= static_cast<double>(energies.size());
  const double me = w_e / w_sum;
  const double md = w_d / w_sum;
  double cov = 0.0;
  for (std::uint64_t y = 0; y < energies.size(); ++y) {
    const int d = std::popcount(x ^ y);
    cov += tpow[d] * (energies[y] - me) * (d - md);
  }
  return {std::sqrt(var_e), cov / w_sum};
}

double conditional_log_weight(const Bitstring& y, const Bitstring& s_x, const Bitstring& s_circ,
                              double theta, double beta) {
  const double lt = std::log(std::tan(theta / 2.0));
  const double r = std::abs(std::sin(theta) * std::sin(beta) /
                            std::complex<double>(std::cos(beta), std::sin(beta) * std::cos(theta)));
  const double lr = std::log(r);
  const int d_ref = hamming(s_circ, y);
  const int d_x = hamming(s_x, y);
  return (d_ref == 0 ? 0.0 : d_ref * lt) + (d_x == 0 ? 0.0 : d_x * lr);
}

std::vector<Bitstring> conditional_mc_sample(const IsingInstance& inst, const Bitstring& s_x,
                                             const Bitstring& s_circ, double theta, double beta,
                                             int M, std::uint64_t seed, CondMcOptions options) {
  const int n = inst.size();
  if (static_cast<int>(s_x.size()) != n || static_cast<int>(s_circ.size()) != n) {
    throw InputError("condmc: state sizes do not match n=" + std::to_string(n));
  }
  if (!(theta >= 0.0 && theta < kPi)) throw InputError("condmc: theta outside [0, pi)");
  if (M < 0 || options.thin_sweeps < 1 || options.burn_in_sweeps < 0) {
    throw InputError("condmc: invalid sample count or sweep settings");
  }
  const double t = std::tan(theta / 2.0);
  const double r = std::abs(std::sin(theta) * std::sin(beta) /
                            std::complex<double>(std::cos(beta), std::sin(beta) * std::cos(theta)));
  if (t == 0.0 && r == 0.0 && s_x != s_circ) {
    throw InputError("condmc: weight has empty support (theta = 0, r = 0, s_x != s_circ)");
  }
  const double lt = std::log(t);
  const double lr = std::log(r);

  Bitstring y = t == 0.0 ? s_circ : s_x;
  Rng rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto sweep = [&] {
    for (int j = 0; j < n; ++j) {
      // Flipping j moves y one step away from (or back to) each reference.
      const double d_ref = y[j] == s_circ[j] ? 1.0 : -1.0;
      const double d_x = y[j] == s_x[j] ? 1.0 : -1.0;
      const double dlog = d_ref * lt + d_x * lr;
      const double u = uniform(rng);
      if (dlog >= 0.0 || u < std::exp(dlog)) y.flip(j);
    }
  };
  for (int b = 0; b < options.burn_in_sweeps; ++b) sweep();
  std::vector<Bitstring> out;
  out.reserve(M);
  for (int m = 0; m < M; ++m) {
    for (int k = 0; k < options.thin_sweeps; ++k) sweep();
    out.push_back(y);
  }
  return out;
}

std::vector<LocalCovarianceRow> local_covariance(const IsingInstance& inst,
                                                 std::span<const Bitstring> samples,
                                                 const Bitstring& s_x,
                                                 LocalCovarianceOptions options) {
  const int n = inst.size();
  if (options.radius < 0) throw InputError("local covariance radius must be >= 0");
  double ball = 0.0;
  double binom = 1.0;
  std::vector<double> shell(options.radius + 1, 0.0);
  for (int k = 0; k <= options.radius && k <= n; ++k) {
    shell[k] = binom;
    ball += binom;
    binom = binom * (n - k) / (k + 1);
  }
  const bool enumerate = ball <= static_cast<double>(options.max_ball);
  Rng rng(options.seed);
  std::discrete_distribution<int> pick_radius(shell.begin(), shell.end());

  std::map<int, std::vector<double>> by_d;
  std::vector<double> es;
  std::vector<double> ds;
  std::vector<int> order(n);
  for (const auto& y : samples) {
    es.clear();
    ds.clear();
    Bitstring z = y;
    DeltaTable table = delta_table(inst, z);
    const int d0 = hamming(s_x, y);
    if (enumerate) {
      int d = d0;
      auto visit = [&](auto&& self, int start, int depth) -> void {
        es.push_back(table.energy);
        ds.push_back(d);
        if (depth == options.radius) return;
        for (int j = start; j < n; ++j) {
          const int step = z[j] == s_x[j] ? 1 : -1;
          apply_flip(inst, z, table, j);
          d += step;
          self(self, j + 1, depth + 1);
          apply_flip(inst, z, table, j);
          d -= step;
        }
      };
      visit(visit, 0, 0);
    } else {
      std::iota(order.begin(), order.end(), 0);
      for (std::size_t p = 0; p < options.ball_samples; ++p) {
        const int k = pick_radius(rng);
        Bitstring w = y;
        DeltaTable tw = table;
        int d = d0;
        for (int i = 0; i < k; ++i) {
          std::uniform_int_distribution<int> pos(i, n - 1);
          std::swap(order[i], order[pos(rng)]);
          const int j = order[i];
          d += w[j] == s_x[j] ? 1 : -1;
          apply_flip(inst, w, tw, j);
        }
        es.push_back(tw.energy);
        ds.push_back(d);
      }
    }
    const double k = static_cast<double>(es.size());
    const double me = std::accumulate(es.begin(), es.end(), 0.0) / k;
    const double md = std::accumulate(ds.begin(), ds.end(), 0.0) / k;
    double cov = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) cov += (es[i] - me) * (ds[i] - md);
    by_d[d0].push_back(cov / k);
  }
  std::vector<LocalCovarianceRow> rows;
  for (const auto& [d, values] : by_d) {
    LocalCovarianceRow row;
    row.d = d;
    row.count = values.size();
    row.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    row.stddev = sample_stddev(values, row.mean);
    row.stderr_ = row.stddev / std::sqrt(static_cast<double>(values.size()));
    rows.push_back(row);
  }
  return rows;
}

FlipRatioStats flip_ratio_stats(std::span<const Bitstring> samples, const Bitstring& s_circ) {
  if (samples.empty()) throw InputError("flip ratio needs at least one sample");
  const int n = static_cast<int>(s_circ.size());
  FlipRatioStats stats;
  stats.histogram.assign(n + 1, 0);
  std::vector<double> ratios;
  ratios.reserve(samples.size());
  for (const auto& s : samples) {
    const int d = hamming(s, s_circ);
    ++stats.histogram[d];
    ratios.push_back(static_cast<double>(d) / n);
  }
  stats.mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(ratios.size());
  stats.stddev = sample_stddev(ratios, stats.mean);
  return stats;
}

std::vector<double> after_local_search(std::span<const double> probs,
                                       std::span<const std::uint32_t> basins) {
  if (probs.size() != basins.size()) throw InputError("distribution and basin map differ in size");
  std::vector<double> out(probs.size(), 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i) out[basins[i]] += probs[i];
  return out;
}

double exact_flip_ratio(std::span<const double> probs, const Bitstring& s_circ) {
  const int n = static_cast<int>(s_circ.size());
  if (probs.size() != (std::size_t{1} << n)) throw InputError("distribution does not cover 2^n states");
  const std::uint64_t ref = s_circ.to_index();
  double mean = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) mean += probs[i] * std::popcount(i ^ ref);
  return mean / n;
}

}  // namespace qjump
