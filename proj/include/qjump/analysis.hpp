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
#include <span>
#include <utility>
#include <vector>

#include "qjump/ising.hpp"

namespace qjump {

struct GridOptions {
  double box_e = 0.01;  // width in 1 - R
  int box_hd = 2;       // width in Hamming distance
};

/// Mass (or counts) binned by (1 - E/E_g, distance to the nearest minimizer).
struct OccurrenceGrid {
  GridOptions options;
  double e_g = 0.0;
  std::vector<Bitstring> minimizers;
  std::map<std::pair<int, int>, double> cells;  // (energy box, HD box) -> mass
  double total = 0.0;
  /// Set when a sample undercut the supplied E_g and the grid was rebuilt.
  bool e_g_updated = false;

  void normalize();
  double marginal_energy(int box) const;
  double marginal_hd(int box) const;
};

/// Samples with equal weight. Throws InputError when E_g >= 0.
OccurrenceGrid occurrence_grid(std::span<const Bitstring> samples, const IsingInstance& inst,
                               const GroundState& ground, GridOptions options = {});
/// Exact distribution over all basis states of an n <= 26 instance.
OccurrenceGrid occurrence_grid(std::span<const double> probs, std::span<const double> energies,
                               const GroundState& ground, GridOptions options = {});

/// HD box of a distance and energy box of an energy on the grid axes.
int hd_box(const OccurrenceGrid& grid, int hd);
int energy_box(const OccurrenceGrid& grid, double e);

struct RegionOptions {
  bool full_energy_range = false;
  /// Energy-axis extent per unit of region index; 0 selects box_e / box_hd.
  double aspect = 0.0;
};

/// Region d holds boxes with hd_box * box_hd <= d and energy_box * box_e <= d * aspect.
/// Returns masses for d = 0..max_index divided by the grid total.
std::vector<double> square_region_sums(const OccurrenceGrid& grid, int max_index,
                                       RegionOptions options = {});

/// Region index whose square holds states strictly closer to the ground state than s_circ.
int effective_jump_index(int hd_circ);

struct GaussianModel {
  double sigma_e = 1.0;
  double cov = 0.0;
};

/// exp(-gamma^2 sigma^2 - pi gamma Cov)
double gaussian_prob(const GaussianModel& model, double gamma);
double gamma_star(const GaussianModel& model);
double gaussian_peak(const GaussianModel& model);
/// sigma_E over all y and Cov(E_y, d_xy) under |tan beta|^d_xy weights; n <= 20.
GaussianModel fit_gaussian_model(const IsingInstance& inst, const Bitstring& s_x, double beta);

struct CondMcOptions {
  int burn_in_sweeps = 20;
  int thin_sweeps = 1;
};

/// log weight of y under p(y | s_x, s_circ): d(s_circ,y) log tan(theta/2) + d(x,y) log r,
/// r = |sin theta sin beta / (cos beta + i sin beta cos theta)|.
double conditional_log_weight(const Bitstring& y, const Bitstring& s_x, const Bitstring& s_circ,
                              double theta, double beta);

/// Single-bit Metropolis in systematic sweeps. Throws InputError on empty support.
std::vector<Bitstring> conditional_mc_sample(const IsingInstance& inst, const Bitstring& s_x,
                                             const Bitstring& s_circ, double theta, double beta,
                                             int M, std::uint64_t seed, CondMcOptions options = {});

struct LocalCovarianceRow {
  int d = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_ = 0.0;
};

struct LocalCovarianceOptions {
  int radius = 4;
  /// Balls larger than this are sampled instead of enumerated.
  std::size_t max_ball = 4096;
  std::size_t ball_samples = 512;
  std::uint64_t seed = 0;
};

/// Covariance of (E_z, d(x,z)) over z within `radius` of each sample, grouped by d(x, sample).
std::vector<LocalCovarianceRow> local_covariance(const IsingInstance& inst,
                                                 std::span<const Bitstring> samples,
                                                 const Bitstring& s_x,
                                                 LocalCovarianceOptions options = {});

struct FlipRatioStats {
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<std::size_t> histogram;  // samples per HD from s_circ
};

FlipRatioStats flip_ratio_stats(std::span<const Bitstring> samples, const Bitstring& s_circ);

/// Moves the mass of every basis state onto its basin minimum.
std::vector<double> after_local_search(std::span<const double> probs,
                                       std::span<const std::uint32_t> basins);
/// Expected fraction of bits that differ from s_circ under `probs`.
double exact_flip_ratio(std::span<const double> probs, const Bitstring& s_circ);

}  // namespace qjump
