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

#include "qjump/local_search.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qjump/errors.hpp"

namespace qjump {

namespace {

int pick(const std::vector<double>& deltas, TieBreak tie) {
  int best = -1;
  double best_delta = 0.0;
  const int n = static_cast<int>(deltas.size());
  for (int j = 0; j < n; ++j) {
    const double d = deltas[j];
    if (d < best_delta || (tie == TieBreak::highest_index && best >= 0 && d == best_delta)) {
      best = j;
      best_delta = d;
    }
  }
  return best;
}

void descend(const IsingInstance& inst, SearchResult& r, TieBreak tie) {
  for (int j = pick(r.table_star.deltas, tie); j >= 0; j = pick(r.table_star.deltas, tie)) {
    apply_flip(inst, r.s_star, r.table_star, j);
    ++r.n_ls;
  }
  r.e_star = r.table_star.energy;
}

}  // namespace

SearchResult greedy_descent(const IsingInstance& inst, const Bitstring& s_circ,
                            const DeltaTable& table_circ, const Bitstring& candidate,
                            TieBreak tie) {
  if (static_cast<int>(candidate.size()) != inst.size() ||
      static_cast<int>(s_circ.size()) != inst.size() ||
      static_cast<int>(table_circ.deltas.size()) != inst.size()) {
    throw InputError("greedy_descent: state sizes do not match n=" + std::to_string(inst.size()));
  }
#ifndef NDEBUG
  const auto check = delta_table(inst, s_circ);
  for (int j = 0; j < inst.size(); ++j) {
    if (std::abs(check.deltas[j] - table_circ.deltas[j]) > 1e-6) {
      throw std::logic_error("greedy_descent: table inconsistent with reference state");
    }
  }
#endif
  SearchResult r;
  r.s_star = s_circ;
  r.table_star = table_circ;
  for (int j = 0; j < inst.size(); ++j) {
    if (s_circ[j] != candidate[j]) {
      apply_flip(inst, r.s_star, r.table_star, j);
      ++r.flips_from_input;
    }
  }
  descend(inst, r, tie);
  return r;
}

SearchResult greedy_descent(const IsingInstance& inst, const Bitstring& start, TieBreak tie) {
  SearchResult r;
  r.s_star = start;
  r.table_star = delta_table(inst, start);
  descend(inst, r, tie);
  return r;
}

Bitstring basin_of(const IsingInstance& inst, const Bitstring& s, TieBreak tie) {
  return greedy_descent(inst, s, tie).s_star;
}

std::vector<std::uint32_t> basin_map(const IsingInstance& inst, TieBreak tie, int cap) {
  const int n = inst.size();
  if (n > cap || n > 31) {
    throw CapacityError("basin map for n=" + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));
  }
  const std::uint32_t dim = std::uint32_t{1} << n;
  const auto h = inst.fields();
  std::vector<std::uint32_t> next(dim);
  std::vector<double> deltas(n);
  for (std::uint32_t i = 0; i < dim; ++i) {
    for (int j = 0; j < n; ++j) {
      double local = h[j];
      for (const auto& nb : inst.neighbors(j)) {
        local += nb.coupling * (((i >> nb.site) & 1U) ? -1.0 : 1.0);
      }
      deltas[j] = 2.0 * (((i >> j) & 1U) ? -1.0 : 1.0) * local;
    }
    const int j = pick(deltas, tie);
    next[i] = j < 0 ? i : i ^ (std::uint32_t{1} << j);
  }
  // Pointer jumping: every path ends at a fixed point, so log2(path length)
  // doubling rounds settle all entries.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t i = 0; i < dim; ++i) {
      const std::uint32_t nn = next[next[i]];
      if (nn != next[i]) {
        next[i] = nn;
        changed = true;
      }
    }
  }
  return next;
}

double global_basin_probability(std::span<const double> probs,
                                std::span<const std::uint32_t> basins,
                                std::span<const double> energies, const GroundState& ground) {
  if (ground.minimizers.empty()) throw InputError("global_basin_probability: ground state missing");
  if (probs.size() != basins.size()) {
    throw InputError("global_basin_probability: distribution and basin map sizes differ");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (ground.is_ground(energies[basins[i]])) mass += probs[i];
  }
  return mass;
}

double global_basin_probability(const IsingInstance& inst, std::span<const double> probs,
                                const GroundState& ground, TieBreak tie) {
  const auto basins = basin_map(inst, tie);
  const auto energies = energy_table(inst);
  return global_basin_probability(probs, basins, energies, ground);
}

double global_basin_probability(const IsingInstance& inst, std::span<const Bitstring> samples,
                                const GroundState& ground, TieBreak tie) {
  if (ground.minimizers.empty()) throw InputError("global_basin_probability: ground state missing");
  if (samples.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : samples) {
    if (ground.is_ground(energy(inst, basin_of(inst, s, tie)))) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

}  // namespace qjump
