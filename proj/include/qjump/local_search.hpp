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
#include <span>
#include <vector>

#include "qjump/ising.hpp"

namespace qjump {

/// Rule for choosing among bits with equal flip energy.
enum class TieBreak { lowest_index, highest_index };

struct SearchResult {
  Bitstring s_star;
  double e_star = 0.0;
  DeltaTable table_star;
  int n_ls = 0;              // descent steps
  int flips_from_input = 0;  // replay flips from the reference state to the candidate
};

/// Moves from (s_circ, table_circ) to `candidate` by incremental flips, then
/// flips the bit with the most negative delta until no delta is negative.
SearchResult greedy_descent(const IsingInstance& inst, const Bitstring& s_circ,
                            const DeltaTable& table_circ, const Bitstring& candidate,
                            TieBreak tie = TieBreak::lowest_index);
SearchResult greedy_descent(const IsingInstance& inst, const Bitstring& start,
                            TieBreak tie = TieBreak::lowest_index);

/// Steepest-descent fixed point from s.
Bitstring basin_of(const IsingInstance& inst, const Bitstring& s,
                   TieBreak tie = TieBreak::lowest_index);

/// basin_of for every basis index at once (bit 0 least significant).
std::vector<std::uint32_t> basin_map(const IsingInstance& inst,
                                     TieBreak tie = TieBreak::lowest_index, int cap = 24);

/// Mass of basis states whose basin minimum is a ground state. `probs` is
/// indexed by basis index.
double global_basin_probability(const IsingInstance& inst, std::span<const double> probs,
                                const GroundState& ground, TieBreak tie = TieBreak::lowest_index);
double global_basin_probability(std::span<const double> probs,
                                std::span<const std::uint32_t> basins,
                                std::span<const double> energies, const GroundState& ground);
/// Fraction of samples whose descent reaches a ground state.
double global_basin_probability(const IsingInstance& inst, std::span<const Bitstring> samples,
                                const GroundState& ground, TieBreak tie = TieBreak::lowest_index);

}  // namespace qjump
