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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qjump {

/// Candidate solution. Bit 0 <-> sigma = +1, bit 1 <-> sigma = -1.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::size_t n) : bits_(n, 0) {}
  explicit Bitstring(std::vector<std::uint8_t> bits);

  /// Basis-index constructor: bit j of `index` becomes bits[j].
  static Bitstring from_index(std::uint64_t index, std::size_t n);
  /// Parses "0101..." where the first character is bit 0.
  static Bitstring parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t j) const { return bits_[j]; }
  void set(std::size_t j, bool value) { bits_[j] = value ? 1 : 0; }
  void flip(std::size_t j) { bits_[j] ^= 1; }
  int spin(std::size_t j) const { return 1 - 2 * static_cast<int>(bits_[j]); }

  Bitstring complement() const;
  /// Inverse of from_index; requires size() <= 64.
  std::uint64_t to_index() const;
  std::string to_string() const;

  std::span<const std::uint8_t> bits() const { return bits_; }

  friend bool operator==(const Bitstring&, const Bitstring&) = default;
  friend auto operator<=>(const Bitstring&, const Bitstring&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct Edge {
  int j = 0;
  int k = 0;
  double coupling = 0.0;
};

struct Neighbor {
  int site = 0;
  double coupling = 0.0;
};

struct LatticeSpec {
  int L = 1;
  /// Sites removed from the full 2L(L+1) lattice.
  std::vector<int> mask;
};

struct InstanceMetadata {
  std::string id;
  std::string generator;
  std::optional<std::uint64_t> seed;
  std::optional<LatticeSpec> lattice;
  std::optional<int> regular_degree;
  double sigma_j = 0.0;
  double sigma_h = 0.0;
};

/// Ising problem E(s) = -sum J_jk s_j s_k - sum h_j s_j. Immutable after construction.
class IsingInstance {
 public:
  IsingInstance() = default;
  /// Validates the edge list (0 <= j < k < n, no duplicates, finite values)
  /// and builds the adjacency. Edges with j > k are rejected, not reordered.
  IsingInstance(int n, std::vector<Edge> edges, std::vector<double> fields,
                InstanceMetadata metadata = {});

  int size() const { return n_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const double> fields() const { return fields_; }
  std::span<const Neighbor> neighbors(int j) const {
    return {adjacency_.data() + offsets_[j], adjacency_.data() + offsets_[j + 1]};
  }
  int degree(int j) const { return offsets_[j + 1] - offsets_[j]; }
  int max_degree() const;
  const InstanceMetadata& metadata() const { return metadata_; }

  /// Same couplings and fields multiplied by `factor`.
  IsingInstance scaled(double factor) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> fields_;
  std::vector<int> offsets_{0};
  std::vector<Neighbor> adjacency_;
  InstanceMetadata metadata_;
};

/// Per-bit flip energies of the current bitstring plus its energy.
struct DeltaTable {
  std::vector<double> deltas;
  double energy = 0.0;
};

double energy(const IsingInstance& inst, const Bitstring& s);
DeltaTable delta_table(const IsingInstance& inst, const Bitstring& s);
/// Flips bit j and updates the table in O(degree(j)).
void apply_flip(const IsingInstance& inst, Bitstring& s, DeltaTable& table, int j);
int hamming(const Bitstring& a, const Bitstring& b);

/// Energies of all 2^n basis states indexed with bit 0 least significant.
std::vector<double> energy_table(const IsingInstance& inst, int cap = 26);

std::size_t lattice_site_count(int L);
/// Nearest-neighbour edges of the full rotated lattice, in site numbering of
/// row-major order (2L rows of L+1 sites, odd rows shifted by half a cell).
std::vector<std::pair<int, int>> lattice_edges(int L);

IsingInstance generate_lattice_instance(const LatticeSpec& spec, std::uint64_t seed,
                                        double sigma_j = 2.0, double sigma_h = 1.0);
/// Uniform random simple `degree`-regular graph via the pairing model with rejection.
IsingInstance generate_regular_instance(int n, int degree, std::uint64_t seed,
                                        double sigma_j = 2.0, double sigma_h = 1.0);

struct GroundState {
  double energy = 0.0;
  std::vector<Bitstring> minimizers;

  /// Smallest Hamming distance from s to any minimizer.
  int distance(const Bitstring& s) const;
  bool is_ground(double e, double tol = 1e-9) const { return e <= energy + tol; }
};

GroundState brute_force_ground(const IsingInstance& inst, int cap = 26);

}  // namespace qjump
