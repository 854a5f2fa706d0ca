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

#include "qjump/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

Bitstring::Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw InputError("bitstring entries must be 0 or 1");
  }
}

Bitstring Bitstring::from_index(std::uint64_t index, std::size_t n) {
  Bitstring s(n);
  for (std::size_t j = 0; j < n && j < 64; ++j) s.bits_[j] = (index >> j) & 1U;
  return s;
}

Bitstring Bitstring::parse(std::string_view text) {
  Bitstring s(text.size());
  for (std::size_t j = 0; j < text.size(); ++j) {
    if (text[j] != '0' && text[j] != '1') {
      throw ParseError("bitstring: unexpected character '" + std::string(1, text[j]) +
                       "' at position " + std::to_string(j));
    }
    s.bits_[j] = text[j] == '1';
  }
  return s;
}

Bitstring Bitstring::complement() const {
  Bitstring c = *this;
  for (auto& b : c.bits_) b ^= 1;
  return c;
}

std::uint64_t Bitstring::to_index() const {
  if (bits_.size() > 64) throw CapacityError("bitstring longer than 64 bits has no index");
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < bits_.size(); ++j) index |= std::uint64_t{bits_[j]} << j;
  return index;
}

std::string Bitstring::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t j = 0; j < bits_.size(); ++j) out[j] = bits_[j] ? '1' : '0';
  return out;
}

IsingInstance::IsingInstance(int n, std::vector<Edge> edges, std::vector<double> fields,
                             InstanceMetadata metadata)
    : n_(n), edges_(std::move(edges)), fields_(std::move(fields)), metadata_(std::move(metadata)) {
  if (n_ < 1) throw InputError("instance needs at least one site");
  if (static_cast<int>(fields_.size()) != n_) {
    throw InputError("field count " + std::to_string(fields_.size()) + " does not match n=" +
                     std::to_string(n_));
  }
  for (int j = 0; j < n_; ++j) {
    if (!std::isfinite(fields_[j])) throw InputError("h[" + std::to_string(j) + "] is not finite");
  }
  std::set<std::pair<int, int>> seen;
  std::vector<int> degree(n_, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    const std::string where = "edge " + std::to_string(e) + " (" + std::to_string(edge.j) + "," +
                              std::to_string(edge.k) + ")";
    if (edge.j == edge.k) throw InputError(where + ": self-loop");
    if (edge.j < 0 || edge.k >= n_ || edge.j > edge.k) {
      throw InputError(where + ": indices must satisfy 0 <= j < k < n");
    }
    if (!std::isfinite(edge.coupling)) throw InputError(where + ": coupling is not finite");
    if (!seen.emplace(edge.j, edge.k).second) throw InputError(where + ": duplicate edge");
    ++degree[edge.j];
    ++degree[edge.k];
  }
  offsets_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) offsets_[j + 1] = offsets_[j] + degree[j];
  adjacency_.resize(offsets_[n_]);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& edge : edges_) {
    adjacency_[fill[edge.j]++] = {edge.k, edge.coupling};
    adjacency_[fill[edge.k]++] = {edge.j, edge.coupling};
  }
}

int IsingInstance::max_degree() const {
  int best = 0;
  for (int j = 0; j < n_; ++j) best = std::max(best, degree(j));
  return best;
}

IsingInstance IsingInstance::scaled(double factor) const {
  auto edges = edges_;
  for (auto& e : edges) e.coupling *= factor;
  auto fields = fields_;
  for (auto& h : fields) h *= factor;
  return IsingInstance(n_, std::move(edges), std::move(fields), metadata_);
}

namespace {

void require_length(const IsingInstance& inst, const Bitstring& s) {
  if (static_cast<int>(s.size()) != inst.size()) {
    throw InputError("bitstring length " + std::to_string(s.size()) + " does not match n=" +
                     std::to_string(inst.size()));
  }
}

}  // namespace

double energy(const IsingInstance& inst, const Bitstring& s) {
  require_length(inst, s);
  double e = 0.0;
  for (const auto& edge : inst.edges()) e -= edge.coupling * s.spin(edge.j) * s.spin(edge.k);
  const auto h = inst.fields();
  for (int j = 0; j < inst.size(); ++j) e -= h[j] * s.spin(j);
  return e;
}

DeltaTable delta_table(const IsingInstance& inst, const Bitstring& s) {
  require_length(inst, s);
  DeltaTable table;
  table.deltas.resize(inst.size());
  const auto h = inst.fields();
  for (int j = 0; j < inst.size(); ++j) {
    double local = h[j];
    for (const auto& nb : inst.neighbors(j)) local += nb.coupling * s.spin(nb.site);
    table.deltas[j] = 2.0 * s.spin(j) * local;
  }
  table.energy = energy(inst, s);
  return table;
}

void apply_flip(const IsingInstance& inst, Bitstring& s, DeltaTable& table, int j) {
  if (j < 0 || j >= inst.size()) {
    throw std::out_of_range("flip index " + std::to_string(j) + " outside [0," +
                            std::to_string(inst.size()) + ")");
  }
  const int sj = s.spin(j);
  table.energy += table.deltas[j];
  table.deltas[j] = -table.deltas[j];
  for (const auto& nb : inst.neighbors(j)) {
    table.deltas[nb.site] -= 4.0 * nb.coupling * sj * s.spin(nb.site);
  }
  s.flip(j);
}

int hamming(const Bitstring& a, const Bitstring& b) {
  if (a.size() != b.size()) {
    throw InputError("hamming: lengths " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()) + " differ");
  }
  int d = 0;
  for (std::size_t j = 0; j < a.size(); ++j) d += a[j] != b[j];
  return d;
}

std::vector<double> energy_table(const IsingInstance& inst, int cap) {
  const int n = inst.size();
  if (n > cap) {
    throw CapacityError("energy table for n=" + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<double> table(dim);
  table[0] = energy(inst, Bitstring(n));
  const auto h = inst.fields();
  // E[i] = E[i without its top bit t] + delta_t evaluated on that state.
  for (std::uint64_t i = 1; i < dim; ++i) {
    const int t = std::bit_width(i) - 1;
    const std::uint64_t base = i ^ (std::uint64_t{1} << t);
    double local = h[t];
    for (const auto& nb : inst.neighbors(t)) {
      local += nb.coupling * (((base >> nb.site) & 1U) ? -1.0 : 1.0);
    }
    table[i] = table[base] + 2.0 * local;  // spin of t is +1 in base
  }
  return table;
}

std::size_t lattice_site_count(int L) {
  if (L < 1) throw InputError("lattice L must be >= 1");
  return 2 * static_cast<std::size_t>(L) * static_cast<std::size_t>(L + 1);
}

std::vector<std::pair<int, int>> lattice_edges(int L) {
  if (L < 1) throw InputError("lattice L must be >= 1");
  const int rows = 2 * L;
  const int cols = L + 1;
  auto site = [cols](int r, int c) { return r * cols + c; };
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      // Even rows sit at x = 2c, odd rows at x = 2c + 1; neighbours differ by one in x.
      const int lo = (r % 2 == 0) ? c - 1 : c;
      for (int cn : {lo, lo + 1}) {
        if (cn >= 0 && cn < cols) edges.emplace_back(site(r, c), site(r + 1, cn));
      }
    }
  }
  return edges;
}

IsingInstance generate_lattice_instance(const LatticeSpec& spec, std::uint64_t seed, double sigma_j,
                                        double sigma_h) {
  const int full = static_cast<int>(lattice_site_count(spec.L));
  std::vector<int> new_index(full, 0);
  for (int m : spec.mask) {
    if (m < 0 || m >= full) {
      throw InputError("mask site " + std::to_string(m) + " outside lattice of " +
                       std::to_string(full) + " sites");
    }
    if (new_index[m] < 0) throw InputError("mask site " + std::to_string(m) + " listed twice");
    new_index[m] = -1;
  }
  int n = 0;
  for (int s = 0; s < full; ++s) {
    if (new_index[s] >= 0) new_index[s] = n++;
  }
  if (n == 0) throw InputError("mask removes every lattice site");

  Rng rng(seed);
  std::normal_distribution<double> coupling(0.0, sigma_j);
  std::normal_distribution<double> field(0.0, sigma_h);
  std::vector<Edge> edges;
  for (auto [a, b] : lattice_edges(spec.L)) {
    if (new_index[a] < 0 || new_index[b] < 0) continue;
    edges.push_back({new_index[a], new_index[b], coupling(rng)});
  }
  std::vector<double> fields(n);
  for (auto& h : fields) h = field(rng);

  InstanceMetadata meta;
  meta.generator = "lattice";
  meta.seed = seed;
  meta.lattice = spec;
  std::sort(meta.lattice->mask.begin(), meta.lattice->mask.end());
  meta.sigma_j = sigma_j;
  meta.sigma_h = sigma_h;
  return IsingInstance(n, std::move(edges), std::move(fields), std::move(meta));
}

IsingInstance generate_regular_instance(int n, int degree, std::uint64_t seed, double sigma_j,
                                        double sigma_h) {
  if (degree < 1 || degree >= n || (n * degree) % 2 != 0) {
    throw InputError("no simple " + std::to_string(degree) + "-regular graph on " +
                     std::to_string(n) + " vertices");
  }
  Rng rng(seed);
  std::vector<int> stubs;
  std::vector<std::pair<int, int>> pairs;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000000) throw std::runtime_error("regular graph pairing did not converge");
    stubs.clear();
    for (int v = 0; v < n; ++v) stubs.insert(stubs.end(), degree, v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    pairs.clear();
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      auto [a, b] = std::minmax(stubs[i], stubs[i + 1]);
      ok = a != b;
      pairs.emplace_back(a, b);
    }
    if (!ok) continue;
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end()) break;
  }
  std::normal_distribution<double> coupling(0.0, sigma_j);
  std::normal_distribution<double> field(0.0, sigma_h);
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({a, b, coupling(rng)});
  std::vector<double> fields(n);
  for (auto& h : fields) h = field(rng);

  InstanceMetadata meta;
  meta.generator = "regular";
  meta.seed = seed;
  meta.regular_degree = degree;
  meta.sigma_j = sigma_j;
  meta.sigma_h = sigma_h;
  return IsingInstance(n, std::move(edges), std::move(fields), std::move(meta));
}

int GroundState::distance(const Bitstring& s) const {
  int best = static_cast<int>(s.size());
  for (const auto& m : minimizers) best = std::min(best, hamming(s, m));
  return best;
}

GroundState brute_force_ground(const IsingInstance& inst, int cap) {
  const int n = inst.size();
  if (n > cap) {
    throw CapacityError("brute force over n=" + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));
  }
  // Gray-code walk with incremental energies; near-minimal candidates are
  // re-evaluated directly so that drift cannot decide degeneracy.
  constexpr double kScanTol = 1e-7;
  Bitstring s(n);
  DeltaTable table = delta_table(inst, s);
  double best = table.energy;
  std::vector<Bitstring> candidates{s};
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < dim; ++k) {
    apply_flip(inst, s, table, std::countr_zero(k));
    if (table.energy < best - kScanTol) {
      best = table.energy;
      candidates.assign(1, s);
    } else if (table.energy <= best + kScanTol) {
      best = std::min(best, table.energy);
      candidates.push_back(s);
    }
  }
  GroundState ground;
  ground.energy = std::numeric_limits<double>::infinity();
  std::vector<double> exact(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    exact[i] = energy(inst, candidates[i]);
    ground.energy = std::min(ground.energy, exact[i]);
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (exact[i] <= ground.energy + 1e-9) ground.minimizers.push_back(candidates[i]);
  }
  std::sort(ground.minimizers.begin(), ground.minimizers.end(),
            [](const Bitstring& a, const Bitstring& b) { return a.to_index() < b.to_index(); });
  return ground;
}

}  // namespace qjump
