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

// Reference implementations kept deliberately naive: dense matrices, full
// recomputation, direct sums. Library code never includes this file.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qjump/ising.hpp"

namespace oracle {

using qjump::Bitstring;
using qjump::IsingInstance;
using Complex = std::complex<double>;

struct Dense {
  int n = 0;
  std::vector<double> J;  // n x n, symmetric, each pair stored on both sides
  std::vector<double> h;

  explicit Dense(const IsingInstance& inst) : n(inst.size()), J(n * n, 0.0), h(n, 0.0) {
    for (const auto& e : inst.edges()) {
      J[e.j * n + e.k] = e.coupling;
      J[e.k * n + e.j] = e.coupling;
    }
    for (int j = 0; j < n; ++j) h[j] = inst.fields()[j];
  }

  double energy(const std::vector<int>& sigma) const {
    double e = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) e -= J[a * n + b] * sigma[a] * sigma[b];
      e -= h[a] * sigma[a];
    }
    return e;
  }
};

inline std::vector<int> spins(const Bitstring& s) {
  std::vector<int> out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) out[j] = s[j] ? -1 : 1;
  return out;
}

inline std::vector<int> spins(std::uint64_t index, int n) {
  std::vector<int> out(n);
  for (int j = 0; j < n; ++j) out[j] = ((index >> j) & 1U) ? -1 : 1;
  return out;
}

inline double energy(const IsingInstance& inst, const Bitstring& s) {
  return Dense(inst).energy(spins(s));
}

inline std::vector<double> all_energies(const IsingInstance& inst) {
  const Dense d(inst);
  std::vector<double> out(std::size_t{1} << d.n);
  for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = d.energy(spins(i, d.n));
  return out;
}

inline int popcount(std::uint64_t v) {
  int c = 0;
  for (; v; v >>= 1) c += static_cast<int>(v & 1U);
  return c;
}

/// Steepest descent recomputing every candidate energy from scratch.
struct NaiveDescent {
  Bitstring s;
  double e = 0.0;
  int steps = 0;
};

inline NaiveDescent naive_descent(const IsingInstance& inst, Bitstring s, bool lowest = true) {
  const Dense d(inst);
  NaiveDescent out;
  double e = d.energy(spins(s));
  for (;;) {
    int best = -1;
    double best_delta = 0.0;
    for (int j = 0; j < d.n; ++j) {
      Bitstring t = s;
      t.flip(j);
      const double delta = d.energy(spins(t)) - e;
      if (delta < best_delta - 1e-12 ||
          (!lowest && best >= 0 && std::abs(delta - best_delta) <= 1e-12)) {
        best = j;
        best_delta = delta;
      }
    }
    if (best < 0) break;
    s.flip(best);
    e = d.energy(spins(s));
    ++out.steps;
  }
  out.s = s;
  out.e = e;
  return out;
}

/// <x| prod_j exp(-i beta X_j) |y> from the single-qubit matrix.
inline Complex mixer_element(int n, int d, double beta) {
  return std::pow(Complex(std::cos(beta)), n - d) * std::pow(Complex(0.0, -std::sin(beta)), d);
}

/// Single-layer amplitude from the uniform state by summing over all y.
inline Complex single_layer_sum(const std::vector<double>& energies, int n, std::uint64_t x, double gamma,
                       double beta) {
  Complex total;
  for (std::uint64_t y = 0; y < energies.size(); ++y) {
    total += std::exp(Complex(0.0, -gamma * energies[y])) * mixer_element(n, popcount(x ^ y), beta);
  }
  return total / std::sqrt(static_cast<double>(energies.size()));
}
inline Complex single_layer_sum(const IsingInstance& inst, std::uint64_t x, double gamma, double beta) {
  return single_layer_sum(all_energies(inst), inst.size(), x, gamma, beta);
}

/// Dense single-qubit gate application, the slow way: build each output
/// amplitude as a sum over all inputs of the full tensor-product matrix element.
inline std::vector<Complex> apply_product(const std::vector<Complex>& in, int n,
                                          const std::function<Complex(int, int, int)>& gate) {
  std::vector<Complex> out(in.size());
  for (std::uint64_t x = 0; x < in.size(); ++x) {
    for (std::uint64_t y = 0; y < in.size(); ++y) {
      Complex m = 1.0;
      for (int j = 0; j < n && m != Complex(0.0); ++j) {
        m *= gate(j, static_cast<int>((x >> j) & 1U), static_cast<int>((y >> j) & 1U));
      }
      out[x] += m * in[y];
    }
  }
  return out;
}

inline double golden_max(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-10) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  while (b - a > tol) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return 0.5 * (a + b);
}

inline Bitstring random_bits(int n, std::mt19937_64& rng) {
  Bitstring s(n);
  std::bernoulli_distribution coin(0.5);
  for (int j = 0; j < n; ++j) s.set(j, coin(rng));
  return s;
}

/// Random simple graph with Gaussian couplings and fields, no structure.
inline IsingInstance random_instance(int n, double edge_prob, std::uint64_t seed,
                                     double sigma_j = 2.0, double sigma_h = 1.0) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(edge_prob);
  std::normal_distribution<double> cj(0.0, sigma_j), ch(0.0, sigma_h);
  std::vector<qjump::Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (keep(rng)) edges.push_back({a, b, cj(rng)});
    }
  }
  std::vector<double> h(n);
  for (auto& v : h) v = ch(rng);
  return IsingInstance(n, edges, h);
}

}  // namespace oracle
