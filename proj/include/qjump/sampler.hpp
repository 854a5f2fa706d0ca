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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qjump/ising.hpp"
#include "qjump/params.hpp"

namespace qjump {

using Complex = std::complex<double>;

inline constexpr int kStatevectorCap = 24;

/// exp(-i beta X) on every qubit, or the warm-start mixer exp(-i beta n_j . sigma)
/// with n_j = (sin theta_j, 0, cos theta_j) taken from the encoder angles.
enum class MixerKind { transverse, warm_start };

/// 2^n amplitudes; basis index has bit j of the bitstring at position j.
class Statevector {
 public:
  explicit Statevector(int n, int cap = kStatevectorCap);

  int qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(const Bitstring& s) const { return amps_[s.to_index()]; }
  double norm_squared() const;
  std::vector<double> probabilities() const;

 private:
  int n_;
  std::vector<Complex> amps_;
};

/// Encoder angle 2 asin sqrt(1/2 + (bit - 1/2) alpha).
double encoder_theta(int bit, double alpha);
/// Angle of the flipped-from-reference amplitude, 2 asin sqrt(1/2 - alpha/2).
double reference_theta(double alpha);

Statevector encode(const Bitstring& s_circ, double alpha, int cap = kStatevectorCap);
void apply_cost(Statevector& state, std::span<const double> energies, double gamma);
void apply_cost(Statevector& state, const IsingInstance& inst, double gamma);
void apply_mixer(Statevector& state, double beta);
void apply_warm_start_mixer(Statevector& state, std::span<const double> thetas, double beta);

/// Encoder followed by schedule.L cost/mixer layers.
Statevector run_circuit(const IsingInstance& inst, const Bitstring& s_circ, double alpha,
                        const ParamSchedule& schedule, MixerKind mixer = MixerKind::transverse,
                        int cap = kStatevectorCap);
/// Same circuit with a precomputed energy table.
Statevector run_circuit(std::span<const double> energies, const Bitstring& s_circ, double alpha,
                        const ParamSchedule& schedule, MixerKind mixer = MixerKind::transverse,
                        int cap = kStatevectorCap);

/// One-layer amplitude from the uniform start by direct summation over y:
///   2^{-n/2} sum_y exp(-i gamma E_y) cos(beta)^{n-d} (-i sin(beta))^d.
Complex single_layer_sum_amplitude(const IsingInstance& inst, const Bitstring& s_x, double gamma, double beta);

/// One-layer warm-start amplitude for a uniform reference angle theta, summed over y:
///   cos^n(theta/2) sum_y exp(-i gamma E_y) tan(theta/2)^{d(s_circ,y)} prod_j <x_j|U_j|y_j>.
Complex ws_amplitude_closed_form(const IsingInstance& inst, const Bitstring& s_circ,
                                 const Bitstring& s_x, double theta, double gamma, double beta,
                                 MixerKind mixer = MixerKind::transverse);
/// Factorized form
///   cos^n(theta/2) (cos b + i sin b cos theta)^n sum_y exp(-i gamma E_y) tan(theta/2)^{d(s_circ,y)}
///   (i sin theta sin b / (cos b + i sin b cos theta))^{d(x,y)}.
/// Exact for the warm-start mixer at s_x == s_circ with b = -beta.
Complex ws_amplitude_factorized(const IsingInstance& inst, const Bitstring& s_circ,
                                const Bitstring& s_x, double theta, double gamma, double beta);

/// Draws from |amplitude|^2 through a cumulative table built once.
class Sampler {
 public:
  explicit Sampler(std::span<const double> probabilities);
  explicit Sampler(const Statevector& state) : Sampler(state.probabilities()) {}

  std::vector<Bitstring> draw(int M, std::uint64_t seed) const;
  std::uint64_t draw_index(double u) const;
  int qubits() const { return n_; }

 private:
  int n_ = 0;
  std::vector<double> cdf_;
};

std::vector<Bitstring> sample(const Statevector& state, int M, std::uint64_t seed);

/// Each bit of s_circ flipped independently with probability eta.
std::vector<Bitstring> classical_random_sample(const Bitstring& s_circ, double eta, int M,
                                               std::uint64_t seed);
/// Exact distribution of classical_random_sample over basis indices.
std::vector<double> classical_flip_distribution(const Bitstring& s_circ, double eta,
                                                int cap = kStatevectorCap);

struct AmplitudeComponent {
  int d = 0;
  double energy = 0.0;
  std::uint64_t index = 0;
  Complex value;
};

struct AmplitudeDecomposition {
  Complex total;
  /// Grouped by Hamming distance to s_x, sorted by energy within a group.
  std::vector<AmplitudeComponent> components;
};

AmplitudeDecomposition decompose_fx(const IsingInstance& inst, const Bitstring& s_x, double gamma,
                                    double beta, int cap = 20);

struct HdContribution {
  int d = 0;
  std::uint64_t count = 0;
  double weight = 0.0;
  double product = 0.0;
};

std::vector<HdContribution> hd_contribution_profile(const IsingInstance& inst, const Bitstring& s_x,
                                                    double beta, int cap = 20);

}  // namespace qjump
