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

#include "qjump/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("alpha " + std::to_string(alpha) + " outside [0,1]");
  }
}

void require_exhaustive(int n, int cap, const char* what) {
  if (n > cap) {
    throw CapacityError(std::string(what) + ": n=" + std::to_string(n) +
                        " exceeds exhaustive cap " + std::to_string(cap));
  }
}

// pow for small integer exponents with exact zero handling (0^0 = 1).
std::vector<Complex> powers(Complex base, int n) {
  std::vector<Complex> out(n + 1);
  out[0] = 1.0;
  for (int k = 1; k <= n; ++k) out[k] = out[k - 1] * base;
  return out;
}

std::vector<double> powers(double base, int n) {
  std::vector<double> out(n + 1);
  out[0] = 1.0;
  for (int k = 1; k <= n; ++k) out[k] = out[k - 1] * base;
  return out;
}

std::uint64_t mask_of(int n) { return (std::uint64_t{1} << n) - 1; }

}  // namespace

Statevector::Statevector(int n, int cap) : n_(n) {
  if (n < 1) throw InputError("statevector needs at least one qubit");
  if (n > cap) {
    throw CapacityError("statevector of " + std::to_string(n) + " qubits exceeds cap " +
                        std::to_string(cap) +
                        "; use the conditional Monte Carlo model (analyze condmc) instead");
  }
  amps_.assign(std::size_t{1} << n, Complex{});
  amps_[0] = 1.0;
}

double Statevector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

double encoder_theta(int bit, double alpha) {
  require_alpha(alpha);
  const double x = std::clamp(0.5 + (bit - 0.5) * alpha, 0.0, 1.0);
  return 2.0 * std::asin(std::sqrt(x));
}

double reference_theta(double alpha) { return encoder_theta(0, alpha); }

Statevector encode(const Bitstring& s_circ, double alpha, int cap) {
  require_alpha(alpha);
  const int n = static_cast<int>(s_circ.size());
  Statevector state(n, cap);
  auto amps = state.amplitudes();
  for (int j = 0; j < n; ++j) {
    const double theta = encoder_theta(s_circ[j], alpha);
    const double a0 = std::cos(theta / 2.0);
    const double a1 = std::sin(theta / 2.0);
    const std::size_t half = std::size_t{1} << j;
    for (std::size_t i = 0; i < half; ++i) {
      amps[i | half] = amps[i] * a1;
      amps[i] *= a0;
    }
  }
  return state;
}

void apply_cost(Statevector& state, std::span<const double> energies, double gamma) {
  if (energies.size() != state.dimension()) throw InputError("apply_cost: energy table size mismatch");
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= std::polar(1.0, -gamma * energies[i]);
}

void apply_cost(Statevector& state, const IsingInstance& inst, double gamma) {
  if (inst.size() != state.qubits()) throw InputError("apply_cost: qubit count mismatch");
  apply_cost(state, energy_table(inst, state.qubits()), gamma);
}

void apply_mixer(Statevector& state, double beta) {
  const double c = std::cos(beta);
  const Complex mis = -kI * std::sin(beta);
  auto amps = state.amplitudes();
  const std::size_t dim = amps.size();
  for (int j = 0; j < state.qubits(); ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t base = 0; base < dim; base += 2 * bit) {
      for (std::size_t i = base; i < base + bit; ++i) {
        const Complex a = amps[i];
        const Complex b = amps[i | bit];
        amps[i] = c * a + mis * b;
        amps[i | bit] = mis * a + c * b;
      }
    }
  }
}

void apply_warm_start_mixer(Statevector& state, std::span<const double> thetas, double beta) {
  if (static_cast<int>(thetas.size()) != state.qubits()) {
    throw InputError("warm-start mixer: angle count mismatch");
  }
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  auto amps = state.amplitudes();
  const std::size_t dim = amps.size();
  for (int j = 0; j < state.qubits(); ++j) {
    const Complex u00{c, -s * std::cos(thetas[j])};
    const Complex u11{c, s * std::cos(thetas[j])};
    const Complex u01{0.0, -s * std::sin(thetas[j])};
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t base = 0; base < dim; base += 2 * bit) {
      for (std::size_t i = base; i < base + bit; ++i) {
        const Complex a = amps[i];
        const Complex b = amps[i | bit];
        amps[i] = u00 * a + u01 * b;
        amps[i | bit] = u01 * a + u11 * b;
      }
    }
  }
}

Statevector run_circuit(std::span<const double> energies, const Bitstring& s_circ, double alpha,
                        const ParamSchedule& schedule, MixerKind mixer, int cap) {
  Statevector state = encode(s_circ, alpha, cap);
  if (energies.size() != state.dimension()) throw InputError("run_circuit: energy table size mismatch");
  std::vector<double> thetas;
  if (mixer == MixerKind::warm_start) {
    for (std::size_t j = 0; j < s_circ.size(); ++j) thetas.push_back(encoder_theta(s_circ[j], alpha));
  }
  for (int l = 0; l < schedule.L; ++l) {
    apply_cost(state, energies, schedule.gammas[l]);
    if (mixer == MixerKind::warm_start) {
      apply_warm_start_mixer(state, thetas, schedule.betas[l]);
    } else {
      apply_mixer(state, schedule.betas[l]);
    }
  }
  return state;
}

Statevector run_circuit(const IsingInstance& inst, const Bitstring& s_circ, double alpha,
                        const ParamSchedule& schedule, MixerKind mixer, int cap) {
  if (static_cast<int>(s_circ.size()) != inst.size()) throw InputError("run_circuit: size mismatch");
  if (inst.size() > cap) {
    Statevector refuse(inst.size(), cap);  // throws with the capacity message
  }
  const auto energies = energy_table(inst, cap);
  return run_circuit(energies, s_circ, alpha, schedule, mixer, cap);
}

Complex single_layer_sum_amplitude(const IsingInstance& inst, const Bitstring& s_x, double gamma, double beta) {
  const int n = inst.size();
  require_exhaustive(n, 20, "single_layer_sum_amplitude");
  const auto energies = energy_table(inst, 20);
  const auto mix_diag = powers(Complex{std::cos(beta)}, n);
  const auto mix_off = powers(-kI * std::sin(beta), n);
  const std::uint64_t x = s_x.to_index();
  Complex total{};
  for (std::uint64_t y = 0; y < energies.size(); ++y) {
    const int d = std::popcount(x ^ y);
    total += std::polar(1.0, -gamma * energies[y]) * mix_diag[n - d] * mix_off[d];
  }
  return total * std::pow(2.0, -0.5 * n);
}

Complex ws_amplitude_closed_form(const IsingInstance& inst, const Bitstring& s_circ,
                                 const Bitstring& s_x, double theta, double gamma, double beta,
                                 MixerKind mixer) {
  const int n = inst.size();
  require_exhaustive(n, 20, "ws_amplitude_closed_form");
  const auto energies = energy_table(inst, 20);
  const auto enc_same = powers(std::cos(theta / 2.0), n);
  const auto enc_diff = powers(std::sin(theta / 2.0), n);
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  std::vector<Complex> keep_ref, keep_other, off;
  if (mixer == MixerKind::transverse) {
    keep_ref = powers(Complex{c}, n);
    keep_other = keep_ref;
    off = powers(Complex{0.0, -s}, n);
  } else {
    keep_ref = powers(Complex{c, -s * std::cos(theta)}, n);
    keep_other = powers(Complex{c, s * std::cos(theta)}, n);
    off = powers(Complex{0.0, -s * std::sin(theta)}, n);
  }
  const std::uint64_t all = mask_of(n);
  const std::uint64_t x = s_x.to_index();
  const std::uint64_t ref = s_circ.to_index();
  Complex total{};
  for (std::uint64_t y = 0; y < energies.size(); ++y) {
    const int d_ref = std::popcount(ref ^ y);
    const std::uint64_t differ = x ^ y;
    const int d = std::popcount(differ);
    const int kept_other = std::popcount((x ^ ref) & ~differ & all);
    total += std::polar(1.0, -gamma * energies[y]) * enc_same[n - d_ref] * enc_diff[d_ref] *
             keep_ref[n - d - kept_other] * keep_other[kept_other] * off[d];
  }
  return total;
}

Complex ws_amplitude_factorized(const IsingInstance& inst, const Bitstring& s_circ,
                                const Bitstring& s_x, double theta, double gamma, double beta) {
  const int n = inst.size();
  require_exhaustive(n, 20, "ws_amplitude_factorized");
  const auto energies = energy_table(inst, 20);
  const auto enc_same = powers(std::cos(theta / 2.0), n);
  const auto enc_diff = powers(std::sin(theta / 2.0), n);
  const Complex w{std::cos(beta), std::sin(beta) * std::cos(theta)};
  const auto w_pow = powers(w, n);
  const auto num = powers(Complex{0.0, std::sin(theta) * std::sin(beta)}, n);
  const std::uint64_t x = s_x.to_index();
  const std::uint64_t ref = s_circ.to_index();
  Complex total{};
  for (std::uint64_t y = 0; y < energies.size(); ++y) {
    const int d_ref = std::popcount(ref ^ y);
    const int d = std::popcount(x ^ y);
    total += std::polar(1.0, -gamma * energies[y]) * enc_same[n - d_ref] * enc_diff[d_ref] *
             w_pow[n - d] * num[d];
  }
  return total;
}

Sampler::Sampler(std::span<const double> probabilities) {
  if (probabilities.empty() || !std::has_single_bit(probabilities.size())) {
    throw InputError("sampler: distribution size must be a power of two");
  }
  n_ = std::countr_zero(probabilities.size());
  cdf_.resize(probabilities.size());
  std::partial_sum(probabilities.begin(), probabilities.end(), cdf_.begin());
  if (!(cdf_.back() > 0.0)) throw InputError("sampler: distribution has no mass");
}

std::uint64_t Sampler::draw_index(double u) const {
  const double target = u * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
  if (it == cdf_.end()) {
    // u rounded onto the total; take the last state with mass.
    it = std::lower_bound(cdf_.begin(), cdf_.end(), cdf_.back());
  }
  return static_cast<std::uint64_t>(it - cdf_.begin());
}

std::vector<Bitstring> Sampler::draw(int M, std::uint64_t seed) const {
  if (M < 0) throw InputError("sample count must be non-negative");
  Rng rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Bitstring> out;
  out.reserve(M);
  for (int m = 0; m < M; ++m) out.push_back(Bitstring::from_index(draw_index(uniform(rng)), n_));
  return out;
}

std::vector<Bitstring> sample(const Statevector& state, int M, std::uint64_t seed) {
  return Sampler(state).draw(M, seed);
}

std::vector<Bitstring> classical_random_sample(const Bitstring& s_circ, double eta, int M,
                                               std::uint64_t seed) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InputError("eta outside [0,1]");
  Rng rng(seed);
  std::bernoulli_distribution flip(eta);
  std::vector<Bitstring> out(M, s_circ);
  for (auto& s : out) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (flip(rng)) s.flip(j);
    }
  }
  return out;
}

std::vector<double> classical_flip_distribution(const Bitstring& s_circ, double eta, int cap) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InputError("eta outside [0,1]");
  const int n = static_cast<int>(s_circ.size());
  require_exhaustive(n, cap, "classical_flip_distribution");
  std::vector<double> by_d(n + 1);
  for (int d = 0; d <= n; ++d) by_d[d] = std::pow(eta, d) * std::pow(1.0 - eta, n - d);
  const std::uint64_t ref = s_circ.to_index();
  std::vector<double> out(std::uint64_t{1} << n);
  for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = by_d[std::popcount(i ^ ref)];
  return out;
}

AmplitudeDecomposition decompose_fx(const IsingInstance& inst, const Bitstring& s_x, double gamma,
                                    double beta, int cap) {
  const int n = inst.size();
  require_exhaustive(n, cap, "decompose_fx");
  const auto energies = energy_table(inst, cap);
  const auto mix_diag = powers(Complex{std::cos(beta)}, n);
  const auto mix_off = powers(-kI * std::sin(beta), n);
  const double norm = std::pow(2.0, -0.5 * n);
  const std::uint64_t x = s_x.to_index();
  AmplitudeDecomposition out;
  out.components.reserve(energies.size());
  for (std::uint64_t y = 0; y < energies.size(); ++y) {
    const int d = std::popcount(x ^ y);
    const Complex v = norm * std::polar(1.0, -gamma * energies[y]) * mix_diag[n - d] * mix_off[d];
    out.components.push_back({d, energies[y], y, v});
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const AmplitudeComponent& a, const AmplitudeComponent& b) {
              if (a.d != b.d) return a.d < b.d;
              if (a.energy != b.energy) return a.energy < b.energy;
              return a.index < b.index;
            });
  for (const auto& c : out.components) out.total += c.value;
  return out;
}

std::vector<HdContribution> hd_contribution_profile(const IsingInstance& inst, const Bitstring& s_x,
                                                    double beta, int cap) {
  const int n = inst.size();
  require_exhaustive(n, cap, "hd_contribution_profile");
  if (static_cast<int>(s_x.size()) != n) throw InputError("hd profile: size mismatch");
  const std::uint64_t x = s_x.to_index();
  std::vector<HdContribution> rows(n + 1);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t y = 0; y < dim; ++y) ++rows[std::popcount(x ^ y)].count;
  const auto weight = powers(std::tan(beta), n);
  for (int d = 0; d <= n; ++d) {
    rows[d].d = d;
    rows[d].weight = weight[d];
    rows[d].product = static_cast<double>(rows[d].count) * weight[d];
  }
  return rows;
}

}  // namespace qjump
