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

#include "qjump/sim_anneal.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

Temperatures init_temperatures(const IsingInstance& inst, std::uint64_t seed) {
  constexpr int kStates = 10;
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  double total = 0.0;
  const int n = inst.size();
  Bitstring s(n);
  for (int t = 0; t < kStates; ++t) {
    for (int j = 0; j < n; ++j) s.set(j, coin(rng));
    for (double d : delta_table(inst, s).deltas) total += std::abs(d);
  }
  const double mean = total / (static_cast<double>(kStates) * n);
  if (!(mean > 0.0)) throw DegenerateInstanceError("init_temperatures: all flip energies are zero");
  const double t0 = -mean / std::log(0.9);
  return {t0, 0.01 * t0};
}

const char* schedule_name(Schedule s) {
  switch (s) {
    case Schedule::geometric:
      return "geometric";
    case Schedule::linear:
      return "linear";
    case Schedule::linear_beta:
      return "linear-beta";
  }
  return "geometric";
}

Schedule parse_schedule(std::string_view name) {
  for (Schedule s : {Schedule::geometric, Schedule::linear, Schedule::linear_beta}) {
    if (name == schedule_name(s)) return s;
  }
  throw InputError("unknown schedule '" + std::string(name) + "'");
}

double temperature_at(const SaConfig& c, int sweep) {
  if (c.sweeps <= 1) return c.t0;
  const double f = static_cast<double>(sweep) / (c.sweeps - 1);
  if (c.schedule == Schedule::linear) return c.t0 + (c.t_end - c.t0) * f;
  if (c.schedule == Schedule::linear_beta) return 1.0 / (1.0 / c.t0 + (1.0 / c.t_end - 1.0 / c.t0) * f);
  return c.t0 * std::pow(c.t_end / c.t0, f);
}

namespace {

void validate(const SaConfig& c) {
  if (c.sweeps < 1) throw InputError("sa: sweeps must be >= 1");
  if (!(c.t0 > c.t_end && c.t_end > 0.0)) throw InputError("sa: need T0 > T_end > 0");
}

// Fixed-capacity neighbour storage for the degree <= K kernel.
template <int K>
struct Packed {
  std::vector<std::array<int, K>> site;
  std::vector<std::array<double, K>> coupling;
  std::vector<int> degree;

  explicit Packed(const IsingInstance& inst)
      : site(inst.size()), coupling(inst.size()), degree(inst.size()) {
    for (int j = 0; j < inst.size(); ++j) {
      site[j].fill(0);
      coupling[j].fill(0.0);
      int k = 0;
      for (const auto& nb : inst.neighbors(j)) {
        site[j][k] = nb.site;
        coupling[j][k] = nb.coupling;
        ++k;
      }
      degree[j] = k;
    }
  }
};

template <typename Neighbours>
SaResult anneal(const IsingInstance& inst, const SaConfig& config, const RTable& table,
                Neighbours&& for_each_neighbour) {
  const int n = inst.size();
  Rng rng(derive_seed(config.seed, 1));
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> shift(0, n - 1);

  std::vector<std::uint8_t> bits(n);
  Bitstring s(n);
  for (int j = 0; j < n; ++j) s.set(j, coin(rng));
  DeltaTable dt = delta_table(inst, s);
  std::vector<double> delta = std::move(dt.deltas);
  std::vector<double> spin(n);
  for (int j = 0; j < n; ++j) {
    bits[j] = s[j];
    spin[j] = s.spin(j);
  }
  double e = dt.energy;
  double e_best = e;
  std::vector<std::uint8_t> best = bits;

  SaStats stats;
  for (int t = 0; t < config.sweeps; ++t) {
    const auto r = table.row(t);
    int offset = shift(rng);
    for (int j = 0; j < n; ++j) {
      const double threshold = r[offset];
      if (++offset == n) offset = 0;
      if (delta[j] < threshold) {
        const double sj = spin[j];
        e += delta[j];
        delta[j] = -delta[j];
        for_each_neighbour(j, [&](int k, double coupling) {
          delta[k] -= 4.0 * coupling * sj * spin[k];
        });
        spin[j] = -sj;
        bits[j] ^= 1;
        ++stats.accepted;
        if (e < e_best) {
          e_best = e;
          std::memcpy(best.data(), bits.data(), bits.size());
        }
      }
    }
    stats.attempted += static_cast<std::uint64_t>(n);
  }
  SaResult out;
  out.best = Bitstring(std::move(best));
  out.e_best = energy(inst, out.best);
  out.stats = stats;
  return out;
}

}  // namespace

RTable::RTable(int n, const SaConfig& config, std::uint64_t seed)
    : n_(n), sweeps_(config.sweeps) {
  validate(config);
  if (n < 1) throw InputError("sa: empty instance");
  Rng rng(seed);
  values_.resize(static_cast<std::size_t>(n) * sweeps_);
  for (int t = 0; t < sweeps_; ++t) {
    const double temp = temperature_at(config, t);
    for (int j = 0; j < n; ++j) {
      values_[static_cast<std::size_t>(t) * n + j] = -temp * std::log(uniform_open_closed(rng));
    }
  }
}

SaResult run_sa(const IsingInstance& inst, const SaConfig& config, const RTable& table) {
  validate(config);
  if (table.size() != inst.size() || table.sweeps() != config.sweeps) {
    throw InputError("sa: threshold table shape does not match instance and sweep count");
  }
  if (inst.max_degree() <= 4) {
    const Packed<4> packed(inst);
    return anneal(inst, config, table, [&packed](int j, auto&& visit) {
      const auto& site = packed.site[j];
      const auto& coupling = packed.coupling[j];
      for (int k = 0; k < packed.degree[j]; ++k) visit(site[k], coupling[k]);
    });
  }
  return anneal(inst, config, table, [&inst](int j, auto&& visit) {
    for (const auto& nb : inst.neighbors(j)) visit(nb.site, nb.coupling);
  });
}

SaResult run_sa(const IsingInstance& inst, const SaConfig& config) {
  validate(config);
  const RTable table(inst.size(), config, derive_seed(config.seed, 0));
  return run_sa(inst, config, table);
}

double sa_time_model(int n, int sweeps, double acceptance, const SaTimeModel& model) {
  if (acceptance < 0.0 || acceptance > 1.0) throw InputError("sa_time_model: acceptance outside [0,1]");
  return static_cast<double>(sweeps) * n *
         (acceptance * model.accept_ns + (1.0 - acceptance) * model.reject_ns);
}

}  // namespace qjump
