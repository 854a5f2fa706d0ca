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

#include "qjump/cost_model.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "qjump/errors.hpp"

namespace qjump {

namespace {

struct Row {
  int n;
  double t_sf, t_ml, t_po;
};

constexpr std::array<Row, 3> kMeasured{{
    {60, 25.3, 87.7, 1378.8},
    {84, 27.8, 107.6, 1260.6},
    {104, 28.6, 128.2, 1249.2},
}};

}  // namespace

CostModel CostModel::for_size(int n) {
  if (n < 1) throw InputError("cost model needs n >= 1");
  CostModel m;
  auto assign = [&m](const Row& r) {
    m.t_sf = r.t_sf;
    m.t_ml = r.t_ml;
    m.t_po = r.t_po;
  };
  if (n <= kMeasured.front().n) {
    assign(kMeasured.front());
  } else if (n >= kMeasured.back().n) {
    assign(kMeasured.back());
  } else {
    for (std::size_t i = 0; i + 1 < kMeasured.size(); ++i) {
      const Row& a = kMeasured[i];
      const Row& b = kMeasured[i + 1];
      if (n > b.n) continue;
      const double f = static_cast<double>(n - a.n) / (b.n - a.n);
      assign({n, a.t_sf + f * (b.t_sf - a.t_sf), a.t_ml + f * (b.t_ml - a.t_ml),
              a.t_po + f * (b.t_po - a.t_po)});
      break;
    }
  }
  return m;
}

int circuit_depth(int L) {
  if (L < 0) throw InputError("layer count must be >= 0");
  return 1 + 16 * L;
}

double quantum_block_ns(const CostModel& m, int L) {
  return m.reset_ns + circuit_depth(L) * m.layer_ns + m.measure_ns + m.feedback_ns;
}

double classical_block_ns(const CostModel& m, int n, double eta, double n_ls) {
  return eta * n * m.t_sf + n_ls * (m.t_ml + m.t_sf);
}

RuntimeEstimate estimate_runtime(const CostModel& m, int n, int L, int M, int iterations,
                                 double eta, double n_ls) {
  if (M < 1 || iterations < 1) throw InputError("estimate_runtime needs M >= 1 and iterations >= 1");
  for (double v : {m.t_sf, m.t_ml, m.t_po, m.reset_ns, m.layer_ns, m.measure_ns, m.feedback_ns}) {
    if (!(v > 0.0)) throw InputError("cost model constants must be positive");
  }
  RuntimeEstimate r;
  r.quantum_block_ns = quantum_block_ns(m, L);
  r.classical_block_ns = classical_block_ns(m, n, eta, n_ls);
  const double q = r.quantum_block_ns;
  const double c = r.classical_block_ns;
  r.iteration_ns = q + c + (M - 1) * std::max(q, c) + m.t_po;
  r.serial_iteration_ns = M * (q + c) + m.t_po;
  r.run_ns = iterations * r.iteration_ns;
  r.serial_run_ns = iterations * r.serial_iteration_ns;
  return r;
}

double qaoa_run_ns(const CostModel& m, int Q) { return quantum_block_ns(m, Q); }

}  // namespace qjump
