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

namespace qjump {

/// Envisioned-hardware timing constants, nanoseconds.
struct CostModel {
  double t_sf = 28.6;    // single bit flip with delta update
  double t_ml = 128.2;   // minimum search over the delta list
  double t_po = 1249.2;  // per-iteration post-processing
  double reset_ns = 200.0;
  double layer_ns = 40.0;
  double measure_ns = 500.0;
  double feedback_ns = 500.0;

  /// Measured constants for n in {60, 84, 104}; linear interpolation between
  /// them and the nearest row outside that range.
  static CostModel for_size(int n);
};

/// Two-qubit-gate layers of an L-layer circuit on the rotated lattice: 1 + 16 L.
int circuit_depth(int L);

double quantum_block_ns(const CostModel& m, int L);
/// eta n replay flips plus n_ls descent steps.
double classical_block_ns(const CostModel& m, int n, double eta, double n_ls);

struct RuntimeEstimate {
  double quantum_block_ns = 0.0;
  double classical_block_ns = 0.0;
  double iteration_ns = 0.0;        // pipelined
  double run_ns = 0.0;              // pipelined, all iterations
  double serial_iteration_ns = 0.0;
  double serial_run_ns = 0.0;
};

/// Quantum shots and classical searches overlap: the quantum stream runs one
/// block ahead, so an iteration costs q + c + (M - 1) max(q, c) + t_PO.
RuntimeEstimate estimate_runtime(const CostModel& m, int n, int L, int M, int iterations,
                                 double eta, double n_ls);

/// One QAOA shot followed by local search is timed by its quantum block alone.
double qaoa_run_ns(const CostModel& m, int Q);

}  // namespace qjump
