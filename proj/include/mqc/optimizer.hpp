// Copyright 2026 The mqc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "mqc/circuit.hpp"
#include "mqc/pullback.hpp"

#include <cstdint>

namespace mqc {

enum class CompileMode { Naive3L, Fused, FusedOptimized };

CompileMode compile_mode_from_string(const std::string& s);
std::string to_string(CompileMode m);

struct CompileOptions {
  CompileMode mode = CompileMode::FusedOptimized;
  int ry_grid_points = 24;
  double refine_tolerance = 1e-8;
  int sweeps = 2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct OptimizerReport {
  std::vector<double> layer_nucs;  // gauge units, one entry per MQ layer
  double total_nuc = 0.0;
  double cartan_baseline_nuc = 0.0;
  double ratio = 0.0;
  double wall_time_s = 0.0;
  int mq_layer_count = 0;
  int warnings = 0;  // R_Y searches that missed the Cartan bound

  std::string to_json() const;
};

// Straightforward compilation: three MQ layers per circuit layer (3L total).
CompiledCircuit compile_naive(const CircuitIR& c);

// LH fusion without the R_Y search: 2L+1 MQ layers.
CompiledCircuit compile_fused(const CircuitIR& c);

// Per-block R_Y pre-rotation minimizing the LH L1 norm of
// g * (rot(Y,y0) (x) rot(Y,y1)); the paper guarantees the minimum equals the
// Cartan L1 of g.
struct RyOptimum {
  double y0 = 0.0, y1 = 0.0;
  double l1 = 0.0;
  LHFactors factors;   // LH of the rotated block
  bool bound_met = true;
};
RyOptimum optimize_block_ry(const Mat4& g, int grid_points = 24,
                            double refine_tolerance = 1e-8);

// Layer-by-layer nuclear-norm optimization (2L+1 MQ layers).
std::pair<CompiledCircuit, OptimizerReport> compile_optimized(
    const CircuitIR& c, const CompileOptions& opts);

// Dispatch on opts.mode; all modes fill the report.
std::pair<CompiledCircuit, OptimizerReport> compile_circuit(
    const CircuitIR& c, const CompileOptions& opts);

// Sum over blocks of the gauge nuclear norm of the three disjoint pair
// couplings of each block's Cartan phases.
double cartan_baseline_nuc(const CircuitIR& c);

double total_nuclear_norm(const CompiledCircuit& c);

// Conventional realization: every block becomes three sequential two-qubit
// ZZ gates (plus single-qubit gates); each MQ layer holds one coupling.
CompiledCircuit sequential_tq_realization(const CircuitIR& c);

}  // namespace mqc
