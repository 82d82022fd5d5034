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
#include "mqc/noise.hpp"
#include "mqc/optimizer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mqc {

inline constexpr int kMaxSimQubits = 14;

struct StateVector {
  int n_qubits = 0;
  VecX amplitudes;

  static StateVector zero_state(int n_qubits);
  void apply_single(int q, const Mat2& g);
  void apply_pair(int q0, int q1, const Mat4& g);
  void apply_mq(const MQLayer& l);
  double norm() const { return amplitudes.norm(); }
  std::vector<double> probabilities() const;
};

// Runs the compiled circuit; optional per-MQ-layer Pauli injections
// (site = (mq layer index, qubit, pauli)).
struct PauliInjection {
  int layer;
  int qubit;
  Axis axis;
};
StateVector run_circuit(const CompiledCircuit& c,
                        const std::vector<PauliInjection>& injections = {});

struct HeavyOutputSet {
  std::vector<double> ideal_probabilities;
  double median = 0.0;
  std::vector<bool> heavy;  // strictly above the median
  double heavy_mass = 0.0;
  int heavy_count = 0;
};
HeavyOutputSet heavy_output_set(const CompiledCircuit& c);

// Monte-Carlo heavy-output probability: per shot, sample Pauli injections
// for every entanglement layer per the noise model, run the trajectory, and
// draw one outcome.
double heavy_output_probability(const CompiledCircuit& c,
                                const NoiseModel& noise, int shots,
                                std::uint64_t seed);

struct QVConfig {
  int n_circuits = 100;
  long shot_cap = -1;        // -1: use the paper schedule r(N)
  std::uint64_t seed = 1;
  CompileOptions compile;
  int jobs = 1;
  bool tq_baseline = false;  // sequential two-qubit realization instead
};

struct QVReport {
  int n_qubits = 0;
  std::string compile_mode;
  std::string noise_kind;
  double p_tq = 0.0;
  int n_circuits = 0;
  long shots_per_circuit = 0;
  bool shots_capped = false;
  std::vector<double> per_circuit_hop;
  double mean_hop = 0.0;
  double stderr_hop = 0.0;
  double threshold = 2.0 / 3.0;
  bool pass = false;  // mean - 2*stderr > 2/3

  std::string to_json() const;
  std::string to_csv_row() const;
  static std::string csv_header();
};

// Paper shot schedule r = 1e4 * max{(N/10)^4, 1}.
long qv_shot_schedule(int n_qubits);
// Paper bisection resolution dp = 1e-3 * min{(10/N)^2, 1}.
double qv_scan_resolution(int n_qubits);

QVReport qv_pass(int n_qubits, const NoiseModel& noise, const QVConfig& cfg);

// Largest p_tq at which qv_pass succeeds, bisected to qv_scan_resolution(n).
struct ThresholdScan {
  double p_threshold = 0.0;
  double resolution = 0.0;
  int evaluations = 0;
  std::vector<std::pair<double, bool>> probes;
};
ThresholdScan threshold_scan(int n_qubits, NoiseKind kind, const QVConfig& cfg,
                             double p_hi = 0.5);

// Per-qubit noise-event counts: one event per (entanglement layer,
// participating qubit).
std::vector<long> noise_event_counts(const CompiledCircuit& c);

}  // namespace mqc
