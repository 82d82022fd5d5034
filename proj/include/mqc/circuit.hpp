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

#include "mqc/mqlayer.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mqc {

struct SU4Block {
  int q0 = 0, q1 = 1;  // q0 < q1; q0 is the first tensor factor
  Mat4 matrix = Mat4::Identity();
};

struct SU4Layer {
  std::vector<SU4Block> blocks;      // disjoint qubit pairs
  std::vector<int> permutation;      // optional; applied after the blocks
};

// Layered two-qubit circuit in the quantum-volume shape.
struct CircuitIR {
  int n_qubits = 0;
  std::vector<SU4Layer> layers;

  void validate() const;  // throws ValidationError naming the bad layer
};

struct SingleLayer {
  std::vector<std::pair<int, Mat2>> gates;  // sparse; absent qubits idle

  void compose(int qubit, const Mat2& g);  // g applied after existing gate
};

// Alternating single-qubit and MQ layers, bookended by single-qubit layers:
// single[0], mq[0], single[1], mq[1], ..., mq[K-1], single[K].
struct CompiledCircuit {
  int n_qubits = 0;
  std::vector<SingleLayer> single_layers;
  std::vector<MQLayer> mq_layers;

  int mq_layer_count() const { return static_cast<int>(mq_layers.size()); }
  int coupling_count(double tol = 1e-12) const;
  void validate() const;
};

// Deterministic Haar sampler (Ginibre + QR with diagonal phase fix).
class HaarSampler {
 public:
  explicit HaarSampler(std::uint64_t seed) : rng_(seed) {}

  Mat2 su2();
  Mat4 su4();
  double normal();
  double uniform();  // [0, 1)
  std::uint64_t bits() { return rng_(); }
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// N layers of floor(N/2) Haar SU(4) blocks on uniformly random matchings.
CircuitIR generate_qv_circuit(int n_qubits, std::uint64_t seed,
                              int n_layers = -1);

// The fixed three-MQ-layer Toffoli (controls on qubits 1 and 2, target 0).
CompiledCircuit toffoli_mq_circuit();

// Dense unitaries (n_qubits <= 12 guard).
Mat2 const* single_gate_or_null(const SingleLayer& l, int q);
MatX circuit_unitary(const CircuitIR& c);
MatX circuit_unitary(const CompiledCircuit& c);

// Statevector-style dense kernels shared with the simulator.
void apply_single_qubit(VecX& psi, int n_qubits, int q, const Mat2& g);
void apply_two_qubit(VecX& psi, int n_qubits, int q0, int q1, const Mat4& g);
void apply_mq_layer(VecX& psi, int n_qubits, const MQLayer& layer);
void apply_permutation(VecX& psi, int n_qubits, const std::vector<int>& perm);

// Fold explicit permutation layers into subsequent pairings. The returned
// relabeling maps original wires to output wires:
//   unitary(original) == relabel_unitary(perm) * unitary(folded)
struct FoldedCircuit {
  CircuitIR circuit;
  std::vector<int> final_permutation;
};
FoldedCircuit absorb_permutations(const CircuitIR& c);
MatX relabel_unitary(const std::vector<int>& perm);

// ".qvc" document serialization. Byte-deterministic, 17 significant digits.
std::string serialize(const CircuitIR& c);
std::string serialize(const CompiledCircuit& c);

struct ParsedCircuit {
  std::optional<CircuitIR> ir;
  std::optional<CompiledCircuit> compiled;

  int n_qubits() const;
  MatX unitary() const;
};
ParsedCircuit parse_qvc(const std::string& text);

}  // namespace mqc
