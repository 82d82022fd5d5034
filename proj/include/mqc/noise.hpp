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

#include <string>
#include <vector>

namespace mqc {

enum class NoiseKind { None, Depolarization, Dephasing };

NoiseKind noise_kind_from_string(const std::string& s);
std::string to_string(NoiseKind k);

// p_tq gauges the per-qubit error of a fully entangling two-qubit gate.
// For depolarization the effective detuning follows from inverting that
// gauge: delta_sq = (1 - p_tq) / (4 p_tq) in nuclear-norm gauge units.
struct NoiseModel {
  NoiseKind kind = NoiseKind::None;
  double p_tq = 0.0;

  double delta_sq() const;
};

// Per-qubit depolarization probability of one MQ layer:
//   p_n = alpha_n nuc / (alpha_n nuc + delta_sq)
//       = 4 nuc p alpha_n / (1 + p (4 nuc alpha_n - 1))
// Uncoupled qubits get 0.
std::vector<double> depol_probabilities(const MQLayer& layer,
                                        const NoiseModel& model);

// p_n = p_tq for every qubit participating in the layer, else 0.
std::vector<double> dephase_probabilities(const MQLayer& layer,
                                          const NoiseModel& model);

// Dispatch on model.kind (None -> all zeros).
std::vector<double> injection_probabilities(const MQLayer& layer,
                                            const NoiseModel& model);

}  // namespace mqc
