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

#include "mqc/noise.hpp"

#include <cmath>

namespace mqc {

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "none") return NoiseKind::None;
  if (s == "depol" || s == "depolarization") return NoiseKind::Depolarization;
  if (s == "dephase" || s == "dephasing") return NoiseKind::Dephasing;
  throw ValidationError("unknown noise kind: " + s);
}

std::string to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::None:
      return "none";
    case NoiseKind::Depolarization:
      return "depol";
    default:
      return "dephase";
  }
}

double NoiseModel::delta_sq() const {
  if (p_tq <= 0.0)
    throw ValidationError("delta_sq undefined at p_tq = 0");
  return (1.0 - p_tq) / (4.0 * p_tq);
}

std::vector<double> depol_probabilities(const MQLayer& layer,
                                        const NoiseModel& model) {
  std::vector<double> p(layer.n_qubits, 0.0);
  if (model.p_tq <= 0.0) return p;
  const double nuc = nuclear_norm(layer);
  if (nuc <= 0.0) return p;
  const std::vector<double> alpha = participation(layer);
  const double dsq = model.delta_sq();
  for (int n = 0; n < layer.n_qubits; ++n) {
    if (alpha[n] <= 0.0) continue;
    p[n] = alpha[n] * nuc / (alpha[n] * nuc + dsq);
  }
  return p;
}

std::vector<double> dephase_probabilities(const MQLayer& layer,
                                          const NoiseModel& model) {
  std::vector<double> p(layer.n_qubits, 0.0);
  const Eigen::MatrixXd m = layer.abs_matrix();
  for (int n = 0; n < layer.n_qubits; ++n)
    if (m.row(n).sum() > 0.0) p[n] = model.p_tq;
  return p;
}

std::vector<double> injection_probabilities(const MQLayer& layer,
                                            const NoiseModel& model) {
  switch (model.kind) {
    case NoiseKind::Depolarization:
      return depol_probabilities(layer, model);
    case NoiseKind::Dephasing:
      return dephase_probabilities(layer, model);
    default:
      return std::vector<double>(layer.n_qubits, 0.0);
  }
}

}  // namespace mqc
