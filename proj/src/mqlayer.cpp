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

#include "mqc/mqlayer.hpp"

#include <cmath>

namespace mqc {

void MQLayer::add(int a, int b, double theta) {
  if (a == b || a < 0 || b < 0 || a >= n_qubits || b >= n_qubits)
    throw ValidationError("MQLayer::add: bad qubit pair");
  if (a > b) std::swap(a, b);
  couplings[{a, b}] += theta;
}

bool MQLayer::empty_couplings(double tol) const {
  for (const auto& [k, v] : couplings)
    if (std::abs(v) > tol) return false;
  return true;
}

int MQLayer::nonzero_count(double tol) const {
  int n = 0;
  for (const auto& [k, v] : couplings)
    if (std::abs(v) > tol) ++n;
  return n;
}

Eigen::MatrixXd MQLayer::abs_matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_qubits, n_qubits);
  for (const auto& [k, v] : couplings) {
    m(k.first, k.second) += std::abs(v) / 2.0;
    m(k.second, k.first) += std::abs(v) / 2.0;
  }
  return m;
}

double nuclear_norm(const MQLayer& layer) {
  if (layer.couplings.empty()) return 0.0;
  const Eigen::MatrixXd m = layer.abs_matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum() / (M_PI / 2);
}

std::vector<double> participation(const MQLayer& layer) {
  const Eigen::MatrixXd m = layer.abs_matrix();
  const double total = m.sum();
  if (total <= 0.0)
    throw ValidationError("participation: layer has no couplings");
  std::vector<double> alpha(layer.n_qubits);
  for (int i = 0; i < layer.n_qubits; ++i) alpha[i] = m.row(i).sum() / total;
  return alpha;
}

MQLayer fuse(const MQLayer& a, const MQLayer& b) {
  if (a.n_qubits != b.n_qubits)
    throw ValidationError("fuse: register sizes differ");
  MQLayer out = a;
  for (const auto& [k, v] : b.couplings) out.couplings[k] += v;
  return out;
}

XXAsZZ xx_to_zz(double phase) {
  return {Mat2(cplx(0, 1) * hadamard()), phase};
}

}  // namespace mqc
