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

namespace mqc::test {

inline Mat4 cnot() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

// 8x8 Toffoli, controls on qubits 1 and 2, target on qubit 0 (qubit 0 is the
// most significant bit of a basis index).
inline MatX toffoli_matrix() {
  MatX m = MatX::Identity(8, 8);
  m(3, 3) = m(7, 7) = 0.0;
  m(3, 7) = m(7, 3) = 1.0;
  return m;
}

}  // namespace mqc::test
