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

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace mqc {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

// Rotation/phase conventions used throughout:
//   single-qubit rotation   rot(a, t)   = exp(-i t P_a / 2)
//   correlated rotation     czz(theta)  = exp(+i theta Z (x) Z)   (same for XX, YY)
// Tensor factor 0 is the most significant bit of a basis index.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonUnitaryError : Error {
  using Error::Error;
};
struct DecompositionError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct SimulationError : Error {
  using Error::Error;
};

enum class Axis { X, Y, Z };

const Mat2& pauli(Axis a);
const Mat2& pauli_x();
const Mat2& pauli_y();
const Mat2& pauli_z();
const Mat2& hadamard();

// exp(-i t P_a / 2)
Mat2 rot(Axis a, double t);

// The fixed magic-basis transformation M; M^dag M = I and [M, Z(x)Z] = 0.
const Mat4& magic_basis();

MatX kron(const MatX& a, const MatX& b);
Mat4 kron2(const Mat2& a, const Mat2& b);

double unitarity_residual(const MatX& m);
bool is_unitary(const MatX& m, double tol = 1e-12);

// M^dag u M. Throws NonUnitaryError if residual >= 1e-8.
Mat4 to_magic_basis(const Mat4& u);
Mat4 from_magic_basis(const Mat4& u);

// min over real phi of ||u - e^{i phi} v||_F, phi from arg Tr(v^dag u).
double phase_distance(const MatX& u, const MatX& v);

// Divide by the principal root of the determinant; returns the removed phase,
// i.e. input = e^{i phase} * result with det(result) = 1.
std::pair<Mat4, double> to_special4(const Mat4& u);
std::pair<Mat2, double> to_special2(const Mat2& u);

// u = e^{i phase} a (x) b with a, b special unitary. Throws DecompositionError
// if the input is not a product gate (residual > tol).
struct ProductGate {
  Mat2 a;
  Mat2 b;
  double phase;
};
ProductGate factor_product_gate(const Mat4& u, double tol = 1e-8);

struct EulerAngles {
  std::array<Axis, 3> order;  // order[0] applied first (rightmost factor)
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;

  // rot(order[2], t3) * rot(order[1], t2) * rot(order[0], t1)
  Mat2 reconstruct() const;
};

// g in SU(2) within 1e-10; adjacent axes in `order` must differ. Middle angle
// lands in [0, pi] for proper orders (order[0] == order[2]) and in
// [-pi/2, pi/2] for three-distinct-axes orders; outer angles in (-pi, pi].
// Gimbal-degenerate inputs fold the third angle into the first.
EulerAngles euler_decompose(const Mat2& g, std::array<Axis, 3> order);

}  // namespace mqc
