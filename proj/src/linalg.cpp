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

#include "mqc/linalg.hpp"

#include <cmath>

namespace mqc {

namespace {
constexpr cplx kI{0.0, 1.0};
}  // namespace

const Mat2& pauli_x() {
  static const Mat2 m = (Mat2() << 0, 1, 1, 0).finished();
  return m;
}
const Mat2& pauli_y() {
  static const Mat2 m = (Mat2() << 0, -kI, kI, 0).finished();
  return m;
}
const Mat2& pauli_z() {
  static const Mat2 m = (Mat2() << 1, 0, 0, -1).finished();
  return m;
}
const Mat2& hadamard() {
  static const Mat2 m = (Mat2() << 1, 1, 1, -1).finished() / std::sqrt(2.0);
  return m;
}

const Mat2& pauli(Axis a) {
  switch (a) {
    case Axis::X:
      return pauli_x();
    case Axis::Y:
      return pauli_y();
    default:
      return pauli_z();
  }
}

Mat2 rot(Axis a, double t) {
  const double c = std::cos(t / 2);
  const double s = std::sin(t / 2);
  return c * Mat2::Identity() - kI * s * pauli(a);
}

const Mat4& magic_basis() {
  static const Mat4 m = [] {
    Mat4 v;
    v << 1, 0, 0, kI,  //
        0, kI, 1, 0,   //
        0, kI, -1, 0,  //
        1, 0, 0, -kI;
    return Mat4(v / std::sqrt(2.0));
  }();
  return m;
}

MatX kron(const MatX& a, const MatX& b) {
  MatX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

double unitarity_residual(const MatX& m) {
  MatX r = m.adjoint() * m - MatX::Identity(m.cols(), m.cols());
  return r.cwiseAbs().maxCoeff();
}

bool is_unitary(const MatX& m, double tol) {
  return m.rows() == m.cols() && unitarity_residual(m) < tol;
}

Mat4 to_magic_basis(const Mat4& u) {
  if (unitarity_residual(u) >= 1e-8)
    throw NonUnitaryError("to_magic_basis: input is not unitary");
  const Mat4& m = magic_basis();
  return m.adjoint() * u * m;
}

Mat4 from_magic_basis(const Mat4& u) {
  const Mat4& m = magic_basis();
  return m * u * m.adjoint();
}

double phase_distance(const MatX& u, const MatX& v) {
  const cplx t = (v.adjoint() * u).trace();
  const double phi = std::abs(t) > 0 ? std::arg(t) : 0.0;
  return (u - std::exp(kI * phi) * v).norm();
}

std::pair<Mat4, double> to_special4(const Mat4& u) {
  const double phase = std::arg(u.determinant()) / 4.0;
  return {Mat4(u * std::exp(-kI * phase)), phase};
}

std::pair<Mat2, double> to_special2(const Mat2& u) {
  const double phase = std::arg(u.determinant()) / 2.0;
  return {Mat2(u * std::exp(-kI * phase)), phase};
}

ProductGate factor_product_gate(const Mat4& u, double tol) {
  // u = a (x) b has 2x2 blocks a(i,j) * b; take the largest block as b.
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double n = u.block<2, 2>(2 * i, 2 * j).norm();
      if (n > best) {
        best = n;
        bi = i;
        bj = j;
      }
    }
  Mat2 b = u.block<2, 2>(2 * bi, 2 * bj);
  b /= std::sqrt(b.determinant());
  Mat2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      a(i, j) = (b.adjoint() * u.block<2, 2>(2 * i, 2 * j)).trace() / 2.0;
  const double phase = std::arg(a.determinant()) / 2.0;
  a *= std::exp(-kI * phase);
  if (phase_distance(kron2(a, b), u) > tol)
    throw DecompositionError("factor_product_gate: input is not a product gate");
  return {a, b, phase};
}

Mat2 EulerAngles::reconstruct() const {
  return rot(order[2], t3) * rot(order[1], t2) * rot(order[0], t1);
}

namespace {

// Adjoint SO(3) matrix: column i holds g P_i g^dag expanded in Paulis.
Eigen::Matrix3d adjoint_so3(const Mat2& g) {
  static const std::array<Axis, 3> ax{Axis::X, Axis::Y, Axis::Z};
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i) {
    const Mat2 gi = g * pauli(ax[i]) * g.adjoint();
    for (int j = 0; j < 3; ++j) r(j, i) = 0.5 * (pauli(ax[j]) * gi).trace().real();
  }
  return r;
}

// g = rot(Z,t3) rot(Y,t2) rot(Z,t1), middle in [0, pi].
std::array<double, 3> zyz_angles(const Mat2& g) {
  const cplx al = g(0, 0), be = g(1, 0);
  const double t2 = 2.0 * std::atan2(std::abs(be), std::abs(al));
  if (std::abs(be) < 1e-9) return {-2.0 * std::arg(al), t2, 0.0};
  if (std::abs(al) < 1e-9) return {-2.0 * std::arg(be), t2, 0.0};
  const double sum = -2.0 * std::arg(al);   // t1 + t3
  const double diff = 2.0 * std::arg(be);   // t3 - t1
  return {(sum - diff) / 2.0, t2, (sum + diff) / 2.0};
}

// g = rot(Z,t3) rot(Y,t2) rot(X,t1), middle in [-pi/2, pi/2].
std::array<double, 3> zyx_angles(const Mat2& g) {
  const Eigen::Matrix3d r = adjoint_so3(g);
  const double c2 = std::hypot(r(0, 0), r(1, 0));
  const double t2 = std::atan2(-r(2, 0), c2);
  if (c2 < 1e-9) return {std::atan2(-r(0, 1), r(1, 1)), t2, 0.0};
  return {std::atan2(r(2, 1), r(2, 2)), t2, std::atan2(r(1, 0), r(0, 0))};
}

Eigen::Vector3d axis_vec(Axis a) {
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  v(static_cast<int>(a)) = 1.0;
  return v;
}

// SU(2) lift of a proper rotation matrix (quaternion route).
Mat2 su2_of_so3(const Eigen::Matrix3d& r) {
  const double tr = r.trace();
  double q0, q1, q2, q3;
  if (tr > 0) {
    double s = std::sqrt(tr + 1.0) * 2;
    q0 = 0.25 * s;
    q1 = (r(2, 1) - r(1, 2)) / s;
    q2 = (r(0, 2) - r(2, 0)) / s;
    q3 = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2;
    q0 = (r(2, 1) - r(1, 2)) / s;
    q1 = 0.25 * s;
    q2 = (r(0, 1) + r(1, 0)) / s;
    q3 = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2;
    q0 = (r(0, 2) - r(2, 0)) / s;
    q1 = (r(0, 1) + r(1, 0)) / s;
    q2 = 0.25 * s;
    q3 = (r(1, 2) + r(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2;
    q0 = (r(1, 0) - r(0, 1)) / s;
    q1 = (r(0, 2) + r(2, 0)) / s;
    q2 = (r(1, 2) + r(2, 1)) / s;
    q3 = 0.25 * s;
  }
  return q0 * Mat2::Identity() -
         kI * (q1 * pauli_x() + q2 * pauli_y() + q3 * pauli_z());
}

double wrap_pi(double t) {
  while (t > M_PI) t -= 2 * M_PI;
  while (t <= -M_PI) t += 2 * M_PI;
  return t;
}

}  // namespace

EulerAngles euler_decompose(const Mat2& g, std::array<Axis, 3> order) {
  if (order[0] == order[1] || order[1] == order[2])
    throw ValidationError("euler_decompose: adjacent axes must differ");
  Mat2 gs = to_special2(g).first;
  if (unitarity_residual(gs) > 1e-10)
    throw NonUnitaryError("euler_decompose: input is not SU(2)");

  EulerAngles out;
  out.order = order;
  const bool proper = order[0] == order[2];
  // Conjugate so the problem becomes plain ZYZ (proper) or ZYX (Tait-Bryan).
  Eigen::Matrix3d frame;
  double mid_sign = 1.0;
  if (proper) {
    // map Z -> order[2]=order[0], Y -> order[1], X -> their cross product
    frame.col(2) = axis_vec(order[0]);
    frame.col(1) = axis_vec(order[1]);
    frame.col(0) = frame.col(1).cross(frame.col(2));
  } else {
    frame.col(0) = axis_vec(order[0]);
    frame.col(1) = axis_vec(order[1]);
    frame.col(2) = axis_vec(order[2]);
    if (frame.determinant() < 0) {
      frame.col(1) *= -1;  // improper permutation: flip the middle axis
      mid_sign = -1.0;
    }
  }
  const Mat2 c = su2_of_so3(frame);
  const Mat2 h = c.adjoint() * gs * c;
  const std::array<double, 3> t = proper ? zyz_angles(h) : zyx_angles(h);
  out.t1 = wrap_pi(t[0]);
  out.t2 = mid_sign * t[1];
  out.t3 = wrap_pi(t[2]);
  if (phase_distance(out.reconstruct(), gs) > 1e-10)
    throw DecompositionError("euler_decompose: reconstruction failed");
  return out;
}

}  // namespace mqc
