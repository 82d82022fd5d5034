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

#include "mqc/lhdecomp.hpp"

#include <cmath>

namespace mqc {

namespace {

constexpr cplx kI{0.0, 1.0};

// Axis cycle X->Z, Y->X, Z->Y (inverse of the 2pi/3 rotation about (1,1,1)).
const Mat2& axis_cycle() {
  static const Mat2 m = [] {
    const double s = 1.0 / std::sqrt(3.0);
    const Mat2 n = s * (pauli_x() + pauli_y() + pauli_z());
    return Mat2((std::cos(M_PI / 3) * Mat2::Identity() -
                 kI * std::sin(M_PI / 3) * n)
                    .adjoint());
  }();
  return m;
}

}  // namespace

CVSinusoid cv_sinusoid(const Mat4& u) {
  if (unitarity_residual(u) >= 1e-8)
    throw NonUnitaryError("cv_sinusoid: input is not unitary");
  CVSinusoid out;
  const Mat4 umb = to_magic_basis(to_special4(u).first);
  cplx a{0, 0}, b{0, 0};
  for (int j = 0; j < 4; ++j) {
    a += umb(j, 0) * umb(j, 0) + umb(j, 3) * umb(j, 3);
    b += umb(j, 1) * umb(j, 1) + umb(j, 2) * umb(j, 2);
  }
  out.a_r = a.real();
  out.a_i = a.imag();
  out.b_r = b.real();
  out.b_i = b.imag();
  // v(xi) = A sin(2 xi) + B cos(2 xi)
  const double A = (out.b_r - out.a_r) / 4.0;
  const double B = (out.a_i + out.b_i) / 4.0;
  out.amplitude = std::hypot(A, B);
  if (out.amplitude < 1e-12) {
    out.degenerate = true;
    out.amplitude = 0.0;
    return out;
  }
  double xi = 0.5 * std::atan2(-B, A);  // positive-slope zero
  double sign = 1.0;
  while (xi > M_PI / 4) {
    xi -= M_PI / 2;
    sign = -sign;
  }
  while (xi <= -M_PI / 4) {
    xi += M_PI / 2;
    sign = -sign;
  }
  out.xi0 = xi;
  out.sign = sign;
  // The closed form is exact; a guarded Newton step covers any branch slip.
  const double v0 = cv_along_zz(u, out.xi0);
  if (std::abs(v0) > 1e-12) {
    const double slope = 2.0 * out.signed_amplitude();
    out.xi0 -= v0 / slope;
  }
  return out;
}

double cv_along_zz(const Mat4& u, double xi) {
  const Mat4 umb = to_magic_basis(to_special4(u).first) * czz(-xi);
  return 0.25 * (umb.transpose() * umb).trace().imag();
}

Mat4 LHFactors::reconstruct() const {
  return std::exp(kI * phase) * kron2(q0, q1) * czz(gamma) * cxx(beta) *
         kron2(p0, p1) * czz(xi0);
}

LHFactors lh_decompose(const Mat4& u) {
  const CVSinusoid s = cv_sinusoid(u);
  LHFactors f;
  f.degenerate = s.degenerate;
  f.xi0 = s.degenerate ? 0.0 : s.xi0;
  f.residual = cartan_decompose(u * czz(-f.xi0));
  if (std::abs(f.residual.theta_zz) > 1e-9)
    throw DecompositionError("lh_decompose: residual has three phases");
  // Relabel the two live phases onto (ZZ, XX): conjugate the canonical gate
  // with the axis cycle so exp(i(xx XX + yy YY)) becomes
  // exp(i(xx ZZ + yy XX)).
  const Mat2& c = axis_cycle();
  f.gamma = f.residual.theta_xx;
  f.beta = f.residual.theta_yy;
  f.q0 = f.residual.post0 * c.adjoint();
  f.q1 = f.residual.post1 * c.adjoint();
  f.p0 = c * f.residual.pre0;
  f.p1 = c * f.residual.pre1;
  f.phase = f.residual.global_phase;
  if (phase_distance(f.reconstruct(), u) > 1e-10)
    throw DecompositionError("lh_decompose: reconstruction residual");
  return f;
}

RHFactors rh_decompose(const Mat4& u) {
  RHFactors r;
  r.mirror = lh_decompose(u.adjoint());
  return r;
}

}  // namespace mqc
