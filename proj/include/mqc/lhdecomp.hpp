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

#include "mqc/cartan.hpp"
#include "mqc/linalg.hpp"

namespace mqc {

// CV(u e^{-i xi ZZ}) = signed_amplitude * sin(2 (xi - xi0)), evaluated with
// the fixed det^{1/4} lift anchored at u (smooth in xi).
struct CVSinusoid {
  double amplitude = 0.0;  // >= 0
  double xi0 = 0.0;        // the unique zero in (-pi/4, pi/4]
  double sign = 1.0;       // signed_amplitude = sign * amplitude
  // column-square sums of u in the magic basis: a over columns {1,4},
  // b over columns {2,3} (1-based)
  double a_r = 0.0, a_i = 0.0, b_r = 0.0, b_i = 0.0;
  bool degenerate = false;  // amplitude < 1e-12: every xi is a zero

  double signed_amplitude() const { return sign * amplitude; }
  double value(double xi) const {
    return signed_amplitude() * std::sin(2.0 * (xi - xi0));
  }
};

CVSinusoid cv_sinusoid(const Mat4& u);

// Fixed-lift Cartan volume of u e^{-i xi ZZ}; the sampling oracle for the
// sinusoid law.
double cv_along_zz(const Mat4& u, double xi);

// u = e^{i phase} (Q0 (x) Q1) e^{i gamma ZZ} e^{i beta XX} (P0 (x) P1)
//     e^{i xi0 ZZ},   |gamma| >= |beta|, phases in (-pi/4, pi/4].
// The first applied gate is the pure ZZ rotation by xi0.
struct LHFactors {
  double xi0 = 0.0;
  bool degenerate = false;
  CartanFactors residual;  // Cartan factors of u e^{-i xi0 ZZ}
  double gamma = 0.0;      // residual theta_xx relabelled onto ZZ
  double beta = 0.0;       // residual theta_yy relabelled onto XX
  Mat2 q0, q1;             // outer gates (applied last)
  Mat2 p0, p1;             // inner gates
  double phase = 0.0;

  Mat4 reconstruct() const;
  double l1() const { return std::abs(xi0) + std::abs(gamma) + std::abs(beta); }
};

LHFactors lh_decompose(const Mat4& u);

// Mirror form: u = e^{i phase} e^{i xi0 ZZ} (P0 (x) P1)^dag e^{-i beta XX}
// e^{-i gamma ZZ} (Q0 (x) Q1)^dag, i.e. the last applied gate is pure ZZ.
// Implemented as the reversed adjoint of lh_decompose(u^dag).
struct RHFactors {
  LHFactors mirror;  // LH factors of u^dag
  double trailing_zz() const { return -mirror.xi0; }
  Mat4 reconstruct() const { return mirror.reconstruct().adjoint(); }
  double l1() const { return mirror.l1(); }
};

RHFactors rh_decompose(const Mat4& u);

}  // namespace mqc
