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

#include "mqc/lhdecomp.hpp"

namespace mqc {

// bare = e^{i gamma ZZ} e^{i beta XX} (b0 (x) b1) e^{i alpha ZZ}; the leading
// (first applied) gate is the pure ZZ rotation by alpha.
struct LHBareFactors {
  double alpha = 0.0;
  Mat2 b0 = Mat2::Identity(), b1 = Mat2::Identity();
  double beta = 0.0;
  double gamma = 0.0;
  double phase = 0.0;  // phase such that push_forward (x) bare rebuilds u

  Mat4 reconstruct() const;  // without the phase factor
  // SM units: phases of e^{-i (pi/4) x ZZ} form
  double alpha_quarter_units() const { return -alpha / (M_PI / 4); }
  double beta_quarter_units() const { return -beta / (M_PI / 4); }
  double gamma_quarter_units() const { return -gamma / (M_PI / 4); }
};

struct SplitLH {
  Mat2 push_forward0, push_forward1;  // A gates, merged into the next layer
  LHBareFactors bare;
};

// u = e^{i bare.phase} (push_forward0 (x) push_forward1) * bare.reconstruct()
SplitLH split_lh(const Mat4& u);

// W = e^{i gamma_tilde ZZ} (Z^lz a0 (x) Z^lz a1) e^{i beta_tilde XX}
//     (X^lx b0 (x) X^lx b1) e^{i alpha ZZ} * e^{i phase}
// where a_j are pure Y rotations. Leading alpha is copied from the input
// bare block unchanged.
struct LHRHFactors {
  double alpha = 0.0;
  Mat2 b0, b1;  // includes the X parity and the trailing Y rotations
  double beta_tilde = 0.0;
  Mat2 a0, a1;  // includes the Z parity
  double gamma_tilde = 0.0;
  int parity_x = 0;  // l_x
  int parity_z = 0;  // l_z
  double u0 = 0.0, u1 = 0.0;  // interior Y-rotation angles (radians)
  double v0 = 0.0, v1 = 0.0;
  double phase = 0.0;

  Mat4 reconstruct() const;
};

// Rewrites (rot(Y,t0) (x) rot(Y,t1)) * bare into the LH-RH form above.
LHRHFactors y_pullback(const LHBareFactors& bare, double t0, double t1);

}  // namespace mqc
