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

#include "mqc/linalg.hpp"

namespace mqc {

// u ~ e^{i global_phase} (post0 (x) post1) T (pre0 (x) pre1) with
// T = exp[i (theta_xx XX + theta_yy YY + theta_zz ZZ)].
//
// Canonical form: each phase in (-pi/4, pi/4], |theta_xx| >= |theta_yy| >=
// |theta_zz|, at most one phase negative (the sign rides on the smallest
// nonzero slot). sin(2 xx) sin(2 yy) sin(2 zz) equals cartan_volume(u).
struct CartanFactors {
  Mat2 pre0, pre1;    // S_{1,1}, S_{1,2}: applied first
  Mat2 post0, post1;  // S_{2,1}, S_{2,2}: applied last
  double theta_xx = 0.0;
  double theta_yy = 0.0;
  double theta_zz = 0.0;
  double global_phase = 0.0;

  Mat4 reconstruct() const;
};

// exp[i (a XX + b YY + c ZZ)]
Mat4 canonical_gate(double a, double b, double c);
// exp(i theta Z (x) Z)
Mat4 czz(double theta);
// exp(i theta X (x) X)
Mat4 cxx(double theta);

CartanFactors cartan_decompose(const Mat4& u);

// sin(2 xx) sin(2 yy) sin(2 zz) of the canonical decomposition, evaluated by
// the magic-basis trace formula with the det^{1/4} branch matched to the
// canonical phase class.
double cartan_volume(const Mat4& u);

// |xx| + |yy| + |zz| in radians.
double l1_phases(const CartanFactors& f);

}  // namespace mqc
