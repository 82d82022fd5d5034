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

#include <map>
#include <utility>
#include <vector>

namespace mqc {

// One layer of simultaneous commuting ZZ couplings:
//   U = exp(i sum_{n<m} theta_{n,m} Z_n Z_m)
// The stored pair phase theta is the whole coefficient of Z_n Z_m; the
// symmetric coupling matrix used for the nuclear norm and participation
// carries theta/2 per ordered entry.
struct MQLayer {
  int n_qubits = 0;
  std::map<std::pair<int, int>, double> couplings;  // key (n, m), n < m

  void add(int a, int b, double theta);
  bool empty_couplings(double tol = 0.0) const;
  int nonzero_count(double tol = 1e-12) const;
  // symmetric matrix with |theta|/2 entries
  Eigen::MatrixXd abs_matrix() const;
};

// Sum of |eigenvalues| of the element-wise absolute coupling matrix, in gauge
// units of pi/2: a single fully entangling pair (|theta| = pi/4) scores 1/2.
double nuclear_norm(const MQLayer& layer);

// alpha_n = sum_m |phi_{n,m}| / sum_{m,s} |phi_{m,s}|; throws on all-zero.
std::vector<double> participation(const MQLayer& layer);

// Coupling matrices add; both inputs must live on the same register.
MQLayer fuse(const MQLayer& a, const MQLayer& b);

// exp(i theta XX) = (h (x) h) exp(i theta ZZ) (h (x) h) with h = i*H.
struct XXAsZZ {
  Mat2 dressing;  // self-inverse up to phase; applied on both qubits, both sides
  double zz_phase;
};
XXAsZZ xx_to_zz(double phase);

}  // namespace mqc
