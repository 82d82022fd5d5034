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

#include "mqc/cartan.hpp"
#include "mqc/circuit.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace mqc;

namespace {
bool in_canonical_range(const CartanFactors& f) {
  for (double t : {f.theta_xx, f.theta_yy, f.theta_zz})
    if (t <= -M_PI / 4 - 1e-12 || t > M_PI / 4 + 1e-12) return false;
  int neg = 0;
  for (double t : {f.theta_xx, f.theta_yy, f.theta_zz})
    if (t < -1e-12) ++neg;
  return neg <= 1 &&
         std::abs(f.theta_xx) >= std::abs(f.theta_yy) - 1e-12 &&
         std::abs(f.theta_yy) >= std::abs(f.theta_zz) - 1e-12;
}

double sin_product(const CartanFactors& f) {
  return std::sin(2 * f.theta_xx) * std::sin(2 * f.theta_yy) *
         std::sin(2 * f.theta_zz);
}
}  // namespace

TEST_CASE("identity and fixed-point decompositions") {
  const CartanFactors fi = cartan_decompose(Mat4::Identity());
  CHECK(std::abs(fi.theta_xx) < 1e-12);
  CHECK(std::abs(fi.theta_yy) < 1e-12);
  CHECK(std::abs(fi.theta_zz) < 1e-12);
  CHECK(phase_distance(fi.reconstruct(), Mat4::Identity()) < 1e-12);

  const Mat4 g = canonical_gate(0.1, 0.2, 0.3);
  const CartanFactors f = cartan_decompose(g);
  CHECK(f.theta_xx == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(f.theta_yy == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(f.theta_zz == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(phase_distance(f.reconstruct(), g) < 1e-10);
}

TEST_CASE("CNOT decomposition") {
  const Mat4 cnot = test::cnot();
  const CartanFactors f = cartan_decompose(cnot);
  CHECK(std::abs(f.theta_xx) == doctest::Approx(M_PI / 4).epsilon(1e-10));
  CHECK(std::abs(f.theta_yy) < 1e-10);
  CHECK(std::abs(f.theta_zz) < 1e-10);
  CHECK(phase_distance(f.reconstruct(), cnot) < 1e-10);
  CHECK(l1_phases(f) == doctest::Approx(M_PI / 4).epsilon(1e-10));
  CHECK(cartan_volume(cnot) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("1000 Haar round trips with CV consistency") {
  HaarSampler s(101);
  double worst_recon = 0.0, worst_cv = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mat4 u = s.su4();
    const CartanFactors f = cartan_decompose(u);
    worst_recon = std::max(worst_recon, phase_distance(f.reconstruct(), u));
    CHECK(in_canonical_range(f));
    worst_cv = std::max(worst_cv, std::abs(cartan_volume(u) - sin_product(f)));
  }
  CHECK(worst_recon < 1e-9);
  CHECK(worst_cv < 1e-10);
}

TEST_CASE("cartan_volume examples and dressing invariance") {
  CHECK(cartan_volume(canonical_gate(M_PI / 8, M_PI / 8, M_PI / 8)) ==
        doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-12));
  HaarSampler s(7);
  for (int i = 0; i < 100; ++i) {
    const Mat4 u = s.su4();
    const double cv = cartan_volume(u);
    const Mat4 dressed =
        kron2(s.su2(), s.su2()) * u * kron2(s.su2(), s.su2());
    CHECK(cartan_volume(dressed) == doctest::Approx(cv).epsilon(1e-10));
  }
}

TEST_CASE("sin-product invariance under dressing of the source") {
  HaarSampler s(13);
  for (int i = 0; i < 100; ++i) {
    const Mat4 u = s.su4();
    const CartanFactors f = cartan_decompose(u);
    const Mat4 dressed =
        kron2(s.su2(), s.su2()) * u * kron2(s.su2(), s.su2());
    const CartanFactors g = cartan_decompose(dressed);
    CHECK(l1_phases(g) == doctest::Approx(l1_phases(f)).epsilon(1e-9));
    CHECK(g.theta_xx == doctest::Approx(f.theta_xx).epsilon(1e-8));
  }
}

TEST_CASE("idempotent on canonical form") {
  HaarSampler s(23);
  for (int i = 0; i < 200; ++i) {
    const CartanFactors f = cartan_decompose(s.su4());
    const CartanFactors g = cartan_decompose(f.reconstruct());
    CHECK(g.theta_xx == doctest::Approx(f.theta_xx).epsilon(1e-9));
    CHECK(g.theta_yy == doctest::Approx(f.theta_yy).epsilon(1e-9));
    CHECK(std::abs(g.theta_zz) ==
          doctest::Approx(std::abs(f.theta_zz)).epsilon(1e-9));
  }
}

TEST_CASE("degenerate-spectrum gates") {
  // SWAP-like and controlled gates stress the degenerate eigenspace path.
  Mat4 swap = Mat4::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  const CartanFactors f = cartan_decompose(swap);
  CHECK(phase_distance(f.reconstruct(), swap) < 1e-10);
  CHECK(std::abs(f.theta_xx) == doctest::Approx(M_PI / 4).epsilon(1e-9));
  CHECK(std::abs(f.theta_yy) == doctest::Approx(M_PI / 4).epsilon(1e-9));
  CHECK(std::abs(f.theta_zz) == doctest::Approx(M_PI / 4).epsilon(1e-9));

  const CartanFactors g = cartan_decompose(czz(0.77));
  CHECK(phase_distance(g.reconstruct(), czz(0.77)) < 1e-10);

  // iSWAP-class: two phases at pi/4
  const Mat4 iswap = canonical_gate(M_PI / 4, M_PI / 4, 0.0);
  CHECK(phase_distance(cartan_decompose(iswap).reconstruct(), iswap) < 1e-10);
}

TEST_CASE("rejects non-unitary input") {
  Mat4 bad = Mat4::Identity();
  bad(2, 2) = 3.0;
  CHECK_THROWS_AS(cartan_decompose(bad), NonUnitaryError);
}
