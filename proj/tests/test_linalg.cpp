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
#include "mqc/circuit.hpp"

#include <doctest.h>

using namespace mqc;

TEST_CASE("kron basics") {
  const Mat2 i2 = Mat2::Identity();
  CHECK((kron2(i2, i2) - Mat4::Identity()).norm() == doctest::Approx(0.0));

  const Mat4 zz = kron2(pauli_z(), pauli_z());
  Mat4 want = Mat4::Zero();
  want(0, 0) = 1;
  want(1, 1) = -1;
  want(2, 2) = -1;
  want(3, 3) = 1;
  CHECK((zz - want).norm() == doctest::Approx(0.0));

  // qubit 0 is the most significant bit: (X (x) I)|00> = |10>
  Eigen::Vector4cd e0 = Eigen::Vector4cd::Zero();
  e0(0) = 1;
  const Eigen::Vector4cd out = kron2(pauli_x(), Mat2::Identity()) * e0;
  CHECK(std::abs(out(2) - cplx(1, 0)) < 1e-15);
}

TEST_CASE("magic basis constants") {
  const Mat4& m = magic_basis();
  CHECK(unitarity_residual(m) < 1e-14);
  const Mat4 zz = kron2(pauli_z(), pauli_z());
  CHECK((m * zz - zz * m).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("to_magic_basis") {
  CHECK(phase_distance(to_magic_basis(Mat4::Identity()), Mat4::Identity()) <
        1e-13);

  // ZZ rotations stay put: M e^{-i xi ZZ} = e^{-i xi ZZ} M
  Mat4 g = Mat4::Zero();
  const double xi = 0.37;
  const Eigen::Vector4d zz(1, -1, -1, 1);
  for (int i = 0; i < 4; ++i) g(i, i) = std::exp(cplx(0, -xi * zz(i)));
  CHECK((to_magic_basis(g) - g).cwiseAbs().maxCoeff() < 1e-13);

  HaarSampler s(17);
  for (int i = 0; i < 100; ++i) {
    const Mat4 u = s.su4();
    const Mat4 round = from_magic_basis(to_magic_basis(u));
    CHECK(phase_distance(round, u) < 1e-13);
    CHECK(unitarity_residual(to_magic_basis(u)) < 1e-12);
  }

  Mat4 bad = Mat4::Identity();
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(to_magic_basis(bad), NonUnitaryError);
}

TEST_CASE("phase_distance") {
  HaarSampler s(3);
  const Mat4 u = s.su4();
  CHECK(phase_distance(u, Mat4(u * std::exp(cplx(0, 1.234)))) < 1e-13);
  CHECK(phase_distance(Mat4::Identity(),
                       kron2(pauli_x(), Mat2::Identity())) >= 1.0);
  for (int i = 0; i < 50; ++i) {
    const Mat4 a = s.su4(), b = s.su4();
    CHECK(phase_distance(a, b) ==
          doctest::Approx(phase_distance(b, a)).epsilon(1e-12));
  }
  // zero distance implies scalar u v^dag
  const Mat4 v = Mat4(u * std::exp(cplx(0, -0.71)));
  const Mat4 w = u * v.adjoint();
  REQUIRE(phase_distance(u, v) < 1e-12);
  double offdiag = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) offdiag = std::max(offdiag, std::abs(w(i, j)));
  CHECK(offdiag < 1e-10);
}

TEST_CASE("euler identity and single axis") {
  const EulerAngles e =
      euler_decompose(Mat2::Identity(), {Axis::Z, Axis::Y, Axis::Z});
  CHECK(e.t1 == doctest::Approx(0.0));
  CHECK(e.t2 == doctest::Approx(0.0));
  CHECK(e.t3 == doctest::Approx(0.0));

  const EulerAngles r =
      euler_decompose(rot(Axis::Y, M_PI / 2), {Axis::Z, Axis::Y, Axis::Z});
  CHECK(r.t2 == doctest::Approx(M_PI / 2));
  CHECK(std::abs(r.t1) + std::abs(r.t3) < 1e-12);
}

TEST_CASE("euler random round trips, all orders") {
  const std::array<std::array<Axis, 3>, 8> orders{{
      {Axis::Z, Axis::Y, Axis::Z},
      {Axis::Y, Axis::Z, Axis::Y},
      {Axis::X, Axis::Y, Axis::X},
      {Axis::X, Axis::Z, Axis::X},
      {Axis::X, Axis::Y, Axis::Z},
      {Axis::Z, Axis::Y, Axis::X},
      {Axis::Y, Axis::X, Axis::Z},
      {Axis::X, Axis::Z, Axis::Y},
  }};
  HaarSampler s(11);
  for (int i = 0; i < 1000; ++i) {
    const Mat2 g = s.su2();
    const auto& order = orders[i % orders.size()];
    const EulerAngles e = euler_decompose(g, order);
    CHECK(phase_distance(e.reconstruct(), g) < 1e-11);
    const bool proper = order[0] == order[2];
    if (proper) {
      CHECK(e.t2 >= -1e-12);
      CHECK(e.t2 <= M_PI + 1e-12);
    } else {
      CHECK(std::abs(e.t2) <= M_PI / 2 + 1e-12);
    }
    CHECK(std::abs(e.t1) <= M_PI + 1e-12);
    CHECK(std::abs(e.t3) <= M_PI + 1e-12);
  }
}

TEST_CASE("euler gimbal degenerate fold") {
  // rotations purely about the shared axis: third angle folds into the first
  const Mat2 g = rot(Axis::Z, 1.1);
  const EulerAngles e = euler_decompose(g, {Axis::Z, Axis::Y, Axis::Z});
  CHECK(e.t3 == doctest::Approx(0.0));
  CHECK(phase_distance(e.reconstruct(), g) < 1e-11);
}

TEST_CASE("euler canonical-range round trip") {
  HaarSampler s(5);
  for (int i = 0; i < 200; ++i) {
    const double t1 = (s.uniform() * 2 - 1) * M_PI * 0.999;
    const double t2 = s.uniform() * M_PI;
    const double t3 = (s.uniform() * 2 - 1) * M_PI * 0.999;
    const Mat2 g =
        rot(Axis::Z, t3) * rot(Axis::Y, t2) * rot(Axis::Z, t1);
    const EulerAngles e = euler_decompose(g, {Axis::Z, Axis::Y, Axis::Z});
    CHECK(phase_distance(e.reconstruct(), g) < 1e-10);
  }
}

TEST_CASE("euler rejects repeated adjacent axes") {
  CHECK_THROWS_AS(
      euler_decompose(Mat2::Identity(), {Axis::Z, Axis::Z, Axis::Y}),
      ValidationError);
}

TEST_CASE("factor_product_gate") {
  HaarSampler s(29);
  for (int i = 0; i < 100; ++i) {
    const Mat2 a = s.su2(), b = s.su2();
    const ProductGate g = factor_product_gate(kron2(a, b));
    CHECK(phase_distance(kron2(g.a, g.b), kron2(a, b)) < 1e-12);
  }
  Mat4 cnot = Mat4::Zero();
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  CHECK_THROWS_AS(factor_product_gate(cnot), DecompositionError);
}
