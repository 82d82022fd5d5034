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

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace mqc {

namespace {

constexpr cplx kI{0.0, 1.0};

// Joint diagonalization of commuting real symmetric 4x4 matrices by Jacobi
// rotations with the Cardoso-Souloumiac closed-form angle.
Eigen::Matrix4d joint_diagonalize(Eigen::Matrix4d a, Eigen::Matrix4d b) {
  Eigen::Matrix4d o = Eigen::Matrix4d::Identity();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double moved = 0.0;
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        Eigen::Matrix2d gram = Eigen::Matrix2d::Zero();
        for (const auto* m : {&a, &b}) {
          Eigen::Vector2d h((*m)(p, p) - (*m)(q, q), 2.0 * (*m)(p, q));
          gram += h * h.transpose();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
        double x = es.eigenvectors()(0, 1), y = es.eigenvectors()(1, 1);
        if (x < 0) {
          x = -x;
          y = -y;
        }
        const double r = std::hypot(x, y);
        if (r < 1e-300) continue;
        const double c = std::sqrt((x + r) / (2 * r));
        const double s = y / (2 * c * r);
        if (std::abs(s) < 1e-17) continue;
        moved += std::abs(s);
        for (auto* m : {&a, &b}) {
          const Eigen::Vector4d rp = m->row(p), rq = m->row(q);
          m->row(p) = c * rp + s * rq;
          m->row(q) = -s * rp + c * rq;
          const Eigen::Vector4d cp = m->col(p), cq = m->col(q);
          m->col(p) = c * cp + s * cq;
          m->col(q) = -s * cp + c * cq;
        }
        const Eigen::Vector4d op = o.col(p), oq = o.col(q);
        o.col(p) = c * op + s * oq;
        o.col(q) = -s * op + c * oq;
      }
    }
    if (moved < 1e-15) break;
  }
  return o;
}

struct RawExtraction {
  Mat4 u_su;          // principal SU(4) lift
  double lift_phase;  // u = e^{i lift_phase} u_su
  Mat4 umb;           // magic-basis image of u_su
  Eigen::Matrix4d o1;
  Eigen::Vector4d phi;  // half-angle eigenphases, sum exactly 0
};

RawExtraction raw_extract(const Mat4& u) {
  if (unitarity_residual(u) >= 1e-8)
    throw NonUnitaryError("cartan: input is not unitary");
  RawExtraction r;
  std::tie(r.u_su, r.lift_phase) = to_special4(u);
  r.umb = to_magic_basis(r.u_su);
  const Mat4 g = r.umb.transpose() * r.umb;
  const Eigen::Matrix4d o = joint_diagonalize(g.real(), g.imag());
  const Mat4 gd = o.transpose() * g * o;
  double off = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) off = std::max(off, std::abs(gd(i, j)));
  if (off > 1e-9)
    throw DecompositionError("cartan: joint diagonalization residual");
  r.o1 = o.transpose();
  if (r.o1.determinant() < 0) r.o1.row(0) *= -1;
  for (int i = 0; i < 4; ++i) r.phi(i) = std::arg(gd(i, i)) / 2.0;
  // Adjust branches so the phases sum to zero exactly: det D = 1 and the
  // eigenvalue-product identities then hold without a stray 2*pi.
  int s = static_cast<int>(std::lround(r.phi.sum() / M_PI));
  std::array<int, 4> idx{0, 1, 2, 3};
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return r.phi(i) > r.phi(j); });
  for (int k = 0; s > 0; --s, ++k) r.phi(idx[k]) -= M_PI;
  for (int k = 0; s < 0; ++s, ++k) r.phi(idx[3 - k]) += M_PI;
  return r;
}

Eigen::Vector3d raw_thetas(const Eigen::Vector4d& p) {
  return {(p(0) + p(1) - p(2) - p(3)) / 4.0,
          (p(1) + p(3) - p(0) - p(2)) / 4.0,
          (p(0) + p(3) - p(1) - p(2)) / 4.0};
}

// Canonicalization is planned on the phase triple alone, then replayed on the
// single-qubit factors. cartan_volume derives its branch sign from the same
// plan, so decomposer and invariant stay consistent at chamber boundaries.
struct Move {
  enum Kind { Fold, Swap, Flip } kind;
  int i, j;  // Fold: axis i by j quarter-turns; Swap/Flip: slots i, j
};

struct Plan {
  Eigen::Vector3d t;
  std::vector<Move> moves;
  int quarter_folds = 0;  // total |k| over fold moves (parity matters)
};

void plan_fold(Plan& p, int i) {
  int k = static_cast<int>(std::floor((p.t(i) + M_PI / 4) / (M_PI / 2)));
  if (p.t(i) - k * (M_PI / 2) <= -M_PI / 4 + 1e-15) --k;  // boundary -> +pi/4
  if (k == 0) return;
  p.t(i) -= k * (M_PI / 2);
  p.moves.push_back({Move::Fold, i, k});
  p.quarter_folds += std::abs(k);
}

Plan make_plan(const Eigen::Vector3d& raw) {
  Plan p;
  p.t = raw;
  for (int i = 0; i < 3; ++i) plan_fold(p, i);
  for (int pass = 0; pass < 3; ++pass) {
    if (std::abs(p.t(0)) < std::abs(p.t(1))) {
      std::swap(p.t(0), p.t(1));
      p.moves.push_back({Move::Swap, 0, 1});
    }
    if (std::abs(p.t(1)) < std::abs(p.t(2))) {
      std::swap(p.t(1), p.t(2));
      p.moves.push_back({Move::Swap, 1, 2});
    }
  }
  std::array<int, 3> neg{};
  int n = 0;
  for (int i = 0; i < 3; ++i)
    if (p.t(i) < -1e-15) neg[n++] = i;
  auto flip = [&](int i, int j) {
    p.t(i) = -p.t(i);
    p.t(j) = -p.t(j);
    p.moves.push_back({Move::Flip, i, j});
  };
  if (n == 2)
    flip(neg[0], neg[1]);
  else if (n == 3)
    flip(0, 1);
  else if (n == 1 && neg[0] != 2)
    flip(neg[0], 2);
  for (int i = 0; i < 3; ++i) plan_fold(p, i);  // flips may expose -pi/4
  return p;
}

// Clifford conjugators that permute the correlated-rotation axes.
const Mat2& swap_gate(int i, int j) {
  static const Mat2 xy =
      Mat2((Mat2() << 1, 0, 0, kI).finished() * std::exp(-kI * (M_PI / 4)));
  static const Mat2 xz = Mat2(kI * hadamard());
  static const Mat2 yz = rot(Axis::X, M_PI / 2);
  if (i + j == 1) return xy;  // S: X->Y, Y->-X
  if (i + j == 2) return xz;  // H: X<->Z
  return yz;                  // rot(X,pi/2): Y->Z, Z->-Y
}

struct Working {
  Mat2 pre0, pre1, post0, post1;
  double phase;
};

void replay(Working& w, const std::vector<Move>& moves) {
  for (const Move& m : moves) {
    switch (m.kind) {
      case Move::Fold: {
        const Mat2& a = pauli(static_cast<Axis>(m.i));
        w.phase += m.j * (M_PI / 2);
        if (m.j % 2 != 0) {
          w.pre0 = a * w.pre0;
          w.pre1 = a * w.pre1;
        }
        break;
      }
      case Move::Swap: {
        const Mat2& g = swap_gate(m.i, m.j);
        w.pre0 = g.adjoint() * w.pre0;
        w.pre1 = g.adjoint() * w.pre1;
        w.post0 = w.post0 * g;
        w.post1 = w.post1 * g;
        break;
      }
      case Move::Flip: {
        const Mat2& q = pauli(static_cast<Axis>(3 - m.i - m.j));
        w.pre0 = q * w.pre0;
        w.post0 = w.post0 * q;
        break;
      }
    }
  }
}

}  // namespace

Mat4 canonical_gate(double a, double b, double c) {
  // diagonal in the magic basis with eigenphases (+a-b+c, a+b-c, -a-b-c, -a+b+c)
  Eigen::Vector4d phi(a - b + c, a + b - c, -a - b - c, -a + b + c);
  Mat4 d = Mat4::Zero();
  for (int i = 0; i < 4; ++i) d(i, i) = std::exp(kI * phi(i));
  return from_magic_basis(d);
}

Mat4 czz(double theta) {
  Mat4 d = Mat4::Zero();
  const Eigen::Vector4d zz(1, -1, -1, 1);
  for (int i = 0; i < 4; ++i) d(i, i) = std::exp(kI * theta * zz(i));
  return d;
}

Mat4 cxx(double theta) {
  return std::cos(theta) * Mat4::Identity() +
         kI * std::sin(theta) * kron2(pauli_x(), pauli_x());
}

Mat4 CartanFactors::reconstruct() const {
  return std::exp(kI * global_phase) * kron2(post0, post1) *
         canonical_gate(theta_xx, theta_yy, theta_zz) * kron2(pre0, pre1);
}

CartanFactors cartan_decompose(const Mat4& u) {
  const RawExtraction r = raw_extract(u);
  Mat4 dinv = Mat4::Zero();
  for (int i = 0; i < 4; ++i) dinv(i, i) = std::exp(-kI * r.phi(i));
  const Mat4 k = r.umb * r.o1.transpose() * dinv;
  if (k.imag().cwiseAbs().maxCoeff() > 1e-8)
    throw DecompositionError("cartan: orthogonal factor extraction residual");
  const Eigen::Matrix4d o2t = k.real();

  const ProductGate g2 = factor_product_gate(from_magic_basis(o2t.cast<cplx>()));
  const ProductGate g1 = factor_product_gate(from_magic_basis(r.o1.cast<cplx>()));

  const Plan plan = make_plan(raw_thetas(r.phi));
  Working w;
  w.pre0 = g1.a;
  w.pre1 = g1.b;
  w.post0 = g2.a;
  w.post1 = g2.b;
  w.phase = r.lift_phase + r.phi.sum() / 4.0 + g1.phase + g2.phase;
  replay(w, plan.moves);

  CartanFactors f;
  f.pre0 = w.pre0;
  f.pre1 = w.pre1;
  f.post0 = w.post0;
  f.post1 = w.post1;
  f.theta_xx = plan.t(0);
  f.theta_yy = plan.t(1);
  f.theta_zz = plan.t(2);
  f.global_phase = w.phase;
  if (phase_distance(f.reconstruct(), u) > 1e-10)
    throw DecompositionError("cartan: reconstruction residual too large");
  return f;
}

double cartan_volume(const Mat4& u) {
  const RawExtraction r = raw_extract(u);
  const Plan plan = make_plan(raw_thetas(r.phi));
  const double tr = 0.25 * (r.umb.transpose() * r.umb).trace().imag();
  return plan.quarter_folds % 2 == 0 ? tr : -tr;
}

double l1_phases(const CartanFactors& f) {
  return std::abs(f.theta_xx) + std::abs(f.theta_yy) + std::abs(f.theta_zz);
}

}  // namespace mqc
