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

#include "mqc/pullback.hpp"

#include <cmath>

namespace mqc {

namespace {

constexpr cplx kI{0.0, 1.0};

// Orthonormal basis of the Y(x)Y eigenspaces; every operator generated by
// {ZZ, XX, Y(x)1, 1(x)Y} is block diagonal here.
const Mat4& block_basis() {
  static const Mat4 q = [] {
    const double s = 1.0 / std::sqrt(2.0);
    Mat4 v;
    // columns: (|00>-|11>), (|01>+|10>), (|00>+|11>), (|01>-|10>)
    v << s, 0, s, 0,  //
        0, s, 0, s,   //
        0, s, 0, -s,  //
        -s, 0, s, 0;
    return v;
  }();
  return q;
}

Mat2 r_y(double t) {
  return rot(Axis::Y, t);
}
Mat2 r_z(double t) {
  return rot(Axis::Z, t);
}

struct Blocks {
  Mat2 plus, minus;
};

Blocks blocks_of(const Mat4& v) {
  const Mat4 vb = block_basis().adjoint() * v * block_basis();
  const double off = std::max(vb.block<2, 2>(0, 2).cwiseAbs().maxCoeff(),
                              vb.block<2, 2>(2, 0).cwiseAbs().maxCoeff());
  if (off > 1e-10)
    throw DecompositionError("y_pullback: operator leaves the YY blocks");
  return {vb.block<2, 2>(0, 0), vb.block<2, 2>(2, 2)};
}

// Solve g = r_y(psi) r_z(m) r_y(chi) exactly for prescribed middle m;
// requires |cos(m/2)| to match the intrinsic value.
std::pair<double, double> yzy_prescribed(const Mat2& g, double m) {
  const cplx al = g(0, 0), be = g(1, 0);
  const cplx p = cplx(al.real(), be.real());
  const cplx q = cplx(-al.imag(), be.imag());
  const double c = std::cos(m / 2), s = std::sin(m / 2);
  if (std::abs(c) < 1e-12) {
    const double diff = -2.0 * std::arg(q / s);
    return {diff / 2.0, -diff / 2.0};
  }
  if (std::abs(s) < 1e-12) {
    const double sum = 2.0 * std::arg(p / c);
    return {sum / 2.0, sum / 2.0};
  }
  const double sum = 2.0 * std::arg(p / c);
  const double diff = -2.0 * std::arg(q / s);
  return {(sum + diff) / 2.0, (sum - diff) / 2.0};
}

struct FoldResult {
  double angle;
  int parity;
};

FoldResult fold_quarter(double t) {
  int k = static_cast<int>(std::floor((t + M_PI / 4) / (M_PI / 2)));
  if (t - k * (M_PI / 2) <= -M_PI / 4 + 1e-15) --k;
  return {t - k * (M_PI / 2), ((k % 2) + 2) % 2};
}

}  // namespace

Mat4 LHBareFactors::reconstruct() const {
  return czz(gamma) * cxx(beta) * kron2(b0, b1) * czz(alpha);
}

SplitLH split_lh(const Mat4& u) {
  const LHFactors f = lh_decompose(u);
  SplitLH out;
  out.push_forward0 = f.q0;
  out.push_forward1 = f.q1;
  out.bare.alpha = f.xi0;
  out.bare.b0 = f.p0;
  out.bare.b1 = f.p1;
  out.bare.beta = f.beta;
  out.bare.gamma = f.gamma;
  out.bare.phase = f.phase;
  return out;
}

Mat4 LHRHFactors::reconstruct() const {
  return std::exp(kI * phase) * czz(gamma_tilde) * kron2(a0, a1) *
         cxx(beta_tilde) * kron2(b0, b1) * czz(alpha);
}

LHRHFactors y_pullback(const LHBareFactors& bare, double t0, double t1) {
  // Only the segment left of the interior gates moves:
  //   (rot(Y,t0) (x) rot(Y,t1)) e^{i gamma ZZ} e^{i beta XX}
  const Mat4 v =
      kron2(r_y(t0), r_y(t1)) * czz(bare.gamma) * cxx(bare.beta);
  const Blocks vb = blocks_of(v);

  // The Z1 rotation equalizing the two blocks' middle-angle magnitudes:
  // Re(e^{i Z1} (w+ - w-)) = 0 with w = alpha^2 + conj(beta)^2 per block.
  const cplx wp = vb.plus(0, 0) * vb.plus(0, 0) +
                  std::conj(vb.plus(1, 0)) * std::conj(vb.plus(1, 0));
  const cplx wm = vb.minus(0, 0) * vb.minus(0, 0) +
                  std::conj(vb.minus(1, 0)) * std::conj(vb.minus(1, 0));
  const cplx dw = wp - wm;
  const double z1_base = std::abs(dw) < 1e-13 ? 0.0 : M_PI / 2 - std::arg(dw);

  LHRHFactors best;
  double best_err = 1e9;
  for (const double z1 : {z1_base, z1_base + M_PI}) {
    const Mat2 gp = r_z(-z1) * vb.plus;
    const Mat2 gm = r_z(-z1) * vb.minus;
    const cplx p = cplx(gp(0, 0).real(), gp(1, 0).real());
    const cplx q = cplx(-gp(0, 0).imag(), gp(1, 0).imag());
    const double mplus = 2.0 * std::atan2(std::abs(q), std::abs(p));
    const auto [psi_p, chi_p] = yzy_prescribed(gp, mplus);
    const auto [psi_m, chi_m] = yzy_prescribed(gm, -mplus);

    LHRHFactors f;
    f.alpha = bare.alpha;
    f.u0 = (psi_p - psi_m) / 2.0;
    f.u1 = (psi_p + psi_m) / 2.0;
    f.v0 = (chi_p - chi_m) / 2.0;
    f.v1 = (chi_p + chi_m) / 2.0;
    const FoldResult fc = fold_quarter(-z1 / 2.0);
    f.gamma_tilde = fc.angle;
    f.parity_z = fc.parity;
    const FoldResult fb = fold_quarter(mplus / 2.0);
    f.beta_tilde = fb.angle;
    f.parity_x = fb.parity;

    const Mat2 zp = f.parity_z ? Mat2(pauli_z()) : Mat2(Mat2::Identity());
    const Mat2 xp = f.parity_x ? Mat2(pauli_x()) : Mat2(Mat2::Identity());
    f.a0 = zp * r_y(f.u0);
    f.a1 = zp * r_y(f.u1);
    f.b0 = xp * r_y(f.v0) * bare.b0;
    f.b1 = xp * r_y(f.v1) * bare.b1;

    const Mat4 target = kron2(r_y(t0), r_y(t1)) * bare.reconstruct();
    f.phase = bare.phase;
    Mat4 rec = f.reconstruct() * std::exp(-kI * bare.phase);
    const cplx tr = (rec.adjoint() * target).trace();
    const double dphi = std::abs(tr) > 1e-9 ? std::arg(tr) : 0.0;
    f.phase = bare.phase + dphi;
    const double err = (target - std::exp(kI * dphi) * rec).norm();
    const bool ok = err < 1e-10;
    const bool replace =
        best_err > 1e-10 ? err < best_err
                         : (ok && std::abs(f.gamma_tilde) <
                                      std::abs(best.gamma_tilde) - 1e-15);
    if (replace) {
      best_err = std::min(err, best_err);
      best = f;
    }
  }
  if (best_err > 1e-10)
    throw DecompositionError("y_pullback: reconstruction residual");
  return best;
}

}  // namespace mqc
