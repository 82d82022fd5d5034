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

#include "mqc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mqc {

namespace {
constexpr cplx kI{0.0, 1.0};
constexpr int kDenseQubitLimit = 12;

int bit_of(std::size_t index, int n_qubits, int q) {
  return static_cast<int>((index >> (n_qubits - 1 - q)) & 1u);
}
}  // namespace

void CircuitIR::validate() const {
  if (n_qubits < 1) throw ValidationError("circuit: n_qubits must be positive");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    std::vector<bool> used(n_qubits, false);
    for (const SU4Block& b : layers[l].blocks) {
      if (b.q0 < 0 || b.q1 < 0 || b.q0 >= n_qubits || b.q1 >= n_qubits ||
          b.q0 >= b.q1)
        throw ValidationError("layer " + std::to_string(l) +
                              ": bad qubit pair");
      if (used[b.q0] || used[b.q1])
        throw ValidationError("layer " + std::to_string(l) +
                              ": overlapping qubit pairs");
      used[b.q0] = used[b.q1] = true;
    }
    const auto& p = layers[l].permutation;
    if (!p.empty()) {
      if (static_cast<int>(p.size()) != n_qubits)
        throw ValidationError("layer " + std::to_string(l) +
                              ": permutation size mismatch");
      std::vector<bool> seen(n_qubits, false);
      for (int v : p) {
        if (v < 0 || v >= n_qubits || seen[v])
          throw ValidationError("layer " + std::to_string(l) +
                                ": permutation is not a bijection");
        seen[v] = true;
      }
    }
  }
}

void SingleLayer::compose(int qubit, const Mat2& g) {
  for (auto& [q, m] : gates) {
    if (q == qubit) {
      m = g * m;
      return;
    }
  }
  gates.emplace_back(qubit, g);
}

int CompiledCircuit::coupling_count(double tol) const {
  int n = 0;
  for (const MQLayer& l : mq_layers) n += l.nonzero_count(tol);
  return n;
}

void CompiledCircuit::validate() const {
  if (n_qubits < 1) throw ValidationError("circuit: n_qubits must be positive");
  if (single_layers.size() != mq_layers.size() + 1)
    throw ValidationError("compiled circuit: layer alternation broken");
  for (const SingleLayer& l : single_layers)
    for (const auto& [q, g] : l.gates)
      if (q < 0 || q >= n_qubits)
        throw ValidationError("compiled circuit: gate qubit out of range");
  for (const MQLayer& l : mq_layers)
    if (l.n_qubits != n_qubits)
      throw ValidationError("compiled circuit: MQ register size mismatch");
}

double HaarSampler::uniform() {
  // 53-bit mantissa from the raw stream; keeps the byte stream pinned.
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double HaarSampler::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2 * M_PI * u2);
  have_spare_ = true;
  return r * std::cos(2 * M_PI * u2);
}

namespace {
template <typename M>
M haar_unitary(HaarSampler& s) {
  M g;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      g(i, j) = cplx(s.normal(), s.normal());
  Eigen::HouseholderQR<M> qr(g);
  M q = qr.householderQ();
  const M r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const cplx d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1, 0);
  }
  const cplx det = q.determinant();
  return M(q * std::pow(det, -1.0 / static_cast<double>(g.rows())));
}
}  // namespace

Mat2 HaarSampler::su2() { return haar_unitary<Mat2>(*this); }
Mat4 HaarSampler::su4() { return haar_unitary<Mat4>(*this); }

std::vector<int> HaarSampler::permutation(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(bits() % static_cast<std::uint64_t>(i + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

CircuitIR generate_qv_circuit(int n_qubits, std::uint64_t seed, int n_layers) {
  if (n_qubits < 2)
    throw ValidationError("generate_qv_circuit: need at least 2 qubits");
  if (n_layers < 0) n_layers = n_qubits;
  HaarSampler sampler(seed);
  CircuitIR c;
  c.n_qubits = n_qubits;
  c.layers.resize(n_layers);
  for (int l = 0; l < n_layers; ++l) {
    const std::vector<int> p = sampler.permutation(n_qubits);
    for (int k = 0; k + 1 < n_qubits; k += 2) {
      SU4Block b;
      b.q0 = std::min(p[k], p[k + 1]);
      b.q1 = std::max(p[k], p[k + 1]);
      b.matrix = sampler.su4();
      c.layers[l].blocks.push_back(b);
    }
    std::sort(c.layers[l].blocks.begin(), c.layers[l].blocks.end(),
              [](const SU4Block& a, const SU4Block& b) { return a.q0 < b.q0; });
  }
  return c;
}

CompiledCircuit toffoli_mq_circuit() {
  // The underlined three-MQ-layer form of the Toffoli gate (controls on
  // qubits 1, 2; target 0), with the leading Hadamard that completes the
  // published identity.
  const Mat2 h = hadamard();
  auto zphase = [](double t) {
    return Mat2((Mat2() << std::exp(kI * t), 0, 0, std::exp(-kI * t))
                    .finished());
  };
  CompiledCircuit c;
  c.n_qubits = 3;
  c.single_layers.resize(4);
  c.mq_layers.assign(3, MQLayer{3, {}});

  // applied first: MQ layer with couplings (0,1), (0,2) at pi/4
  c.mq_layers[0].add(0, 1, M_PI / 4);
  c.mq_layers[0].add(0, 2, M_PI / 4);
  // then H e^{i pi/8 Z} H on qubit 0 and e^{-i pi/4 Z} on qubits 1, 2
  c.single_layers[1].compose(0, Mat2(h * zphase(M_PI / 8) * h));
  c.single_layers[1].compose(1, zphase(-M_PI / 4));
  c.single_layers[1].compose(2, zphase(-M_PI / 4));
  c.mq_layers[1].add(0, 1, M_PI / 4);
  c.mq_layers[1].add(0, 2, M_PI / 4);
  c.single_layers[2].compose(0, h);
  c.single_layers[2].compose(1, zphase(-M_PI / 4));
  c.single_layers[2].compose(2, zphase(-M_PI / 4));
  c.mq_layers[2].add(0, 1, M_PI / 8);
  c.mq_layers[2].add(0, 2, M_PI / 8);
  c.mq_layers[2].add(1, 2, M_PI / 8);
  c.single_layers[3].compose(0, Mat2(h * zphase(-M_PI / 8)));
  c.single_layers[3].compose(1, zphase(-M_PI / 8));
  c.single_layers[3].compose(2, zphase(-M_PI / 8));
  return c;
}

void apply_single_qubit(VecX& psi, int n_qubits, int q, const Mat2& g) {
  if (q < 0 || q >= n_qubits) throw SimulationError("gate qubit out of range");
  const std::size_t stride = std::size_t{1} << (n_qubits - 1 - q);
  const std::size_t dim = psi.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t k = 0; k < stride; ++k) {
      const cplx a0 = psi[base + k];
      const cplx a1 = psi[base + k + stride];
      psi[base + k] = g(0, 0) * a0 + g(0, 1) * a1;
      psi[base + k + stride] = g(1, 0) * a0 + g(1, 1) * a1;
    }
  }
}

void apply_two_qubit(VecX& psi, int n_qubits, int q0, int q1, const Mat4& g) {
  if (q0 == q1 || q0 < 0 || q1 < 0 || q0 >= n_qubits || q1 >= n_qubits)
    throw SimulationError("gate qubits out of range");
  const std::size_t s0 = std::size_t{1} << (n_qubits - 1 - q0);
  const std::size_t s1 = std::size_t{1} << (n_qubits - 1 - q1);
  const std::size_t dim = psi.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & s0) || (i & s1)) continue;
    const std::size_t i00 = i, i01 = i | s1, i10 = i | s0, i11 = i | s0 | s1;
    const cplx a00 = psi[i00], a01 = psi[i01], a10 = psi[i10], a11 = psi[i11];
    psi[i00] = g(0, 0) * a00 + g(0, 1) * a01 + g(0, 2) * a10 + g(0, 3) * a11;
    psi[i01] = g(1, 0) * a00 + g(1, 1) * a01 + g(1, 2) * a10 + g(1, 3) * a11;
    psi[i10] = g(2, 0) * a00 + g(2, 1) * a01 + g(2, 2) * a10 + g(2, 3) * a11;
    psi[i11] = g(3, 0) * a00 + g(3, 1) * a01 + g(3, 2) * a10 + g(3, 3) * a11;
  }
}

void apply_mq_layer(VecX& psi, int n_qubits, const MQLayer& layer) {
  if (layer.n_qubits != n_qubits)
    throw SimulationError("MQ layer register size mismatch");
  const std::size_t dim = psi.size();
  for (std::size_t i = 0; i < dim; ++i) {
    double phase = 0.0;
    for (const auto& [pair, theta] : layer.couplings) {
      const int za = 1 - 2 * bit_of(i, n_qubits, pair.first);
      const int zb = 1 - 2 * bit_of(i, n_qubits, pair.second);
      phase += theta * za * zb;
    }
    psi[i] *= std::exp(kI * phase);
  }
}

void apply_permutation(VecX& psi, int n_qubits, const std::vector<int>& perm) {
  if (perm.empty()) return;
  VecX out(psi.size());
  const std::size_t dim = psi.size();
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t j = 0;
    for (int q = 0; q < n_qubits; ++q)
      if (bit_of(i, n_qubits, q))
        j |= std::size_t{1} << (n_qubits - 1 - perm[q]);
    out[j] = psi[i];
  }
  psi = out;
}

namespace {

template <typename ApplyLayers>
MatX dense_unitary(int n_qubits, ApplyLayers&& apply) {
  if (n_qubits > kDenseQubitLimit)
    throw SimulationError("dense unitary limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << n_qubits;
  MatX u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    VecX psi = VecX::Zero(dim);
    psi[col] = 1.0;
    apply(psi);
    u.col(col) = psi;
  }
  return u;
}

}  // namespace

MatX circuit_unitary(const CircuitIR& c) {
  c.validate();
  return dense_unitary(c.n_qubits, [&](VecX& psi) {
    for (const SU4Layer& layer : c.layers) {
      for (const SU4Block& b : layer.blocks)
        apply_two_qubit(psi, c.n_qubits, b.q0, b.q1, b.matrix);
      apply_permutation(psi, c.n_qubits, layer.permutation);
    }
  });
}

MatX circuit_unitary(const CompiledCircuit& c) {
  c.validate();
  return dense_unitary(c.n_qubits, [&](VecX& psi) {
    for (std::size_t k = 0; k < c.mq_layers.size(); ++k) {
      for (const auto& [q, g] : c.single_layers[k].gates)
        apply_single_qubit(psi, c.n_qubits, q, g);
      apply_mq_layer(psi, c.n_qubits, c.mq_layers[k]);
    }
    for (const auto& [q, g] : c.single_layers.back().gates)
      apply_single_qubit(psi, c.n_qubits, q, g);
  });
}

MatX relabel_unitary(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const std::size_t dim = std::size_t{1} << n;
  MatX u = MatX::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t j = 0;
    for (int q = 0; q < n; ++q)
      if (bit_of(i, n, q)) j |= std::size_t{1} << (n - 1 - perm[q]);
    u(j, i) = 1.0;
  }
  return u;
}

FoldedCircuit absorb_permutations(const CircuitIR& c) {
  c.validate();
  FoldedCircuit out;
  out.circuit.n_qubits = c.n_qubits;
  // rho = composition of the permutations seen so far; blocks are rewired
  // through rho^{-1}, the final relabeling is rho itself.
  std::vector<int> rho(c.n_qubits), rho_inv(c.n_qubits);
  std::iota(rho.begin(), rho.end(), 0);
  std::iota(rho_inv.begin(), rho_inv.end(), 0);
  for (const SU4Layer& layer : c.layers) {
    SU4Layer folded;
    for (const SU4Block& b : layer.blocks) {
      SU4Block nb = b;
      nb.q0 = rho_inv[b.q0];
      nb.q1 = rho_inv[b.q1];
      if (nb.q0 > nb.q1) {
        std::swap(nb.q0, nb.q1);
        static const MatX swap_gate = [] {
          MatX s = MatX::Zero(4, 4);
          s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
          return s;
        }();
        nb.matrix = swap_gate * nb.matrix * swap_gate;
      }
      folded.blocks.push_back(nb);
    }
    std::sort(folded.blocks.begin(), folded.blocks.end(),
              [](const SU4Block& a, const SU4Block& b) { return a.q0 < b.q0; });
    out.circuit.layers.push_back(std::move(folded));
    if (!layer.permutation.empty()) {
      std::vector<int> nrho(c.n_qubits), ninv(c.n_qubits);
      for (int q = 0; q < c.n_qubits; ++q) nrho[q] = layer.permutation[rho[q]];
      for (int q = 0; q < c.n_qubits; ++q) ninv[nrho[q]] = q;
      rho = nrho;
      rho_inv = ninv;
    }
  }
  out.final_permutation = rho;
  return out;
}

int ParsedCircuit::n_qubits() const {
  if (ir) return ir->n_qubits;
  if (compiled) return compiled->n_qubits;
  throw ValidationError("empty parsed circuit");
}

MatX ParsedCircuit::unitary() const {
  if (ir) return circuit_unitary(*ir);
  if (compiled) return circuit_unitary(*compiled);
  throw ValidationError("empty parsed circuit");
}

}  // namespace mqc
