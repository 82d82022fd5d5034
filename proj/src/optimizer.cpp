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

#include "mqc/optimizer.hpp"

#include "mqc/cartan.hpp"
#include "mqc/lhdecomp.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

namespace mqc {

namespace {

// 2-D Nelder-Mead (reflection / expansion / contraction / shrink).
struct Simplex2D {
  using Fn = std::function<double(double, double)>;

  static std::pair<Eigen::Vector2d, double> minimize(const Fn& f,
                                                     Eigen::Vector2d x0,
                                                     double step, double ftol,
                                                     int max_iter) {
    std::array<Eigen::Vector2d, 3> xs{x0, x0 + Eigen::Vector2d(step, 0),
                                      x0 + Eigen::Vector2d(0, step)};
    std::array<double, 3> fs;
    for (int i = 0; i < 3; ++i) fs[i] = f(xs[i](0), xs[i](1));
    for (int it = 0; it < max_iter; ++it) {
      std::array<int, 3> ord{0, 1, 2};
      std::sort(ord.begin(), ord.end(),
                [&](int a, int b) { return fs[a] < fs[b]; });
      const int lo = ord[0], mid = ord[1], hi = ord[2];
      if (std::abs(fs[hi] - fs[lo]) < ftol &&
          (xs[hi] - xs[lo]).norm() < 1e-10)
        break;
      const Eigen::Vector2d centroid = 0.5 * (xs[lo] + xs[mid]);
      const Eigen::Vector2d xr = centroid + (centroid - xs[hi]);
      const double fr = f(xr(0), xr(1));
      if (fr < fs[lo]) {
        const Eigen::Vector2d xe = centroid + 2.0 * (centroid - xs[hi]);
        const double fe = f(xe(0), xe(1));
        if (fe < fr) {
          xs[hi] = xe;
          fs[hi] = fe;
        } else {
          xs[hi] = xr;
          fs[hi] = fr;
        }
      } else if (fr < fs[mid]) {
        xs[hi] = xr;
        fs[hi] = fr;
      } else {
        const Eigen::Vector2d xc = centroid + 0.5 * (xs[hi] - centroid);
        const double fc = f(xc(0), xc(1));
        if (fc < fs[hi]) {
          xs[hi] = xc;
          fs[hi] = fc;
        } else {
          for (int i : {mid, hi}) {
            xs[i] = xs[lo] + 0.5 * (xs[i] - xs[lo]);
            fs[i] = f(xs[i](0), xs[i](1));
          }
        }
      }
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (fs[i] < fs[best]) best = i;
    return {xs[best], fs[best]};
  }
};

constexpr double kGauge = 2.0 / M_PI;  // radians of pair phase -> gauge nuc

// Assembles the alternating single/MQ structure.
struct Assembler {
  CompiledCircuit c;

  explicit Assembler(int n_qubits) {
    c.n_qubits = n_qubits;
    c.single_layers.emplace_back();
  }
  SingleLayer& single() { return c.single_layers.back(); }
  void push_mq(const MQLayer& l) {
    c.mq_layers.push_back(l);
    c.single_layers.emplace_back();
  }
  MQLayer fresh() const { return MQLayer{c.n_qubits, {}}; }
};

const Mat2& yy_dressing() {  // (v (x) v) e^{i t ZZ} (v (x) v)^dag = e^{i t YY}
  static const Mat2 v = rot(Axis::X, M_PI / 2);
  return v;
}

void emit_conjugated_pair_layer(Assembler& as, Axis axis,
                                const std::vector<SU4Block>& blocks,
                                const std::vector<double>& phases,
                                bool separate_gates) {
  // Emits the correlated-rotation sub-layer exp(i theta A(x)A) per block,
  // conjugated to ZZ form when axis != Z. With separate_gates each coupling
  // becomes its own MQ layer (the sequential two-qubit realization).
  const Mat2* dress = nullptr;
  if (axis == Axis::X) dress = &xx_to_zz(0).dressing;
  if (axis == Axis::Y) dress = &yy_dressing();
  if (dress)
    for (const SU4Block& b : blocks) {
      as.single().compose(b.q0, dress->adjoint());
      as.single().compose(b.q1, dress->adjoint());
    }
  if (separate_gates) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      MQLayer l = as.fresh();
      l.add(blocks[i].q0, blocks[i].q1, phases[i]);
      as.push_mq(l);
    }
  } else {
    MQLayer l = as.fresh();
    for (std::size_t i = 0; i < blocks.size(); ++i)
      l.add(blocks[i].q0, blocks[i].q1, phases[i]);
    as.push_mq(l);
  }
  if (dress)
    for (const SU4Block& b : blocks) {
      as.single().compose(b.q0, *dress);
      as.single().compose(b.q1, *dress);
    }
}

CompiledCircuit compile_cartan_layers(const CircuitIR& c, bool separate_gates) {
  c.validate();
  Assembler as(c.n_qubits);
  for (std::size_t l = 0; l < c.layers.size(); ++l) {
    const auto& blocks = c.layers[l].blocks;
    std::vector<double> zz, yy, xx;
    std::vector<CartanFactors> fs;
    for (const SU4Block& b : blocks) {
      CartanFactors f;
      try {
        f = cartan_decompose(b.matrix);
      } catch (const Error& e) {
        throw DecompositionError("layer " + std::to_string(l) + " pair (" +
                                 std::to_string(b.q0) + "," +
                                 std::to_string(b.q1) + "): " + e.what());
      }
      fs.push_back(f);
      xx.push_back(f.theta_xx);
      yy.push_back(f.theta_yy);
      zz.push_back(f.theta_zz);
      as.single().compose(b.q0, f.pre0);
      as.single().compose(b.q1, f.pre1);
    }
    if (separate_gates) {
      // per block: its three gates in sequence
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::vector<SU4Block> one{blocks[i]};
        emit_conjugated_pair_layer(as, Axis::Z, one, {zz[i]}, true);
        emit_conjugated_pair_layer(as, Axis::Y, one, {yy[i]}, true);
        emit_conjugated_pair_layer(as, Axis::X, one, {xx[i]}, true);
      }
    } else {
      emit_conjugated_pair_layer(as, Axis::Z, blocks, zz, false);
      emit_conjugated_pair_layer(as, Axis::Y, blocks, yy, false);
      emit_conjugated_pair_layer(as, Axis::X, blocks, xx, false);
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      as.single().compose(blocks[i].q0, fs[i].post0);
      as.single().compose(blocks[i].q1, fs[i].post1);
    }
    if (!c.layers[l].permutation.empty())
      throw ValidationError(
          "compile: fold permutation layers with absorb_permutations first");
  }
  as.c.validate();
  return as.c;
}

struct PulledBlock {
  LHRHFactors f;
  bool pulled = false;        // false: plain bare form (phi = 0 everywhere)
  LHBareFactors bare;         // valid when !pulled
  double gamma() const { return pulled ? f.gamma_tilde : bare.gamma; }
  double beta() const { return pulled ? f.beta_tilde : bare.beta; }
  double alpha() const { return pulled ? f.alpha : bare.alpha; }
};

struct PipelineState {
  const CircuitIR* src = nullptr;
  CompileOptions opts;
  std::vector<std::vector<SU4Block>> blocks;  // mutable copies
  int warnings = 0;
};

double lh_l1_of(const Mat4& u) { return lh_decompose(u).l1(); }

// Search grid over [-pi/2, pi/2)^2 then simplex refinement.
std::pair<Eigen::Vector2d, double> grid_refine(
    const std::function<double(double, double)>& f, int grid, double ftol) {
  Eigen::Vector2d best_x(0, 0);
  double best_f = f(0, 0);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double a = -M_PI / 2 + M_PI * i / grid;
      const double b = -M_PI / 2 + M_PI * j / grid;
      const double v = f(a, b);
      if (v < best_f) {
        best_f = v;
        best_x = {a, b};
      }
    }
  auto [x, v] = Simplex2D::minimize(f, best_x, M_PI / (2.0 * grid), ftol, 300);
  if (v < best_f) return {x, v};
  return {best_x, best_f};
}

}  // namespace

CompileMode compile_mode_from_string(const std::string& s) {
  if (s == "naive3L" || s == "naive") return CompileMode::Naive3L;
  if (s == "fused") return CompileMode::Fused;
  if (s == "fused+optimized" || s == "optimized")
    return CompileMode::FusedOptimized;
  throw ValidationError("unknown compile mode: " + s);
}

std::string to_string(CompileMode m) {
  switch (m) {
    case CompileMode::Naive3L:
      return "naive3L";
    case CompileMode::Fused:
      return "fused";
    default:
      return "fused+optimized";
  }
}

void CompileOptions::validate() const {
  if (ry_grid_points < 8)
    throw ValidationError("CompileOptions: grid must have at least 8 points");
  if (refine_tolerance <= 0)
    throw ValidationError("CompileOptions: tolerance must be positive");
  if (sweeps < 1) throw ValidationError("CompileOptions: sweeps must be >= 1");
}

std::string OptimizerReport::to_json() const {
  std::ostringstream os;
  os << "{\"total_nuc\":" << total_nuc
     << ",\"cartan_baseline_nuc\":" << cartan_baseline_nuc
     << ",\"ratio\":" << ratio << ",\"mq_layer_count\":" << mq_layer_count
     << ",\"warnings\":" << warnings << ",\"wall_time_s\":" << wall_time_s
     << ",\"layer_nucs\":[";
  for (std::size_t i = 0; i < layer_nucs.size(); ++i) {
    if (i) os << ',';
    os << layer_nucs[i];
  }
  os << "]}";
  return os.str();
}

CompiledCircuit compile_naive(const CircuitIR& c) {
  return compile_cartan_layers(c, false);
}

CompiledCircuit sequential_tq_realization(const CircuitIR& c) {
  return compile_cartan_layers(c, true);
}

RyOptimum optimize_block_ry(const Mat4& g, int grid_points,
                            double refine_tolerance) {
  const double cartan_bound = l1_phases(cartan_decompose(g));
  const auto objective = [&](double a, double b) {
    return lh_l1_of(g * kron2(rot(Axis::Y, a), rot(Axis::Y, b)));
  };
  auto [x, v] = grid_refine(objective, grid_points, refine_tolerance * 0.01);
  RyOptimum out;
  out.y0 = x(0);
  out.y1 = x(1);
  out.l1 = v;
  out.factors =
      lh_decompose(g * kron2(rot(Axis::Y, out.y0), rot(Axis::Y, out.y1)));
  out.bound_met = v <= cartan_bound + refine_tolerance;
  return out;
}

namespace {

std::pair<CompiledCircuit, OptimizerReport> compile_lh_pipeline(
    const CircuitIR& src, const CompileOptions& opts, bool optimize) {
  src.validate();
  opts.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const int n = src.n_qubits;
  const int L = static_cast<int>(src.layers.size());
  if (L < 1) throw ValidationError("compile: need at least one layer");

  std::vector<std::vector<SU4Block>> blocks(L);
  for (int l = 0; l < L; ++l) {
    if (!src.layers[l].permutation.empty())
      throw ValidationError(
          "compile: fold permutation layers with absorb_permutations first");
    blocks[l] = src.layers[l].blocks;
  }

  Assembler as(n);
  int warnings = 0;

  // Layer-1 pre-rotation and its inverse as the opening single-qubit layer.
  if (optimize) {
    for (SU4Block& b : blocks[0]) {
      const RyOptimum r =
          optimize_block_ry(b.matrix, opts.ry_grid_points, opts.refine_tolerance);
      if (!r.bound_met) ++warnings;
      b.matrix = b.matrix * kron2(rot(Axis::Y, r.y0), rot(Axis::Y, r.y1));
      as.single().compose(b.q0, rot(Axis::Y, -r.y0));
      as.single().compose(b.q1, rot(Axis::Y, -r.y1));
    }
  }

  MQLayer pending = as.fresh();
  std::vector<Mat2> buffered(n, Mat2::Identity());
  std::vector<bool> has_buffered(n, false);
  const Mat2 hdress = xx_to_zz(0).dressing;

  for (int l = 0; l < L; ++l) {
    const bool last = l == L - 1;
    std::vector<SplitLH> split(blocks[l].size());
    for (std::size_t i = 0; i < blocks[l].size(); ++i) {
      try {
        split[i] = split_lh(blocks[l][i].matrix);
      } catch (const Error& e) {
        throw DecompositionError("layer " + std::to_string(l) + " pair (" +
                                 std::to_string(blocks[l][i].q0) + "," +
                                 std::to_string(blocks[l][i].q1) +
                                 ") split: " + e.what());
      }
    }

    std::vector<double> phi(n, 0.0);
    std::vector<PulledBlock> pulled(blocks[l].size());
    std::vector<LHFactors> tentative;

    if (!last) {
      // which current block touches each qubit
      std::vector<int> blk_of(n, -1);
      for (std::size_t i = 0; i < blocks[l].size(); ++i) {
        blk_of[blocks[l][i].q0] = static_cast<int>(i);
        blk_of[blocks[l][i].q1] = static_cast<int>(i);
      }
      auto pulled_of = [&](std::size_t i) {
        PulledBlock p;
        const int qa = blocks[l][i].q0, qb = blocks[l][i].q1;
        if (std::abs(phi[qa]) < 1e-15 && std::abs(phi[qb]) < 1e-15) {
          p.pulled = false;
          p.bare = split[i].bare;
        } else {
          p.pulled = true;
          p.bare = split[i].bare;
          p.f = y_pullback(split[i].bare, phi[qa], phi[qb]);
        }
        return p;
      };
      auto merged_gate = [&](int q) {
        Mat2 g = rot(Axis::Y, -phi[q]);
        if (blk_of[q] >= 0) {
          const SplitLH& s = split[blk_of[q]];
          g = (q == blocks[l][blk_of[q]].q0 ? s.push_forward0
                                            : s.push_forward1) *
              g;
        }
        return g;
      };
      auto tentative_of = [&](std::size_t j) {
        const SU4Block& b = blocks[l + 1][j];
        return lh_decompose(b.matrix *
                            kron2(merged_gate(b.q0), merged_gate(b.q1)));
      };

      for (std::size_t i = 0; i < blocks[l].size(); ++i)
        pulled[i] = pulled_of(i);
      tentative.resize(blocks[l + 1].size());
      for (std::size_t j = 0; j < blocks[l + 1].size(); ++j)
        tentative[j] = tentative_of(j);

      if (optimize) {
        const auto objective_now = [&]() {
          MQLayer boundary = as.fresh();
          for (std::size_t i = 0; i < blocks[l].size(); ++i)
            boundary.add(blocks[l][i].q0, blocks[l][i].q1, pulled[i].gamma());
          for (std::size_t j = 0; j < blocks[l + 1].size(); ++j)
            boundary.add(blocks[l + 1][j].q0, blocks[l + 1][j].q1,
                         tentative[j].xi0);
          double obj = nuclear_norm(boundary);
          for (const PulledBlock& p : pulled) obj += kGauge * std::abs(p.beta());
          for (const LHFactors& f : tentative)
            obj += kGauge * (std::abs(f.beta) + std::abs(f.gamma));
          return obj;
        };
        for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
          for (std::size_t j = 0; j < blocks[l + 1].size(); ++j) {
            const int qa = blocks[l + 1][j].q0, qb = blocks[l + 1][j].q1;
            const bool fa = blk_of[qa] >= 0;  // free only if active in layer l
            const bool fb = blk_of[qb] >= 0;
            if (!fa && !fb) continue;
            const auto eval = [&](double a, double b) {
              phi[qa] = fa ? a : 0.0;
              phi[qb] = fb ? b : 0.0;
              if (fa) pulled[blk_of[qa]] = pulled_of(blk_of[qa]);
              if (fb && blk_of[qb] != blk_of[qa])
                pulled[blk_of[qb]] = pulled_of(blk_of[qb]);
              tentative[j] = tentative_of(j);
              return objective_now();
            };
            double cur_a = phi[qa], cur_b = phi[qb];
            double best_f = eval(cur_a, cur_b);
            Eigen::Vector2d best_x(cur_a, cur_b);
            const int g = opts.ry_grid_points;
            for (int ii = 0; ii < g; ++ii)
              for (int jj = 0; jj < g; ++jj) {
                const double a = -M_PI / 2 + M_PI * ii / g;
                const double b = -M_PI / 2 + M_PI * jj / g;
                const double v = eval(a, b);
                if (v < best_f) {
                  best_f = v;
                  best_x = {a, b};
                }
              }
            auto [x, v] = Simplex2D::minimize(eval, best_x, M_PI / (2.0 * g),
                                              opts.refine_tolerance * 0.01, 200);
            if (v < best_f) best_x = x;
            eval(best_x(0), best_x(1));  // leave state at the optimum
          }
        }
      }

      // Emit: boundary MQ (pending + alphas), then interior of this layer.
      MQLayer boundary = pending;
      for (std::size_t i = 0; i < blocks[l].size(); ++i)
        boundary.add(blocks[l][i].q0, blocks[l][i].q1, pulled[i].alpha());
      as.push_mq(boundary);
      for (int q = 0; q < n; ++q)
        if (has_buffered[q]) {
          as.single().compose(q, buffered[q]);
          has_buffered[q] = false;
          buffered[q] = Mat2::Identity();
        }
      MQLayer beta_layer = as.fresh();
      for (std::size_t i = 0; i < blocks[l].size(); ++i) {
        const int qa = blocks[l][i].q0, qb = blocks[l][i].q1;
        const PulledBlock& p = pulled[i];
        const Mat2 b0 = p.pulled ? p.f.b0 : p.bare.b0;
        const Mat2 b1 = p.pulled ? p.f.b1 : p.bare.b1;
        as.single().compose(qa, Mat2(hdress.adjoint() * b0));
        as.single().compose(qb, Mat2(hdress.adjoint() * b1));
        beta_layer.add(qa, qb, p.beta());
      }
      as.push_mq(beta_layer);
      pending = as.fresh();
      for (std::size_t i = 0; i < blocks[l].size(); ++i) {
        const int qa = blocks[l][i].q0, qb = blocks[l][i].q1;
        const PulledBlock& p = pulled[i];
        as.single().compose(qa, hdress);
        as.single().compose(qb, hdress);
        if (p.pulled) {
          as.single().compose(qa, p.f.a0);
          as.single().compose(qb, p.f.a1);
        }
        pending.add(qa, qb, p.gamma());
      }

      // Merge push-forward gates and the inverse rotations into layer l+1.
      std::vector<bool> absorbed(n, false);
      for (SU4Block& b : blocks[l + 1]) {
        b.matrix = b.matrix * kron2(merged_gate(b.q0), merged_gate(b.q1));
        absorbed[b.q0] = absorbed[b.q1] = true;
      }
      for (std::size_t i = 0; i < blocks[l].size(); ++i)
        for (const int q : {blocks[l][i].q0, blocks[l][i].q1})
          if (!absorbed[q]) {
            buffered[q] = merged_gate(q) * buffered[q];
            has_buffered[q] = true;
          }
    } else {
      // Final layer: full LH decomposition closes the circuit.
      MQLayer boundary = pending;
      for (std::size_t i = 0; i < blocks[l].size(); ++i)
        boundary.add(blocks[l][i].q0, blocks[l][i].q1, split[i].bare.alpha);
      as.push_mq(boundary);
      for (int q = 0; q < n; ++q)
        if (has_buffered[q]) {
          as.single().compose(q, buffered[q]);
          has_buffered[q] = false;
          buffered[q] = Mat2::Identity();
        }
      MQLayer beta_layer = as.fresh();
      for (std::size_t i = 0; i < blocks[l].size(); ++i) {
        const int qa = blocks[l][i].q0, qb = blocks[l][i].q1;
        as.single().compose(qa, Mat2(hdress.adjoint() * split[i].bare.b0));
        as.single().compose(qb, Mat2(hdress.adjoint() * split[i].bare.b1));
        beta_layer.add(qa, qb, split[i].bare.beta);
      }
      as.push_mq(beta_layer);
      MQLayer gamma_layer = as.fresh();
      for (std::size_t i = 0; i < blocks[l].size(); ++i) {
        const int qa = blocks[l][i].q0, qb = blocks[l][i].q1;
        as.single().compose(qa, hdress);
        as.single().compose(qb, hdress);
        gamma_layer.add(qa, qb, split[i].bare.gamma);
      }
      as.push_mq(gamma_layer);
      for (std::size_t i = 0; i < blocks[l].size(); ++i) {
        as.single().compose(blocks[l][i].q0, split[i].push_forward0);
        as.single().compose(blocks[l][i].q1, split[i].push_forward1);
      }
    }
  }

  as.c.validate();
  OptimizerReport rep;
  rep.warnings = warnings;
  for (const MQLayer& ml : as.c.mq_layers)
    rep.layer_nucs.push_back(nuclear_norm(ml));
  rep.total_nuc = 0.0;
  for (double v : rep.layer_nucs) rep.total_nuc += v;
  rep.cartan_baseline_nuc = cartan_baseline_nuc(src);
  rep.ratio = rep.cartan_baseline_nuc > 0
                  ? rep.total_nuc / rep.cartan_baseline_nuc
                  : 0.0;
  rep.mq_layer_count = as.c.mq_layer_count();
  rep.wall_time_s = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t_start)
                        .count();
  return {as.c, rep};
}

}  // namespace

CompiledCircuit compile_fused(const CircuitIR& c) {
  CompileOptions opts;
  opts.mode = CompileMode::Fused;
  return compile_lh_pipeline(c, opts, false).first;
}

std::pair<CompiledCircuit, OptimizerReport> compile_optimized(
    const CircuitIR& c, const CompileOptions& opts) {
  return compile_lh_pipeline(c, opts, true);
}

std::pair<CompiledCircuit, OptimizerReport> compile_circuit(
    const CircuitIR& c, const CompileOptions& opts) {
  if (opts.mode == CompileMode::FusedOptimized)
    return compile_optimized(c, opts);
  const auto t0 = std::chrono::steady_clock::now();
  CompiledCircuit cc = opts.mode == CompileMode::Naive3L ? compile_naive(c)
                                                         : compile_fused(c);
  OptimizerReport rep;
  for (const MQLayer& ml : cc.mq_layers)
    rep.layer_nucs.push_back(nuclear_norm(ml));
  for (double v : rep.layer_nucs) rep.total_nuc += v;
  rep.cartan_baseline_nuc = cartan_baseline_nuc(c);
  rep.ratio = rep.cartan_baseline_nuc > 0
                  ? rep.total_nuc / rep.cartan_baseline_nuc
                  : 0.0;
  rep.mq_layer_count = cc.mq_layer_count();
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return {cc, rep};
}

double cartan_baseline_nuc(const CircuitIR& c) {
  double total = 0.0;
  for (const SU4Layer& l : c.layers)
    for (const SU4Block& b : l.blocks)
      total += kGauge * l1_phases(cartan_decompose(b.matrix));
  return total;
}

double total_nuclear_norm(const CompiledCircuit& c) {
  double total = 0.0;
  for (const MQLayer& l : c.mq_layers) total += nuclear_norm(l);
  return total;
}

}  // namespace mqc
