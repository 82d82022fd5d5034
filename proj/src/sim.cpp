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

#include "mqc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace mqc {

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 advance over the pair
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxSimQubits)
    throw SimulationError("statevector supports 1..14 qubits");
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes = VecX::Zero(std::size_t{1} << n_qubits);
  s.amplitudes[0] = 1.0;
  return s;
}

void StateVector::apply_single(int q, const Mat2& g) {
  apply_single_qubit(amplitudes, n_qubits, q, g);
}
void StateVector::apply_pair(int q0, int q1, const Mat4& g) {
  apply_two_qubit(amplitudes, n_qubits, q0, q1, g);
}
void StateVector::apply_mq(const MQLayer& l) {
  apply_mq_layer(amplitudes, n_qubits, l);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes.size());
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
    p[i] = std::norm(amplitudes[i]);
  return p;
}

StateVector run_circuit(const CompiledCircuit& c,
                        const std::vector<PauliInjection>& injections) {
  c.validate();
  StateVector s = StateVector::zero_state(c.n_qubits);
  std::size_t inj = 0;
  std::vector<PauliInjection> sorted = injections;
  std::sort(sorted.begin(), sorted.end(),
            [](const PauliInjection& a, const PauliInjection& b) {
              return a.layer != b.layer ? a.layer < b.layer : a.qubit < b.qubit;
            });
  for (std::size_t k = 0; k < c.mq_layers.size(); ++k) {
    for (const auto& [q, g] : c.single_layers[k].gates) s.apply_single(q, g);
    while (inj < sorted.size() && sorted[inj].layer == static_cast<int>(k)) {
      s.apply_single(sorted[inj].qubit, pauli(sorted[inj].axis));
      ++inj;
    }
    s.apply_mq(c.mq_layers[k]);
  }
  for (const auto& [q, g] : c.single_layers.back().gates) s.apply_single(q, g);
  return s;
}

HeavyOutputSet heavy_output_set(const CompiledCircuit& c) {
  HeavyOutputSet h;
  h.ideal_probabilities = run_circuit(c).probabilities();
  std::vector<double> sorted = h.ideal_probabilities;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  h.median = 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  h.heavy.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    h.heavy[i] = h.ideal_probabilities[i] > h.median;
    if (h.heavy[i]) {
      h.heavy_mass += h.ideal_probabilities[i];
      ++h.heavy_count;
    }
  }
  return h;
}

namespace {

// Per-layer injection probabilities for the noise model, cached per circuit.
std::vector<std::vector<double>> layer_probabilities(const CompiledCircuit& c,
                                                     const NoiseModel& noise) {
  std::vector<std::vector<double>> out;
  out.reserve(c.mq_layers.size());
  for (const MQLayer& l : c.mq_layers) out.push_back(injection_probabilities(l, noise));
  return out;
}

std::size_t sample_outcome(const std::vector<double>& probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;
}

}  // namespace

double heavy_output_probability(const CompiledCircuit& c,
                                const NoiseModel& noise, int shots,
                                std::uint64_t seed) {
  if (shots < 1) throw SimulationError("heavy_output_probability: shots >= 1");
  const HeavyOutputSet heavy = heavy_output_set(c);
  const auto site_probs = layer_probabilities(c, noise);
  bool any_noise = false;
  for (const auto& lp : site_probs)
    for (double p : lp)
      if (p > 0) any_noise = true;

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  long hits = 0;
  std::vector<PauliInjection> inj;
  for (int shot = 0; shot < shots; ++shot) {
    inj.clear();
    if (any_noise) {
      for (std::size_t l = 0; l < site_probs.size(); ++l)
        for (int q = 0; q < c.n_qubits; ++q) {
          const double p = site_probs[l][q];
          if (p <= 0) continue;
          if (uniform() < p) {
            Axis a = Axis::Z;
            if (noise.kind == NoiseKind::Depolarization) {
              const double r = uniform() * 3.0;
              a = r < 1.0 ? Axis::X : (r < 2.0 ? Axis::Y : Axis::Z);
            }
            inj.push_back({static_cast<int>(l), q, a});
          }
        }
    }
    std::size_t outcome;
    if (inj.empty()) {
      outcome = sample_outcome(heavy.ideal_probabilities, uniform());
    } else {
      const StateVector s = run_circuit(c, inj);
      outcome = sample_outcome(s.probabilities(), uniform());
    }
    if (heavy.heavy[outcome]) ++hits;
  }
  return static_cast<double>(hits) / shots;
}

long qv_shot_schedule(int n_qubits) {
  const double f = std::pow(n_qubits / 10.0, 4);
  return static_cast<long>(std::lround(1e4 * std::max(f, 1.0)));
}

double qv_scan_resolution(int n_qubits) {
  const double f = std::pow(10.0 / n_qubits, 2);
  return 1e-3 * std::min(f, 1.0);
}

std::string QVReport::to_json() const {
  std::ostringstream os;
  os << "{\"n_qubits\":" << n_qubits << ",\"compile_mode\":\"" << compile_mode
     << "\",\"noise\":\"" << noise_kind << "\",\"p_tq\":" << p_tq
     << ",\"n_circuits\":" << n_circuits
     << ",\"shots_per_circuit\":" << shots_per_circuit
     << ",\"shots_capped\":" << (shots_capped ? "true" : "false")
     << ",\"mean_hop\":" << mean_hop << ",\"stderr_hop\":" << stderr_hop
     << ",\"threshold\":" << threshold
     << ",\"pass\":" << (pass ? "true" : "false") << ",\"per_circuit_hop\":[";
  for (std::size_t i = 0; i < per_circuit_hop.size(); ++i) {
    if (i) os << ',';
    os << per_circuit_hop[i];
  }
  os << "]}";
  return os.str();
}

std::string QVReport::csv_header() {
  return "n_qubits,compile_mode,noise,p_tq,n_circuits,shots,mean_hop,"
         "stderr_hop,pass";
}

std::string QVReport::to_csv_row() const {
  std::ostringstream os;
  os << n_qubits << ',' << compile_mode << ',' << noise_kind << ',' << p_tq
     << ',' << n_circuits << ',' << shots_per_circuit << ',' << mean_hop << ','
     << stderr_hop << ',' << (pass ? 1 : 0);
  return os.str();
}

QVReport qv_pass(int n_qubits, const NoiseModel& noise, const QVConfig& cfg) {
  if (n_qubits > kMaxSimQubits)
    throw SimulationError("qv_pass: n_qubits beyond desk-scale limit");
  QVReport rep;
  rep.n_qubits = n_qubits;
  rep.compile_mode =
      cfg.tq_baseline ? "tq-sequential" : to_string(cfg.compile.mode);
  rep.noise_kind = to_string(noise.kind);
  rep.p_tq = noise.p_tq;
  rep.n_circuits = cfg.n_circuits;
  const long schedule = qv_shot_schedule(n_qubits);
  rep.shots_per_circuit =
      cfg.shot_cap > 0 ? std::min(cfg.shot_cap, schedule) : schedule;
  rep.shots_capped = rep.shots_per_circuit < schedule;
  rep.per_circuit_hop.assign(cfg.n_circuits, 0.0);

  const int jobs = std::max(1, cfg.jobs);
  auto run_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const std::uint64_t circuit_seed = mix_seed(cfg.seed, 2 * i);
      const CircuitIR ir = generate_qv_circuit(n_qubits, circuit_seed);
      CompiledCircuit cc;
      if (cfg.tq_baseline) {
        cc = sequential_tq_realization(ir);
      } else {
        cc = compile_circuit(ir, cfg.compile).first;
      }
      rep.per_circuit_hop[i] = heavy_output_probability(
          cc, noise, static_cast<int>(rep.shots_per_circuit),
          mix_seed(cfg.seed, 2 * i + 1));
    }
  };
  if (jobs == 1) {
    run_range(0, cfg.n_circuits);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (cfg.n_circuits + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      const int b = j * chunk, e = std::min(cfg.n_circuits, (j + 1) * chunk);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
    for (auto& t : pool) t.join();
  }

  double mean = 0.0;
  for (double h : rep.per_circuit_hop) mean += h;
  mean /= rep.n_circuits;
  double var = 0.0;
  for (double h : rep.per_circuit_hop) var += (h - mean) * (h - mean);
  var = rep.n_circuits > 1 ? var / (rep.n_circuits - 1) : 0.0;
  rep.mean_hop = mean;
  rep.stderr_hop = std::sqrt(var / rep.n_circuits);
  rep.pass = mean - 2.0 * rep.stderr_hop > rep.threshold;
  return rep;
}

ThresholdScan threshold_scan(int n_qubits, NoiseKind kind, const QVConfig& cfg,
                             double p_hi) {
  ThresholdScan scan;
  scan.resolution = qv_scan_resolution(n_qubits);
  auto passes = [&](double p) {
    NoiseModel m{kind, p};
    const QVReport r = qv_pass(n_qubits, m, cfg);
    scan.probes.emplace_back(p, r.pass);
    ++scan.evaluations;
    return r.pass;
  };
  double lo = 0.0, hi = p_hi;
  if (!passes(lo)) {
    scan.p_threshold = 0.0;
    return scan;
  }
  while (passes(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1.0) {
      hi = 1.0;
      break;
    }
  }
  while (hi - lo > scan.resolution) {
    const double mid = 0.5 * (lo + hi);
    if (passes(mid))
      lo = mid;
    else
      hi = mid;
  }
  scan.p_threshold = lo;
  return scan;
}

std::vector<long> noise_event_counts(const CompiledCircuit& c) {
  std::vector<long> counts(c.n_qubits, 0);
  for (const MQLayer& l : c.mq_layers) {
    const Eigen::MatrixXd m = l.abs_matrix();
    for (int q = 0; q < c.n_qubits; ++q)
      if (m.row(q).sum() > 0) ++counts[q];
  }
  return counts;
}

}  // namespace mqc
