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

#include <json.hpp>

#include <charconv>
#include <sstream>

namespace mqc {

namespace {

constexpr int kFormatVersion = 1;

// 17 significant digits; round-trips IEEE doubles exactly and keeps the
// output byte-deterministic across platforms.
std::string fmt(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                               std::chars_format::general, 17);
  return std::string(buf, p);
}

void write_cnum(std::ostream& os, const cplx& z) {
  os << '[' << fmt(z.real()) << ',' << fmt(z.imag()) << ']';
}

template <typename M>
void write_matrix(std::ostream& os, const M& m) {
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      write_cnum(os, m(i, j));
    }
    os << ']';
  }
  os << ']';
}

void write_header(std::ostream& os, int n_qubits) {
  os << "{\"version\":" << kFormatVersion << ",\"n_qubits\":" << n_qubits
     << ",\"layers\":[";
}

using nlohmann::json;

ValidationError layer_error(std::size_t layer, const std::string& what) {
  return ValidationError("layer " + std::to_string(layer) + ": " + what);
}

cplx parse_cnum(const json& j, std::size_t layer) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw layer_error(layer, "complex entries must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename M>
M parse_matrix(const json& j, std::size_t layer) {
  M m;
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != m.rows())
    throw layer_error(layer, "matrix row count mismatch");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m.cols())
      throw layer_error(layer, "matrix column count mismatch");
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) = parse_cnum(row[c], layer);
  }
  return m;
}

}  // namespace

std::string serialize(const CircuitIR& c) {
  c.validate();
  std::ostringstream os;
  write_header(os, c.n_qubits);
  bool first = true;
  for (const SU4Layer& layer : c.layers) {
    if (!first) os << ',';
    first = false;
    os << "{\"kind\":\"su4\",\"blocks\":[";
    for (std::size_t k = 0; k < layer.blocks.size(); ++k) {
      if (k) os << ',';
      const SU4Block& b = layer.blocks[k];
      os << "{\"pair\":[" << b.q0 << ',' << b.q1 << "],\"matrix\":";
      write_matrix(os, b.matrix);
      os << '}';
    }
    os << "]}";
    if (!layer.permutation.empty()) {
      os << ",{\"kind\":\"permute\",\"perm\":[";
      for (std::size_t q = 0; q < layer.permutation.size(); ++q) {
        if (q) os << ',';
        os << layer.permutation[q];
      }
      os << "]}";
    }
  }
  os << "]}";
  return os.str();
}

std::string serialize(const CompiledCircuit& c) {
  c.validate();
  std::ostringstream os;
  write_header(os, c.n_qubits);
  for (std::size_t k = 0; k <= c.mq_layers.size(); ++k) {
    if (k) os << ',';
    const SingleLayer& sl = c.single_layers[k];
    os << "{\"kind\":\"single\",\"gates\":[";
    for (std::size_t g = 0; g < sl.gates.size(); ++g) {
      if (g) os << ',';
      os << "{\"qubit\":" << sl.gates[g].first << ",\"matrix\":";
      write_matrix(os, sl.gates[g].second);
      os << '}';
    }
    os << "]}";
    if (k < c.mq_layers.size()) {
      os << ",{\"kind\":\"mq\",\"couplings\":[";
      bool firstc = true;
      for (const auto& [pair, theta] : c.mq_layers[k].couplings) {
        if (!firstc) os << ',';
        firstc = false;
        os << '[' << pair.first << ',' << pair.second << ',' << fmt(theta)
           << ']';
      }
      os << "]}";
    }
  }
  os << "]}";
  return os.str();
}

ParsedCircuit parse_qvc(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("qvc parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version"))
    throw ValidationError("qvc parse: missing mandatory version field");
  if (doc["version"].get<int>() != kFormatVersion)
    throw ValidationError("qvc parse: unsupported version");
  if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer())
    throw ValidationError("qvc parse: missing n_qubits");
  const int n = doc["n_qubits"].get<int>();
  if (!doc.contains("layers") || !doc["layers"].is_array())
    throw ValidationError("qvc parse: missing layers array");
  const json& layers = doc["layers"];

  bool has_su4 = false, has_compiled = false;
  for (const json& l : layers) {
    const std::string kind = l.value("kind", "");
    if (kind == "su4" || kind == "permute") has_su4 = true;
    if (kind == "single" || kind == "mq") has_compiled = true;
  }
  if (has_su4 && has_compiled)
    throw ValidationError("qvc parse: mixed su4 and compiled layers");

  ParsedCircuit out;
  if (!has_compiled) {
    CircuitIR c;
    c.n_qubits = n;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const json& l = layers[i];
      const std::string kind = l.value("kind", "");
      if (kind == "su4") {
        SU4Layer layer;
        if (!l.contains("blocks") || !l["blocks"].is_array())
          throw layer_error(i, "su4 layer needs a blocks array");
        for (const json& bj : l["blocks"]) {
          SU4Block b;
          if (!bj.contains("pair") || !bj["pair"].is_array() ||
              bj["pair"].size() != 2)
            throw layer_error(i, "block needs a [q0, q1] pair");
          b.q0 = bj["pair"][0].get<int>();
          b.q1 = bj["pair"][1].get<int>();
          if (!bj.contains("matrix")) throw layer_error(i, "block needs a matrix");
          b.matrix = parse_matrix<Mat4>(bj["matrix"], i);
          layer.blocks.push_back(b);
        }
        c.layers.push_back(std::move(layer));
      } else if (kind == "permute") {
        if (c.layers.empty()) throw layer_error(i, "permute before any su4 layer");
        if (!l.contains("perm") || !l["perm"].is_array())
          throw layer_error(i, "permute layer needs a perm array");
        std::vector<int> p;
        for (const json& v : l["perm"]) p.push_back(v.get<int>());
        c.layers.back().permutation = std::move(p);
      } else {
        throw layer_error(i, "unknown layer kind");
      }
    }
    c.validate();
    out.ir = std::move(c);
    return out;
  }

  CompiledCircuit c;
  c.n_qubits = n;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const json& l = layers[i];
    const std::string kind = l.value("kind", "");
    if (kind == "single") {
      if (c.single_layers.size() != c.mq_layers.size())
        throw layer_error(i, "consecutive single layers");
      SingleLayer sl;
      if (!l.contains("gates") || !l["gates"].is_array())
        throw layer_error(i, "single layer needs a gates array");
      for (const json& gj : l["gates"]) {
        if (!gj.contains("qubit") || !gj.contains("matrix"))
          throw layer_error(i, "gate needs qubit and matrix");
        sl.gates.emplace_back(gj["qubit"].get<int>(),
                              parse_matrix<Mat2>(gj["matrix"], i));
      }
      c.single_layers.push_back(std::move(sl));
    } else if (kind == "mq") {
      if (c.single_layers.size() != c.mq_layers.size() + 1)
        throw layer_error(i, "mq layer must follow a single layer");
      MQLayer ml;
      ml.n_qubits = n;
      if (!l.contains("couplings") || !l["couplings"].is_array())
        throw layer_error(i, "mq layer needs a couplings array");
      for (const json& cj : l["couplings"]) {
        if (!cj.is_array() || cj.size() != 3)
          throw layer_error(i, "coupling must be [q0, q1, phase]");
        try {
          ml.add(cj[0].get<int>(), cj[1].get<int>(), cj[2].get<double>());
        } catch (const ValidationError& e) {
          throw layer_error(i, e.what());
        }
      }
      c.mq_layers.push_back(std::move(ml));
    } else {
      throw layer_error(i, "unknown layer kind");
    }
  }
  c.validate();
  out.compiled = std::move(c);
  return out;
}

}  // namespace mqc
