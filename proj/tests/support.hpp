// Copyright 2026 The mbqc Authors
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

// Shared generators and independent dense oracles for the test suites.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mbqc/dense.hpp"
#include "mbqc/gate_factory.hpp"
#include "mbqc/graph.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc::testing {

inline constexpr double kPi = std::numbers::pi;

// Every labelled graph on n vertices, optionally only the connected ones.
inline std::vector<Graph> all_graphs(int n, bool connected_only) {
  std::vector<Edge> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  std::vector<Graph> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> e;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (mask >> k & 1) e.push_back(pairs[k]);
    }
    Graph g = Graph::from_edges(n, e);
    if (connected_only) {
      std::vector<int> seen{0}, stack{0};
      std::vector<bool> mark(static_cast<std::size_t>(n), false);
      mark[0] = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
          if (!mark[static_cast<std::size_t>(w)]) {
            mark[static_cast<std::size_t>(w)] = true;
            stack.push_back(w);
          }
        }
      }
      bool conn = true;
      for (bool m : mark) conn = conn && m;
      if (!conn) continue;
    }
    out.push_back(std::move(g));
  }
  return out;
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (coin(rng)) g.add_edge(a, b);
    }
  }
  return g;
}

inline double random_angle(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng);
}

inline Qubit1 random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Qubit1 q{cd{g(rng), g(rng)}, cd{g(rng), g(rng)}};
  const double n = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
  return {q[0] / n, q[1] / n};
}

// Arbitrary open-graph pattern: random graph, disjoint inputs and outputs,
// random bases with dependencies on lower measured vertices. Not
// necessarily deterministic; useful for simulator equivalence.
inline MeasurementPattern random_pattern(std::mt19937_64& rng, int min_qubits, int max_qubits) {
  const int n = std::uniform_int_distribution<int>(min_qubits, max_qubits)(rng);
  MeasurementPattern p;
  p.graph = random_graph(n, 0.4, rng);
  const int nin = std::uniform_int_distribution<int>(1, std::min(3, n - 1))(rng);
  const int nout = std::uniform_int_distribution<int>(1, std::min(3, n - nin))(rng);
  for (int k = 0; k < nin; ++k) p.inputs.push_back(k);
  for (int k = n - nout; k < n; ++k) p.outputs.push_back(k);
  std::bernoulli_distribution coin(0.3);
  std::uniform_int_distribution<int> kind(0, 5);
  std::vector<int> measured;
  for (int v = 0; v < n - nout; ++v) {
    const auto k = static_cast<BasisKind>(kind(rng));
    if (is_pauli_kind(k)) {
      p.bases[v] = MeasurementBasis::pauli(pauli_of_kind(k));
    } else {
      DepSet s, t;
      for (int u : measured) {
        if (coin(rng)) s.insert(u);
        if (coin(rng)) t.insert(u);
      }
      p.bases[v] = MeasurementBasis::plane(k, Angle::constant(random_angle(rng)), s, t);
    }
    measured.push_back(v);
  }
  p.byproduct.resize(static_cast<std::size_t>(nout));
  for (auto& e : p.byproduct) {
    for (int u : measured) {
      if (coin(rng)) e.sx.insert(u);
      if (coin(rng)) e.sz.insert(u);
    }
  }
  std::uniform_int_distribution<int> cl(0, Clifford::kOrder - 1);
  if (coin(rng)) p.in_frame[p.inputs[0]] = Clifford::from_index(cl(rng));
  if (coin(rng)) p.out_frame[p.outputs[0]] = Clifford::from_index(cl(rng));
  p.validate();
  return p;
}

// Random numeric circuit over every gate kind the factory knows.
inline CircuitIR random_circuit(int n, int gates, std::mt19937_64& rng) {
  CircuitIR c;
  c.n = n;
  std::uniform_int_distribution<int> kind_dist(0, 6);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  while (static_cast<int>(c.gates.size()) < gates) {
    Gate g;
    const int k = kind_dist(rng);
    if (n < 2 && (k == 4 || k == 5)) continue;
    switch (k) {
      case 0: g.kind = GateKind::Rx; break;
      case 1: g.kind = GateKind::Rz; break;
      case 2: g.kind = GateKind::Euler; break;
      case 3: g.kind = GateKind::H; break;
      case 4: g.kind = GateKind::CZ; break;
      case 5: g.kind = GateKind::CNOT; break;
      default: g.kind = GateKind::PhaseGadget; break;
    }
    if (k == 4 || k == 5) {
      const int a = qubit(rng);
      int b = qubit(rng);
      while (b == a) b = qubit(rng);
      g.qubits = {a, b};
    } else if (k == 6) {
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(static_cast<std::size_t>(std::uniform_int_distribution<int>(1, n)(rng)));
      std::sort(all.begin(), all.end());
      g.qubits = all;
    } else {
      g.qubits = {qubit(rng)};
    }
    const int na = k == 2 ? 3 : (k <= 1 || k == 6 ? 1 : 0);
    for (int i = 0; i < na; ++i) g.angles.push_back(GateAngle::number(random_angle(rng)));
    c.gates.push_back(g);
  }
  return c;
}

// Projects qubit k of an n-qubit state onto the (-1)^outcome eigenvector of
// p and returns the remaining (n-1)-qubit state, unnormalized.
inline State dense_measure(const State& psi, int n, int k, Pauli p, int outcome) {
  const Mat2& m = pauli_matrix(p);
  // Eigenvector e with m e = s e, s = +-1.
  const double s = outcome ? -1.0 : 1.0;
  Qubit1 e;
  if (p == Pauli::Z) {
    e = outcome ? Qubit1{cd{0, 0}, cd{1, 0}} : Qubit1{cd{1, 0}, cd{0, 0}};
  } else {
    // (1, s * m10) / sqrt2 works for X and Y.
    e = {cd{M_SQRT1_2, 0}, s * m[2] * M_SQRT1_2};
  }
  State out(std::size_t{1} << (n - 1));
  const std::size_t low = (std::size_t{1} << k) - 1;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t i0 = ((j & ~low) << 1) | (j & low);
    const std::size_t i1 = i0 | (std::size_t{1} << k);
    out[j] = std::conj(e[0]) * psi[i0] + std::conj(e[1]) * psi[i1];
  }
  return out;
}

}  // namespace mbqc::testing
