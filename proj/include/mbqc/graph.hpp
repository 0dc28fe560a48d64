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

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mbqc/clifford.hpp"
#include "mbqc/dense.hpp"

namespace mbqc {

using Edge = std::pair<int, int>;

// Undirected simple graph over non-negative integer vertex ids.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  static Graph from_edges(int n, const std::vector<Edge>& edges);

  void add_vertex(int v);
  void remove_vertex(int v);
  bool has_vertex(int v) const { return adj_.count(v) != 0; }

  void add_edge(int a, int b);
  void remove_edge(int a, int b);
  void toggle_edge(int a, int b);
  bool has_edge(int a, int b) const;

  const std::set<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  std::vector<int> vertices() const;
  int num_vertices() const { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const;
  // Each edge once as (a, b) with a < b, sorted lexicographically.
  std::vector<Edge> edges() const;
  int max_vertex() const { return adj_.empty() ? -1 : adj_.rbegin()->first; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::map<int, std::set<int>> adj_;
};

// Per-vertex single-qubit Clifford; absent vertices carry the identity.
class LocalCliffordRecord {
 public:
  Clifford at(int v) const;
  void set(int v, Clifford c);
  void erase(int v) { map_.erase(v); }
  // C_v <- C_v * c
  void right_multiply(int v, Clifford c) { set(v, at(v) * c); }
  // Vertex-wise product (*this)_v * rhs_v.
  LocalCliffordRecord compose(const LocalCliffordRecord& rhs) const;
  const std::map<int, Clifford>& entries() const { return map_; }

 private:
  std::map<int, Clifford> map_;
};

Graph local_complement(const Graph& g, int a);
void local_complement_inplace(Graph& g, int a);

// sqrt(+iX) at a and sqrt(-iZ) on N(a): |tau_a G> = U |G>.
LocalCliffordRecord lc_unitary(const Graph& g, int a);

// LC at v on a state written as rec|g>. The record absorbs the inverse of
// the LC unitary so that rec|g> is unchanged as a state.
void local_complement_with_record(Graph& g, LocalCliffordRecord& rec, int v);

// Qubit k of the returned vector is the k-th vertex in ascending id order.
State graph_state_vector(const Graph& g, const std::map<int, Qubit1>& input_overrides = {},
                         int limit = kDenseQubitLimit);

// Applies the record to a vector laid out as graph_state_vector(g).
State apply_record(const Graph& g, const LocalCliffordRecord& rec, State psi);

std::vector<PauliString> stabilizer_generators(const Graph& g);

struct PauliRewrite {
  Graph graph;
  LocalCliffordRecord record;
  int outcome = 0;
};

// Chooses b0 for an X measurement of `a`; the candidate set is N(a).
using NeighborChooser = std::function<int(const Graph&, int a)>;

// Measures Pauli `basis` at `a` on the state rec|g>, rewriting graph and
// record in place so that the post-measurement state on the remaining
// vertices is rec|g> again (up to normalization). outcome = -1 picks 0
// unless that branch is impossible. Returns the realized outcome.
int measure_pauli_inplace(Graph& g, LocalCliffordRecord& rec, int a, Pauli basis, int outcome,
                          const NeighborChooser& choose_b0 = {});

// Pure form with the default lowest-index b0.
PauliRewrite simulate_pauli_measurement(const Graph& g, int a, Pauli basis, int outcome);

struct OrbitResult {
  std::vector<Graph> members;
  // LC vertex sequence reaching each member from the seed.
  std::vector<std::vector<int>> sequences;
  bool truncated = false;
};

OrbitResult lc_orbit(const Graph& g, std::size_t max_members);

std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

}  // namespace mbqc
