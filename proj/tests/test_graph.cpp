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

#include <gtest/gtest.h>

#include <random>

#include "mbqc/errors.hpp"
#include "mbqc/graph.hpp"
#include "support.hpp"

namespace mbqc {
namespace {

using testing::all_graphs;
using testing::dense_measure;
using testing::random_graph;

TEST(GraphTest, EdgeBookkeeping) {
  Graph g(3);
  g.add_edge(0, 1);
  g.toggle_edge(1, 2);
  g.toggle_edge(0, 1);
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_THROW(g.add_edge(0, 0), InvalidArgument);
  EXPECT_THROW(g.neighbors(7), InvalidArgument);
  g.remove_vertex(1);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_EQ(g.vertices(), (std::vector<int>{0, 2}));
}

TEST(GraphTest, StabilizersFixGraphState) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(5, 0.5, rng);
    State psi = graph_state_vector(g);
    for (const PauliString& k : stabilizer_generators(g)) {
      EXPECT_NEAR(std::abs(expectation(psi, k) - cd{1, 0}), 0.0, 1e-12);
    }
  }
}

TEST(GraphTest, LocalComplementTogglesNeighbourhood) {
  Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  Graph g = local_complement(star, 0);
  EXPECT_TRUE(g.has_edge(1, 2) && g.has_edge(1, 3) && g.has_edge(2, 3));
  EXPECT_EQ(local_complement(g, 0), star);
}

// Exhaustive oracle over connected graphs up to five vertices.
TEST(GraphTest, LocalComplementMatchesUnitary) {
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (const Graph& g : all_graphs(n, true)) {
      const State psi = graph_state_vector(g);
      for (int a = 0; a < n; ++a) {
        const State lhs = graph_state_vector(local_complement(g, a));
        const State rhs = apply_record(g, lc_unitary(g, a), psi);
        worst = std::max(worst, phase_distance(lhs, rhs));
      }
    }
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(GraphTest, RecordPreservesStateUnderLc) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_graph(5, 0.5, rng);
    LocalCliffordRecord rec;
    const State before = graph_state_vector(g);
    Graph h = g;
    for (int k = 0; k < 4; ++k) {
      local_complement_with_record(h, rec, static_cast<int>(rng() % 5));
    }
    EXPECT_LE(phase_distance(before, apply_record(h, rec, graph_state_vector(h))), 1e-9);
  }
}

State post_state(const PauliRewrite& rw, int a) {
  Graph h = rw.graph;
  if (h.has_vertex(a)) {
    EXPECT_EQ(h.degree(a), 0);
    h.remove_vertex(a);
  }
  LocalCliffordRecord rec = rw.record;
  rec.erase(a);
  return apply_record(h, rec, graph_state_vector(h));
}

TEST(GraphTest, PauliMeasurementMatchesProjection) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Graph g = random_graph(n, 0.5, rng);
    const int a = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const State psi = graph_state_vector(g);
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      for (int o : {0, 1}) {
        const State proj = dense_measure(psi, n, a, p, o);
        if (norm(proj) < 1e-9) {
          EXPECT_THROW(simulate_pauli_measurement(g, a, p, o), ImpossibleBranch);
          continue;
        }
        const PauliRewrite rw = simulate_pauli_measurement(g, a, p, o);
        EXPECT_EQ(rw.outcome, o);
        EXPECT_LE(phase_distance(proj, post_state(rw, a)), 1e-9)
            << "basis " << pauli_char(p) << " outcome " << o;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(GraphTest, MeasurementPrefersPossibleOutcome) {
  Graph g(2);
  LocalCliffordRecord rec;
  EXPECT_EQ(measure_pauli_inplace(g, rec, 0, Pauli::X, -1), 0);
  Graph h(1);
  LocalCliffordRecord r2;
  r2.set(0, Clifford::pauli(Pauli::Z));  // state |->
  EXPECT_EQ(measure_pauli_inplace(h, r2, 0, Pauli::X, -1), 1);
}

TEST(GraphTest, OrbitSizes) {
  EXPECT_EQ(lc_orbit(Graph::from_edges(2, {{0, 1}}), 100).members.size(), 1u);
  const OrbitResult tri = lc_orbit(Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), 100);
  EXPECT_EQ(tri.members.size(), 4u);
  EXPECT_FALSE(tri.truncated);
  const OrbitResult cut = lc_orbit(Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), 2);
  EXPECT_TRUE(cut.truncated);
  EXPECT_EQ(cut.members.size(), 2u);
}

TEST(GraphTest, OrbitSequencesReachMembers) {
  const Graph seed = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const OrbitResult r = lc_orbit(seed, 1000);
  ASSERT_FALSE(r.truncated);
  for (std::size_t k = 0; k < r.members.size(); ++k) {
    Graph g = seed;
    for (int v : r.sequences[k]) local_complement_inplace(g, v);
    EXPECT_EQ(g, r.members[k]);
  }
}

TEST(GraphTest, JsonRoundTrip) {
  Graph g = Graph::from_edges(4, {{0, 3}, {1, 2}});
  EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
  Graph sparse;
  sparse.add_vertex(2);
  sparse.add_vertex(9);
  sparse.add_edge(2, 9);
  EXPECT_EQ(graph_from_json(graph_to_json(sparse)), sparse);
  EXPECT_THROW(graph_from_json("{\"n\": 2, \"edges\": [[0, 5]]}"), InvalidArgument);
  EXPECT_THROW(graph_from_json("not json"), ParseError);
}

TEST(GraphTest, DenseLimit) {
  EXPECT_THROW(graph_state_vector(Graph(kDenseQubitLimit + 1)), ResourceLimit);
}

}  // namespace
}  // namespace mbqc
