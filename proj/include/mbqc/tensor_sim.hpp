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

// Exact tensor-network execution of measurement patterns, plus the dense
// reference simulator that every equivalence test compares against.

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mbqc/dense.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

// Row-major array; axis k runs over legs[k] with extent dims[k].
struct TensorNode {
  int id = -1;
  std::vector<int> legs;
  std::vector<int> dims;
  std::vector<cd> data;

  std::size_t size() const { return data.size(); }
};

// Contracts every leg shared by a and b. Result legs: a's free legs, then b's.
TensorNode contract_pair(const TensorNode& a, const TensorNode& b, int new_id);

class TensorNetwork {
 public:
  int add_node(std::vector<int> legs, std::vector<int> dims, std::vector<cd> data);
  int new_leg() { return next_leg_++; }
  void remove_node(int id);
  const std::map<int, TensorNode>& nodes() const { return nodes_; }
  const TensorNode& node(int id) const { return nodes_.at(id); }
  // Legs attached to exactly one node.
  std::vector<int> open_legs() const;
  // Node ids sharing leg `leg` (one or two).
  std::vector<int> owners(int leg) const;

  int next_node_id() const { return next_node_; }

  // Physical leg currently carrying vertex v (absent once measured).
  std::map<int, int> physical;

  // Replace nodes a and b by their contraction; returns the new id.
  int contract_nodes(int a, int b);

 private:
  std::map<int, TensorNode> nodes_;
  std::map<int, std::vector<int>> leg_owners_;
  int next_node_ = 0;
  int next_leg_ = 0;
};

// T[i, o, k]: k = 0 gives delta(i, o); k = 1 gives i*sqrt2 delta(i, o) [i = 1].
// Two copies sharing k contract to CZ because (i*sqrt2)^2 = -2.
std::pair<TensorNode, TensorNode> cz_tensor_pair();

// Vertex nodes in ascending id order, then per edge (a < b, sorted) one CZ
// tensor on each endpoint. Input vertices carry in_frame * state.
TensorNetwork build_peps(const MeasurementPattern& p, const std::vector<Qubit1>& input_states);

void apply_measurement(TensorNetwork& tn, int vertex, const MeasurementBasis& basis, int outcome,
                       double resolved_angle);

// Sequence of node-id pairs to contract.
struct ContractionPlan {
  std::vector<std::pair<int, int>> steps;
};

// Greedy: contract the shared edge whose result is smallest, ties by lowest
// leg id; disconnected pieces are joined smallest first at the end.
ContractionPlan greedy_plan(const TensorNetwork& tn);
// Uniformly random pair of connected nodes at every step.
ContractionPlan random_plan(const TensorNetwork& tn, std::uint64_t seed);
TensorNode contract(TensorNetwork tn, const ContractionPlan& plan);
TensorNode contract(const TensorNetwork& tn);

std::size_t network_size(const TensorNetwork& tn);

// Output vector with qubit j (bit j) on the physical leg of outputs[j].
State output_state(const TensorNode& final_node, const std::map<int, int>& physical,
                   const std::vector<int>& outputs);

// Σ_k c_k <psi|P_k|psi>; psi must be normalized. Throws if the imaginary
// residue exceeds 1e-9.
double expectation_value(const State& psi, const std::vector<PauliTerm>& terms);

// Executes p on the given inputs and outcomes; returns the unnormalized raw
// output register (no byproduct or frame applied).
State tn_run(const MeasurementPattern& p, const std::vector<Qubit1>& inputs,
             const Outcomes& outcomes, const std::vector<double>& params = {});

// Reusable executor: builds the network skeleton once and replays a cached
// contraction plan for different angles.
class PatternExecutor {
 public:
  explicit PatternExecutor(MeasurementPattern p);
  State run(const std::vector<Qubit1>& inputs, const Outcomes& outcomes,
            const std::vector<double>& params);
  const MeasurementPattern& pattern() const { return p_; }

 private:
  MeasurementPattern p_;
  std::vector<int> order_;
  bool planned_ = false;
  ContractionPlan plan_;
};

// Applies out_frame then the realized byproduct to a raw output register.
State correct_output(const MeasurementPattern& p, const Outcomes& outcomes, State raw);

// --- Dense reference ------------------------------------------------------

// Sequential dense execution on product inputs; normalized raw output
// register. The qubit limit applies to the peak number of live qubits.
State dense_run(const MeasurementPattern& p, const std::vector<Qubit1>& inputs,
                const Outcomes& outcomes, const std::vector<double>& params = {},
                int limit = kDenseQubitLimit);

// Corrected linear map (2^|outputs| x 2^|inputs|) of one outcome branch,
// with an input index carried alongside the live qubits.
Eigen::MatrixXcd implemented_map(const MeasurementPattern& p, const Outcomes& outcomes,
                                 const std::vector<double>& params = {},
                                 int limit = kDenseQubitLimit);

struct BranchCheck {
  double worst = 0.0;
  int branches = 0;
  int impossible = 0;
};

// Max unitary_distance over outcome branches: all of them when there are at
// most `exhaustive_max` measured vertices, else `samples` random ones.
BranchCheck check_branches(const MeasurementPattern& p, const Eigen::MatrixXcd& u,
                           const std::vector<double>& params = {}, int exhaustive_max = 10,
                           int samples = 256, std::uint64_t seed = 0,
                           int limit = kDenseQubitLimit);

}  // namespace mbqc
