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

#include "mbqc/tensor_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t product(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

// out[i_perm[0], i_perm[1], ...] = in[i_0, i_1, ...].
std::vector<cd> permute(const std::vector<cd>& in, const std::vector<int>& dims,
                        const std::vector<int>& perm) {
  const std::size_t rank = dims.size();
  bool identity = true;
  for (std::size_t k = 0; k < rank; ++k) identity = identity && perm[k] == static_cast<int>(k);
  if (identity) return in;
  std::vector<std::size_t> stride(rank, 1);
  for (std::size_t k = rank; k-- > 1;) stride[k - 1] = stride[k] * static_cast<std::size_t>(dims[k]);
  std::vector<std::size_t> pdims(rank), pstride(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    pdims[k] = static_cast<std::size_t>(dims[static_cast<std::size_t>(perm[k])]);
    pstride[k] = stride[static_cast<std::size_t>(perm[k])];
  }
  std::vector<cd> out(in.size());
  std::vector<std::size_t> idx(rank, 0);
  std::size_t src = 0;
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o] = in[src];
    for (std::size_t k = rank; k-- > 0;) {
      if (++idx[k] < pdims[k]) {
        src += pstride[k];
        break;
      }
      src -= pstride[k] * (pdims[k] - 1);
      idx[k] = 0;
    }
  }
  return out;
}

}  // namespace

TensorNode contract_pair(const TensorNode& a, const TensorNode& b, int new_id) {
  std::vector<int> pa_free, pa_shared, pb_shared, pb_free;
  for (std::size_t i = 0; i < a.legs.size(); ++i) {
    auto it = std::find(b.legs.begin(), b.legs.end(), a.legs[i]);
    if (it == b.legs.end()) {
      pa_free.push_back(static_cast<int>(i));
    } else {
      pa_shared.push_back(static_cast<int>(i));
      pb_shared.push_back(static_cast<int>(it - b.legs.begin()));
    }
  }
  for (std::size_t i = 0; i < b.legs.size(); ++i) {
    if (std::find(pb_shared.begin(), pb_shared.end(), static_cast<int>(i)) == pb_shared.end()) {
      pb_free.push_back(static_cast<int>(i));
    }
  }
  TensorNode out;
  out.id = new_id;
  std::size_t fa = 1, fb = 1, s = 1;
  for (int i : pa_free) {
    out.legs.push_back(a.legs[static_cast<std::size_t>(i)]);
    out.dims.push_back(a.dims[static_cast<std::size_t>(i)]);
    fa *= static_cast<std::size_t>(a.dims[static_cast<std::size_t>(i)]);
  }
  for (int i : pb_free) {
    out.legs.push_back(b.legs[static_cast<std::size_t>(i)]);
    out.dims.push_back(b.dims[static_cast<std::size_t>(i)]);
    fb *= static_cast<std::size_t>(b.dims[static_cast<std::size_t>(i)]);
  }
  for (std::size_t k = 0; k < pa_shared.size(); ++k) {
    const int da = a.dims[static_cast<std::size_t>(pa_shared[k])];
    if (da != b.dims[static_cast<std::size_t>(pb_shared[k])]) {
      throw InvalidArgument("shared leg dimension mismatch");
    }
    s *= static_cast<std::size_t>(da);
  }
  std::vector<int> perm_a = pa_free;
  perm_a.insert(perm_a.end(), pa_shared.begin(), pa_shared.end());
  std::vector<int> perm_b = pb_shared;
  perm_b.insert(perm_b.end(), pb_free.begin(), pb_free.end());
  std::vector<cd> da = permute(a.data, a.dims, perm_a);
  std::vector<cd> db = permute(b.data, b.dims, perm_b);
  out.data.assign(fa * fb, cd{0, 0});
  Eigen::Map<const RowMat> ma(da.data(), static_cast<Eigen::Index>(fa), static_cast<Eigen::Index>(s));
  Eigen::Map<const RowMat> mb(db.data(), static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(fb));
  Eigen::Map<RowMat> mo(out.data.data(), static_cast<Eigen::Index>(fa), static_cast<Eigen::Index>(fb));
  mo.noalias() = ma * mb;
  return out;
}

// --- Network -----------------------------------------------------------------

int TensorNetwork::add_node(std::vector<int> legs, std::vector<int> dims, std::vector<cd> data) {
  if (legs.size() != dims.size() || product(dims) != data.size()) {
    throw InvalidArgument("tensor shape does not match its data");
  }
  const int id = next_node_++;
  for (int l : legs) {
    auto& own = leg_owners_[l];
    if (own.size() >= 2) throw InvalidArgument("leg already joins two nodes");
    own.push_back(id);
  }
  nodes_[id] = TensorNode{id, std::move(legs), std::move(dims), std::move(data)};
  return id;
}

void TensorNetwork::remove_node(int id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw InvalidArgument("unknown tensor node");
  for (int l : it->second.legs) {
    auto& own = leg_owners_[l];
    own.erase(std::remove(own.begin(), own.end(), id), own.end());
    if (own.empty()) leg_owners_.erase(l);
  }
  nodes_.erase(it);
}

std::vector<int> TensorNetwork::open_legs() const {
  std::vector<int> out;
  for (const auto& [l, own] : leg_owners_) {
    if (own.size() == 1) out.push_back(l);
  }
  return out;
}

std::vector<int> TensorNetwork::owners(int leg) const {
  auto it = leg_owners_.find(leg);
  return it == leg_owners_.end() ? std::vector<int>{} : it->second;
}

int TensorNetwork::contract_nodes(int a, int b) {
  TensorNode c = contract_pair(nodes_.at(a), nodes_.at(b), -1);
  remove_node(a);
  remove_node(b);
  return add_node(std::move(c.legs), std::move(c.dims), std::move(c.data));
}

std::pair<TensorNode, TensorNode> cz_tensor_pair() {
  TensorNode t;
  t.legs = {0, 1, 2};
  t.dims = {2, 2, 2};
  t.data.assign(8, cd{0, 0});
  // index = 4 i + 2 o + k
  t.data[0] = 1.0;                          // i = o = 0, k = 0
  t.data[6] = 1.0;                          // i = o = 1, k = 0
  t.data[7] = cd{0, std::sqrt(2.0)};        // i = o = 1, k = 1
  TensorNode u = t;
  u.legs = {3, 4, 2};
  return {t, u};
}

TensorNetwork build_peps(const MeasurementPattern& p, const std::vector<Qubit1>& input_states) {
  if (input_states.size() != p.inputs.size()) {
    throw InvalidArgument("expected " + std::to_string(p.inputs.size()) + " input states, got " +
                          std::to_string(input_states.size()));
  }
  TensorNetwork tn;
  const double r = 1.0 / std::sqrt(2.0);
  for (int v : p.graph.vertices()) {
    Qubit1 q{cd{r, 0}, cd{r, 0}};
    auto it = std::find(p.inputs.begin(), p.inputs.end(), v);
    if (it != p.inputs.end()) {
      const Qubit1& s = input_states[static_cast<std::size_t>(it - p.inputs.begin())];
      const Mat2& f = p.input_frame(v).matrix();
      q = {f[0] * s[0] + f[1] * s[1], f[2] * s[0] + f[3] * s[1]};
    }
    const int leg = tn.new_leg();
    tn.add_node({leg}, {2}, {q[0], q[1]});
    tn.physical[v] = leg;
  }
  const TensorNode proto = cz_tensor_pair().first;
  for (auto [a, b] : p.graph.edges()) {
    const int bond = tn.new_leg();
    for (int x : {a, b}) {
      const int in = tn.physical.at(x);
      const int out = tn.new_leg();
      tn.add_node({in, out, bond}, {2, 2, 2}, proto.data);
      tn.physical[x] = out;
    }
  }
  return tn;
}

void apply_measurement(TensorNetwork& tn, int vertex, const MeasurementBasis& basis, int outcome,
                       double resolved_angle) {
  auto it = tn.physical.find(vertex);
  if (it == tn.physical.end()) {
    throw InvalidArgument("vertex " + std::to_string(vertex) + " has no free physical leg");
  }
  if (outcome != 0 && outcome != 1) throw InvalidArgument("outcome must be 0 or 1");
  const Qubit1 v = basis.outcome_vector(outcome, resolved_angle);
  const int leg = it->second;
  const int owner = tn.owners(leg).at(0);
  const int bra = tn.add_node({leg}, {2}, {std::conj(v[0]), std::conj(v[1])});
  tn.contract_nodes(owner, bra);
  tn.physical.erase(it);
}

// --- Contraction -------------------------------------------------------------

namespace {

struct Shape {
  std::vector<int> legs;
  std::vector<int> dims;
  std::size_t size = 1;
};

struct Skeleton {
  std::map<int, Shape> nodes;
  std::map<int, std::vector<int>> owners;
  int next = 0;

  explicit Skeleton(const TensorNetwork& tn) : next(tn.next_node_id()) {
    for (const auto& [id, n] : tn.nodes()) {
      nodes[id] = {n.legs, n.dims, n.size()};
      for (int l : n.legs) owners[l].push_back(id);
    }
  }

  std::size_t merged_size(int a, int b) const {
    const Shape& x = nodes.at(a);
    const Shape& y = nodes.at(b);
    std::size_t s = x.size * y.size;
    for (std::size_t i = 0; i < x.legs.size(); ++i) {
      if (std::find(y.legs.begin(), y.legs.end(), x.legs[i]) != y.legs.end()) {
        s /= static_cast<std::size_t>(x.dims[i]) * static_cast<std::size_t>(x.dims[i]);
      }
    }
    return s;
  }

  void merge(int a, int b) {
    Shape out;
    const Shape& x = nodes.at(a);
    const Shape& y = nodes.at(b);
    for (std::size_t i = 0; i < x.legs.size(); ++i) {
      if (std::find(y.legs.begin(), y.legs.end(), x.legs[i]) == y.legs.end()) {
        out.legs.push_back(x.legs[i]);
        out.dims.push_back(x.dims[i]);
      } else {
        owners.erase(x.legs[i]);
      }
    }
    for (std::size_t i = 0; i < y.legs.size(); ++i) {
      if (std::find(x.legs.begin(), x.legs.end(), y.legs[i]) == x.legs.end()) {
        out.legs.push_back(y.legs[i]);
        out.dims.push_back(y.dims[i]);
      }
    }
    out.size = product(out.dims);
    const int id = next++;
    for (int l : out.legs) {
      auto& own = owners[l];
      std::replace(own.begin(), own.end(), a, id);
      std::replace(own.begin(), own.end(), b, id);
    }
    nodes.erase(a);
    nodes.erase(b);
    nodes[id] = std::move(out);
  }

  // Two smallest nodes, for joining disconnected pieces.
  std::pair<int, int> smallest_pair() const {
    std::vector<std::pair<std::size_t, int>> v;
    for (const auto& [id, s] : nodes) v.emplace_back(s.size, id);
    std::partial_sort(v.begin(), v.begin() + 2, v.end());
    return {v[0].second, v[1].second};
  }
};

}  // namespace

ContractionPlan greedy_plan(const TensorNetwork& tn) {
  Skeleton sk(tn);
  ContractionPlan plan;
  while (sk.nodes.size() > 1) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::pair<int, int> pick{-1, -1};
    for (const auto& [leg, own] : sk.owners) {
      if (own.size() != 2) continue;
      const std::size_t s = sk.merged_size(own[0], own[1]);
      if (s < best) {
        best = s;
        pick = {own[0], own[1]};
      }
    }
    if (pick.first < 0) pick = sk.smallest_pair();
    plan.steps.push_back(pick);
    sk.merge(pick.first, pick.second);
  }
  return plan;
}

ContractionPlan random_plan(const TensorNetwork& tn, std::uint64_t seed) {
  Skeleton sk(tn);
  std::mt19937_64 rng(seed);
  ContractionPlan plan;
  while (sk.nodes.size() > 1) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [leg, own] : sk.owners) {
      if (own.size() == 2) pairs.emplace_back(own[0], own[1]);
    }
    std::pair<int, int> pick;
    if (pairs.empty()) {
      pick = sk.smallest_pair();
    } else {
      std::uniform_int_distribution<std::size_t> d(0, pairs.size() - 1);
      pick = pairs[d(rng)];
    }
    plan.steps.push_back(pick);
    sk.merge(pick.first, pick.second);
  }
  return plan;
}

TensorNode contract(TensorNetwork tn, const ContractionPlan& plan) {
  for (auto [a, b] : plan.steps) tn.contract_nodes(a, b);
  while (tn.nodes().size() > 1) {
    auto it = tn.nodes().begin();
    const int a = it->first;
    const int b = std::next(it)->first;
    tn.contract_nodes(a, b);
  }
  if (tn.nodes().empty()) return TensorNode{0, {}, {}, {cd{1, 0}}};
  return tn.nodes().begin()->second;
}

TensorNode contract(const TensorNetwork& tn) { return contract(tn, greedy_plan(tn)); }

std::size_t network_size(const TensorNetwork& tn) {
  std::size_t s = 0;
  for (const auto& [_, n] : tn.nodes()) s += n.size();
  return s;
}

State output_state(const TensorNode& final_node, const std::map<int, int>& physical,
                   const std::vector<int>& outputs) {
  if (final_node.legs.size() != outputs.size()) {
    throw InvalidArgument("final tensor does not carry exactly the output legs");
  }
  // Row-major: the last axis is bit 0, so order legs as outputs reversed.
  std::vector<int> perm;
  for (std::size_t j = outputs.size(); j-- > 0;) {
    const int leg = physical.at(outputs[j]);
    auto it = std::find(final_node.legs.begin(), final_node.legs.end(), leg);
    if (it == final_node.legs.end()) throw InvalidArgument("output leg missing from final tensor");
    perm.push_back(static_cast<int>(it - final_node.legs.begin()));
  }
  return permute(final_node.data, final_node.dims, perm);
}

double expectation_value(const State& psi, const std::vector<PauliTerm>& terms) {
  cd acc{0, 0};
  for (const auto& t : terms) {
    if (static_cast<std::size_t>(1) << t.string.size() != psi.size()) {
      throw InvalidArgument("Pauli term width does not match the state");
    }
    acc += t.coeff * expectation(psi, t.string);
  }
  if (std::abs(acc.imag()) > 1e-9) {
    throw InternalError("expectation value has imaginary residue " + std::to_string(acc.imag()));
  }
  return acc.real();
}

namespace {

void measure_all(TensorNetwork& tn, const MeasurementPattern& p, const std::vector<int>& order,
                 const Outcomes& outcomes, const std::vector<double>& params) {
  for (int v : order) {
    const MeasurementBasis& b = p.bases.at(v);
    auto it = outcomes.find(v);
    if (it == outcomes.end()) throw InvalidArgument("missing outcome for vertex " + std::to_string(v));
    apply_measurement(tn, v, b, it->second, b.resolved_angle(outcomes, params));
  }
}

}  // namespace

State tn_run(const MeasurementPattern& p, const std::vector<Qubit1>& inputs,
             const Outcomes& outcomes, const std::vector<double>& params) {
  TensorNetwork tn = build_peps(p, inputs);
  measure_all(tn, p, p.measurement_order(), outcomes, params);
  return output_state(contract(tn), tn.physical, p.outputs);
}

PatternExecutor::PatternExecutor(MeasurementPattern p)
    : p_(std::move(p)), order_(p_.measurement_order()) {}

State PatternExecutor::run(const std::vector<Qubit1>& inputs, const Outcomes& outcomes,
                           const std::vector<double>& params) {
  TensorNetwork tn = build_peps(p_, inputs);
  measure_all(tn, p_, order_, outcomes, params);
  if (!planned_) {
    plan_ = greedy_plan(tn);
    planned_ = true;
  }
  const std::map<int, int> physical = tn.physical;
  return output_state(contract(std::move(tn), plan_), physical, p_.outputs);
}

State correct_output(const MeasurementPattern& p, const Outcomes& outcomes, State raw) {
  const int n = static_cast<int>(p.outputs.size());
  if (raw.size() != (std::size_t{1} << n)) throw InvalidArgument("raw register width mismatch");
  for (int j = 0; j < n; ++j) {
    const int o = p.outputs[static_cast<std::size_t>(j)];
    const Clifford f = p.output_frame(o);
    if (!f.is_identity()) apply_1q(raw, j, f.matrix());
    const auto& e = p.byproduct[static_cast<std::size_t>(j)];
    if (parity(e.sx, outcomes)) apply_1q(raw, j, pauli_matrix(Pauli::X));
    if (parity(e.sz, outcomes)) apply_1q(raw, j, pauli_matrix(Pauli::Z));
  }
  return raw;
}

}  // namespace mbqc
