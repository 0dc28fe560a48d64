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

#include "mbqc/graph.hpp"

#include <cmath>
#include <deque>

#include "json.hpp"
#include "mbqc/errors.hpp"

namespace mbqc {

using nlohmann::json;

Graph::Graph(int n) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  for (int v = 0; v < n; ++v) adj_[v];
}

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

void Graph::add_vertex(int v) {
  if (v < 0) throw InvalidArgument("negative vertex id");
  adj_[v];
}

void Graph::remove_vertex(int v) {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw InvalidArgument("unknown vertex " + std::to_string(v));
  for (int b : it->second) adj_[b].erase(v);
  adj_.erase(it);
}

void Graph::add_edge(int a, int b) {
  if (a == b) throw InvalidArgument("self-loop at vertex " + std::to_string(a));
  if (!has_vertex(a) || !has_vertex(b)) {
    throw InvalidArgument("edge endpoint is not a vertex: " + std::to_string(a) + "-" +
                          std::to_string(b));
  }
  adj_[a].insert(b);
  adj_[b].insert(a);
}

void Graph::remove_edge(int a, int b) {
  if (!has_edge(a, b)) return;
  adj_[a].erase(b);
  adj_[b].erase(a);
}

void Graph::toggle_edge(int a, int b) {
  if (has_edge(a, b)) {
    remove_edge(a, b);
  } else {
    add_edge(a, b);
  }
}

bool Graph::has_edge(int a, int b) const {
  auto it = adj_.find(a);
  return it != adj_.end() && it->second.count(b) != 0;
}

const std::set<int>& Graph::neighbors(int v) const {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw InvalidArgument("unknown vertex " + std::to_string(v));
  return it->second;
}

std::vector<int> Graph::vertices() const {
  std::vector<int> out;
  out.reserve(adj_.size());
  for (const auto& [v, _] : adj_) out.push_back(v);
  return out;
}

std::size_t Graph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& [_, nb] : adj_) twice += nb.size();
  return twice / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (const auto& [a, nb] : adj_) {
    for (int b : nb) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

Clifford LocalCliffordRecord::at(int v) const {
  auto it = map_.find(v);
  return it == map_.end() ? Clifford::identity() : it->second;
}

void LocalCliffordRecord::set(int v, Clifford c) {
  if (c.is_identity()) {
    map_.erase(v);
  } else {
    map_[v] = c;
  }
}

LocalCliffordRecord LocalCliffordRecord::compose(const LocalCliffordRecord& rhs) const {
  LocalCliffordRecord out = *this;
  for (const auto& [v, c] : rhs.map_) out.set(v, out.at(v) * c);
  return out;
}

void local_complement_inplace(Graph& g, int a) {
  const std::vector<int> nb(g.neighbors(a).begin(), g.neighbors(a).end());
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) g.toggle_edge(nb[i], nb[j]);
  }
}

Graph local_complement(const Graph& g, int a) {
  Graph out = g;
  local_complement_inplace(out, a);
  return out;
}

LocalCliffordRecord lc_unitary(const Graph& g, int a) {
  LocalCliffordRecord rec;
  for (int b : g.neighbors(a)) rec.set(b, Clifford::sqrt_miz());
  rec.set(a, Clifford::sqrt_ix());
  return rec;
}

State graph_state_vector(const Graph& g, const std::map<int, Qubit1>& input_overrides, int limit) {
  const std::vector<int> verts = g.vertices();
  const int n = static_cast<int>(verts.size());
  if (n > limit) {
    throw ResourceLimit("graph state of " + std::to_string(n) + " qubits exceeds the dense limit " +
                        std::to_string(limit));
  }
  std::map<int, int> pos;
  for (int k = 0; k < n; ++k) pos[verts[static_cast<std::size_t>(k)]] = k;
  State psi{cd{1, 0}};
  const double r = 1.0 / std::sqrt(2.0);
  for (int v : verts) {
    Qubit1 q{cd{r, 0}, cd{r, 0}};
    if (auto it = input_overrides.find(v); it != input_overrides.end()) q = it->second;
    psi = kron(psi, State{q[0], q[1]});
  }
  for (auto [a, b] : g.edges()) apply_cz(psi, pos[a], pos[b]);
  const double nrm = norm(psi);
  if (nrm > 0) {
    for (cd& x : psi) x /= nrm;
  }
  return psi;
}

State apply_record(const Graph& g, const LocalCliffordRecord& rec, State psi) {
  const std::vector<int> verts = g.vertices();
  for (std::size_t k = 0; k < verts.size(); ++k) {
    Clifford c = rec.at(verts[k]);
    if (!c.is_identity()) apply_1q(psi, static_cast<int>(k), c.matrix());
  }
  return psi;
}

std::vector<PauliString> stabilizer_generators(const Graph& g) {
  const std::vector<int> verts = g.vertices();
  std::map<int, int> pos;
  for (std::size_t k = 0; k < verts.size(); ++k) pos[verts[k]] = static_cast<int>(k);
  std::vector<PauliString> out;
  for (int a : verts) {
    PauliString k(static_cast<int>(verts.size()));
    k.set(pos[a], Pauli::X);
    for (int b : g.neighbors(a)) k.set(pos[b], Pauli::Z);
    out.push_back(k);
  }
  return out;
}

namespace {

int lowest_neighbor(const Graph& g, int a) { return *g.neighbors(a).begin(); }

}  // namespace

// |g> = U^dagger |tau_v g>, so every touched record picks up U^dagger.
void local_complement_with_record(Graph& g, LocalCliffordRecord& rec, int v) {
  for (int b : g.neighbors(v)) rec.right_multiply(b, Clifford::sqrt_miz().inverse());
  rec.right_multiply(v, Clifford::sqrt_ix().inverse());
  local_complement_inplace(g, v);
}

int measure_pauli_inplace(Graph& g, LocalCliffordRecord& rec, int a, Pauli basis, int outcome,
                          const NeighborChooser& choose_b0) {
  if (!g.has_vertex(a)) throw InvalidArgument("unknown vertex " + std::to_string(a));
  if (basis == Pauli::I) throw InvalidArgument("measurement basis must be X, Y or Z");
  if (outcome < -1 || outcome > 1) throw InvalidArgument("outcome must be 0 or 1");
  auto effective = [&] { return rec.at(a).conjugate_dag(basis); };
  SignedPauli eff = effective();
  int b0 = -1;
  for (int guard = 0; eff.letter != Pauli::Z; ++guard) {
    if (guard > 4) throw InternalError("Pauli rewrite failed to reach a Z measurement");
    if (eff.letter == Pauli::Y) {
      local_complement_with_record(g, rec, a);
    } else {
      if (g.neighbors(a).empty()) break;
      if (b0 < 0) b0 = choose_b0 ? choose_b0(g, a) : lowest_neighbor(g, a);
      if (!g.has_edge(a, b0)) throw InternalError("chosen b0 is not a neighbor");
      local_complement_with_record(g, rec, b0);
    }
    eff = effective();
  }
  int realized = outcome;
  if (eff.letter == Pauli::X) {
    // Isolated and already an eigenstate: the outcome is forced.
    const int forced = eff.sign == 1 ? 0 : 1;
    if (outcome == -1) {
      realized = forced;
    } else if (outcome != forced) {
      throw ImpossibleBranch("outcome " + std::to_string(outcome) + " at vertex " +
                             std::to_string(a) + " has zero probability");
    }
  } else {
    if (realized == -1) realized = 0;
    const int m = realized ^ (eff.sign == -1 ? 1 : 0);
    if (m == 1) {
      for (int b : g.neighbors(a)) rec.right_multiply(b, Clifford::pauli(Pauli::Z));
    }
  }
  rec.erase(a);
  g.remove_vertex(a);
  return realized;
}

PauliRewrite simulate_pauli_measurement(const Graph& g, int a, Pauli basis, int outcome) {
  if (outcome != 0 && outcome != 1) throw InvalidArgument("outcome must be 0 or 1");
  PauliRewrite out{g, {}, outcome};
  out.outcome = measure_pauli_inplace(out.graph, out.record, a, basis, outcome);
  return out;
}

OrbitResult lc_orbit(const Graph& g, std::size_t max_members) {
  OrbitResult res;
  std::set<std::vector<Edge>> seen{g.edges()};
  res.members.push_back(g);
  res.sequences.emplace_back();
  std::deque<std::size_t> queue{0};
  const std::vector<int> verts = g.vertices();
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (int v : verts) {
      Graph h = local_complement(res.members[i], v);
      if (!seen.insert(h.edges()).second) continue;
      if (res.members.size() >= max_members) {
        res.truncated = true;
        return res;
      }
      std::vector<int> seq = res.sequences[i];
      seq.push_back(v);
      res.members.push_back(std::move(h));
      res.sequences.push_back(std::move(seq));
      queue.push_back(res.members.size() - 1);
    }
  }
  return res;
}

std::string graph_to_json(const Graph& g) {
  json j;
  const std::vector<int> verts = g.vertices();
  const bool dense = verts.empty() || verts.back() == static_cast<int>(verts.size()) - 1;
  j["n"] = verts.size();
  if (!dense) j["vertices"] = verts;
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  j["edges"] = edges;
  return j.dump();
}

Graph graph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
  try {
    Graph g;
    if (j.contains("vertices")) {
      for (int v : j.at("vertices").get<std::vector<int>>()) g.add_vertex(v);
    } else {
      g = Graph(j.at("n").get<int>());
    }
    for (const auto& e : j.at("edges")) {
      if (e.size() != 2) throw ParseError("graph JSON: edge must have two endpoints");
      g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
}

}  // namespace mbqc
