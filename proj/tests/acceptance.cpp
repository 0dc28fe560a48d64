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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "mbqc/errors.hpp"
#include "mbqc/gate_factory.hpp"
#include "mbqc/graph.hpp"
#include "mbqc/hamiltonians.hpp"
#include "mbqc/tensor_sim.hpp"
#include "mbqc/vqe.hpp"
#include "support.hpp"

namespace mbqc {
namespace {

using testing::kPi;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::vector<double> random_params(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  std::vector<double> x(static_cast<std::size_t>(k));
  for (auto& v : x) v = u(rng);
  return x;
}

Outcomes random_outcomes(const MeasurementPattern& p, std::mt19937_64& rng) {
  Outcomes o;
  for (int v : p.measured()) o[v] = static_cast<int>(rng() % 2);
  return o;
}

Eigen::MatrixXcd zz_rotation(int n, double t) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
  for (int i = 0; i < (1 << n); ++i) {
    const double s = (__builtin_popcount(static_cast<unsigned>(i)) % 2) ? -1.0 : 1.0;
    u(i, i) = std::exp(cd{0, -0.5 * t * s});
  }
  return u;
}

Verdict counts() {
  struct Row {
    AnsatzSpec spec;
    int params, qubits;
  };
  const Row rows[] = {{{4, 2, Entangler::PhaseGadget}, 38, 42},
                      {{9, 1, Entangler::PhaseGadget}, 55, 64},
                      {{4, 1, Entangler::CxRing}, 24, 28},
                      {{4, 1, Entangler::PhaseGadget}, 25, 29}};
  bool ok = true;
  std::string detail;
  for (const Row& r : rows) {
    const MeasurementPattern p = build_ansatz(r.spec);
    ok = ok && p.num_params() == r.params && p.num_qubits() == r.qubits;
    detail += fmt::format("{}({}/{}) ", entangler_name(r.spec.entangler), p.num_params(),
                          p.num_qubits());
  }
  return {ok, detail};
}

Verdict lc_rule() {
  double worst = 0.0;
  int cases = 0;
  for (int n = 1; n <= 5; ++n) {
    for (const Graph& g : testing::all_graphs(n, true)) {
      const State psi = graph_state_vector(g);
      for (int a = 0; a < n; ++a) {
        const State lhs = graph_state_vector(local_complement(g, a));
        worst = std::max(worst, phase_distance(lhs, apply_record(g, lc_unitary(g, a), psi)));
        ++cases;
      }
    }
  }
  return {worst <= 1e-9, fmt::format("{} graph/vertex cases, max deviation {:.3g}", cases, worst)};
}

Verdict pauli_rewrites() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  int checked = 0;
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Graph g = testing::random_graph(n, 0.5, rng);
    const int a = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const State psi = graph_state_vector(g);
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      for (int o : {0, 1}) {
        const State proj = testing::dense_measure(psi, n, a, p, o);
        if (norm(proj) < 1e-9) {
          try {
            simulate_pauli_measurement(g, a, p, o);
            ok = false;
          } catch (const ImpossibleBranch&) {
          }
          continue;
        }
        const PauliRewrite rw = simulate_pauli_measurement(g, a, p, o);
        Graph h = rw.graph;
        if (h.has_vertex(a)) h.remove_vertex(a);
        LocalCliffordRecord rec = rw.record;
        rec.erase(a);
        worst = std::max(worst, phase_distance(proj, apply_record(h, rec, graph_state_vector(h))));
        ++checked;
      }
    }
  }
  return {ok && worst <= 1e-9,
          fmt::format("{} measurements on 200 graphs, max deviation {:.3g}", checked, worst)};
}

Verdict gate_branches() {
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  long branches = 0;
  int impossible = 0;
  auto check = [&](const MeasurementPattern& p, const Eigen::MatrixXcd& u) {
    const BranchCheck r = check_branches(p, u, {}, 16);
    worst = std::max(worst, r.worst);
    branches += r.branches;
    impossible += r.impossible;
  };
  const double s = M_SQRT1_2;
  Eigen::MatrixXcd cz = Eigen::MatrixXcd::Identity(4, 4);
  cz(3, 3) = -1;
  Eigen::MatrixXcd cx = Eigen::MatrixXcd::Zero(4, 4);
  cx(0, 0) = cx(2, 2) = cx(3, 1) = cx(1, 3) = 1;
  for (int seed = 0; seed < 10; ++seed) {
    const double x = testing::random_angle(rng), y = testing::random_angle(rng),
                 z = testing::random_angle(rng);
    check(make_euler_rotation(x, y, z), embed_1q(1, 0, matmul(rx(z), matmul(rz(y), rx(x)))));
    check(make_hadamard(), embed_1q(1, 0, {s, s, s, -s}));
    check(make_cz(), cz);
    check(make_cnot(), cx);
    for (int n = 1; n <= 4; ++n) {
      const double t = testing::random_angle(rng);
      check(make_phase_gadget(n, t), zz_rotation(n, t));
    }
  }
  return {worst <= 1e-9 && impossible == 0,
          fmt::format("{} branches, max deviation {:.3g}", branches, worst)};
}

Verdict reduction() {
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  int pauli_patterns = 0, pauli_vertices = 0, proven = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int gates = 1 + static_cast<int>(rng() % 6);
    const CircuitIR c = testing::random_circuit(n, gates, rng);
    ReductionStats st;
    const MeasurementPattern r = clifford_reduce(compile_circuit(c), {}, &st);
    worst = std::max(worst, check_branches(r, circuit_unitary(c), {}, 12, 256, 7).worst);
    const int k = r.num_pauli_measurements();
    pauli_vertices += k;
    pauli_patterns += k > 0;
    proven += k > 0 && st.orbit_exhausted;
  }
  return {worst <= 1e-9 && pauli_vertices == 0,
          fmt::format("unitary max deviation {:.3g}; {} of 50 reduced patterns keep {} Pauli "
                      "vertices, {} of them with an exhausted LC orbit (no Pauli-free form)",
                      worst, pauli_patterns, pauli_vertices, proven)};
}

Verdict tensor_engine() {
  std::mt19937_64 rng(1006);
  double worst = 0.0, worst_order = 0.0;
  int compared = 0;
  while (compared < 50) {
    const MeasurementPattern p = testing::random_pattern(rng, 3, 12);
    std::vector<Qubit1> in;
    for (std::size_t k = 0; k < p.inputs.size(); ++k) in.push_back(testing::random_qubit(rng));
    const Outcomes o = random_outcomes(p, rng);
    State dense;
    try {
      dense = dense_run(p, in, o);
    } catch (const ImpossibleBranch&) {
      continue;
    }
    TensorNetwork tn = build_peps(p, in);
    for (int v : p.measurement_order()) {
      const MeasurementBasis& b = p.bases.at(v);
      apply_measurement(tn, v, b, o.at(v), b.resolved_angle(o));
    }
    const State ref = output_state(contract(tn), tn.physical, p.outputs);
    worst = std::max(worst, phase_distance(ref, dense));
    for (int order = 0; order < 5; ++order) {
      const State alt = output_state(contract(tn, random_plan(tn, rng())), tn.physical, p.outputs);
      for (std::size_t i = 0; i < ref.size(); ++i) {
        worst_order = std::max(worst_order, std::abs(ref[i] - alt[i]));
      }
    }
    ++compared;
  }
  return {worst <= 1e-8 && worst_order <= 1e-9,
          fmt::format("50 patterns: vs dense {:.3g}, across orders {:.3g}", worst, worst_order)};
}

OptimizerConfig acceptance_config(int restarts) {
  OptimizerConfig cfg;
  cfg.max_iterations = 4000;
  cfg.restarts = restarts;
  return cfg;
}

Verdict heisenberg() {
  const MeasurementPattern p = build_ansatz({4, 2, Entangler::PhaseGadget});
  bool ok = true;
  std::string detail;
  for (double j : {0.1, 0.5, 1.0, 2.0}) {
    const PauliHamiltonian h = heisenberg_2d(2, 2, 1.0, j);
    const double e0 = exact_ground_energy(h).energy;
    const RestartResult r = run_restarts(p, h, acceptance_config(20));
    const double rel = std::abs((r.best().best_energy - e0) / e0);
    ok = ok && rel <= 0.01;
    detail += fmt::format("J/B={} rel {:.2e}; ", j, rel);
    if (j == 0.1) {
      double best5 = r.runs[0].best_energy;
      for (int k = 1; k < 5; ++k) best5 = std::min(best5, r.runs[static_cast<std::size_t>(k)].best_energy);
      const double rel5 = std::abs((best5 - e0) / e0);
      ok = ok && rel5 <= 0.01;
      detail += fmt::format("best-of-5 rel {:.2e}; ", rel5);
    }
  }
  return {ok, detail};
}

Verdict routing() {
  const RoutingInstance inst = RoutingInstance::square(2.5);
  const PauliHamiltonian h = vehicle_routing(inst);
  double emin = 1e300;
  std::set<std::uint64_t> minima;
  bool cycles_ok = true;
  for (std::uint64_t b = 0; b < 512; ++b) {
    const double e = diagonal_energy(h, b);
    if (e < emin - 1e-9) {
      emin = e;
      minima.clear();
    }
    if (std::abs(e - emin) <= 1e-9) minima.insert(b);
    if (!routing_tour(inst, b).empty() && routing_penalty(inst, b) != 0.0) cycles_ok = false;
  }
  bool perimeter = true;
  for (std::uint64_t b : minima) {
    const std::vector<int> t = routing_tour(inst, b);
    perimeter = perimeter && (t == std::vector<int>{0, 1, 2, 3} || t == std::vector<int>{0, 3, 2, 1});
  }
  const bool oracle = std::abs(emin - 4.0) <= 1e-9 && minima.size() == 2 && perimeter && cycles_ok;

  const MeasurementPattern p = build_ansatz({9, 1, Entangler::PhaseGadget});
  const RestartResult r = run_restarts(p, h, acceptance_config(10));
  const auto& probs = r.probabilities[static_cast<std::size_t>(r.best_index)];
  double p_min = 0.0;
  for (std::uint64_t b : minima) p_min += probs[b];
  const double best = r.best().best_energy;
  return {oracle && best <= 4.0 + 1e-6,
          fmt::format("brute force min {} (degeneracy {}), MBVQE best {:.9f}, "
                      "P(minimal) at best {:.3f}",
                      emin, minima.size(), best, p_min)};
}

Verdict molecule() {
  const PauliHamiltonian h = load_hamiltonian(MBQC_DATA_DIR "/h2_sto3g_bk_r0.7414.ham");
  const double e0 = exact_ground_energy(h).energy;
  const MeasurementPattern p = build_ansatz({4, 1, Entangler::PhaseGadget});
  const RestartResult r = run_restarts(p, h, acceptance_config(20));
  double lowest = 1e300;
  for (const MinimizeResult& m : r.runs) {
    for (double e : m.trace) lowest = std::min(lowest, e);
  }
  const double dev = std::abs(r.best().best_energy - e0);
  return {dev <= 1e-3 && lowest >= e0 - 1e-9,
          fmt::format("exact {:.10f}, best {:.10f}, deviation {:.2e}, lowest evaluation {:.10f}",
                      e0, r.best().best_energy, dev, lowest)};
}

Verdict circuit_identity() {
  std::mt19937_64 rng(1010);
  double worst = 0.0;
  int cases = 0;
  for (int n = 1; n <= 4; ++n) {
    const PauliHamiltonian h = n == 4 ? heisenberg_2d(2, 2, 1.0, 1.0) : heisenberg_2d(1, n, 1.0, 1.0);
    for (int d = 0; d <= 2; ++d) {
      const AnsatzSpec spec{n, d, Entangler::PhaseGadget};
      EnergyEvaluator ev(build_ansatz(spec), h);
      for (int t = 0; t < 10; ++t) {
        const auto x = random_params(spec.num_params(), rng);
        worst = std::max(worst, std::abs(ev.energy(x) - circuit_energy(spec, x, h)));
        ++cases;
      }
    }
  }
  return {worst <= 1e-8, fmt::format("{} parameter vectors, max deviation {:.3g}", cases, worst)};
}

}  // namespace
}  // namespace mbqc

int main() {
  using namespace mbqc;
  const std::pair<int, std::function<Verdict()>> criteria[] = {
      {1, counts},      {2, lc_rule},    {3, pauli_rewrites}, {4, gate_branches},
      {5, reduction},   {6, tensor_engine}, {7, heisenberg},  {8, routing},
      {9, molecule},    {10, circuit_identity}};
  int failed = 0;
  for (const auto& [k, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fmt::print("criterion {}: {} {} [{:.1f} s]\n", k, v.pass ? "PASS" : "FAIL", v.detail, secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
