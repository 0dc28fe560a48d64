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

#include "mbqc/gate_factory.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "json.hpp"
#include "mbqc/errors.hpp"

namespace mbqc {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

bool quarter_turn(const Angle& a) {
  if (a.symbolic()) return false;
  const double k = a.offset / (kPi / 2);
  return std::abs(k - std::round(k)) < 1e-12;
}

MeasurementPattern chain(int n, std::vector<int> ins, std::vector<int> outs) {
  MeasurementPattern p;
  p.graph = Graph(n);
  for (int v = 0; v + 1 < n; ++v) p.graph.add_edge(v, v + 1);
  p.inputs = std::move(ins);
  p.outputs = std::move(outs);
  return p;
}

MeasurementBasis xy(Angle a, DepSet sign = {}) {
  return MeasurementBasis::plane(BasisKind::PlaneXY, a, std::move(sign));
}

}  // namespace

double GateAngle::resolve(const std::vector<double>& params) const {
  if (slot < 0) return value;
  if (static_cast<std::size_t>(slot) >= params.size()) {
    throw InvalidArgument("unbound parameter slot " + std::to_string(slot));
  }
  return params[static_cast<std::size_t>(slot)];
}

Angle GateAngle::as_angle() const { return slot < 0 ? Angle::constant(value) : Angle::param(slot); }

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::Rx: return "rx";
    case GateKind::Rz: return "rz";
    case GateKind::Euler: return "euler";
    case GateKind::H: return "h";
    case GateKind::CZ: return "cz";
    case GateKind::CNOT: return "cnot";
    case GateKind::PhaseGadget: return "phase_gadget";
  }
  throw InternalError("bad gate kind");
}

GateKind gate_kind_from_name(const std::string& s) {
  if (s == "rx") return GateKind::Rx;
  if (s == "rz") return GateKind::Rz;
  if (s == "euler") return GateKind::Euler;
  if (s == "h") return GateKind::H;
  if (s == "cz") return GateKind::CZ;
  if (s == "cnot" || s == "cx") return GateKind::CNOT;
  if (s == "phase_gadget" || s == "zz") return GateKind::PhaseGadget;
  throw InvalidArgument("unknown gate kind '" + s + "'");
}

void CircuitIR::validate() const {
  if (n < 0) throw InvalidArgument("negative qubit count");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    auto fail = [&](const std::string& msg) {
      throw InvalidArgument("gate " + std::to_string(i) + " (" + gate_kind_name(g.kind) + "): " + msg);
    };
    std::size_t want_q = 0, want_a = 0;
    switch (g.kind) {
      case GateKind::Rx:
      case GateKind::Rz: want_q = 1; want_a = 1; break;
      case GateKind::Euler: want_q = 1; want_a = 3; break;
      case GateKind::H: want_q = 1; break;
      case GateKind::CZ:
      case GateKind::CNOT: want_q = 2; break;
      case GateKind::PhaseGadget: want_a = 1; break;
    }
    if (want_q && g.qubits.size() != want_q) fail("expected " + std::to_string(want_q) + " qubits");
    if (g.qubits.empty()) fail("no qubits");
    if (g.angles.size() != want_a) fail("expected " + std::to_string(want_a) + " angles");
    std::set<int> seen;
    for (int q : g.qubits) {
      if (q < 0 || q >= n) fail("qubit " + std::to_string(q) + " out of range");
      if (!seen.insert(q).second) fail("operand overlap on qubit " + std::to_string(q));
    }
    for (const auto& a : g.angles) {
      if (a.slot >= static_cast<int>(params.size())) fail("undeclared parameter slot");
      if (a.slot < 0 && !std::isfinite(a.value)) fail("non-finite angle");
    }
  }
}

CircuitIR circuit_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("circuit JSON: ") + e.what());
  }
  CircuitIR c;
  std::map<std::string, int> slots;
  auto slot_of = [&](const std::string& name) {
    auto it = slots.find(name);
    if (it != slots.end()) return it->second;
    const int s = static_cast<int>(c.params.size());
    c.params.push_back(name);
    slots[name] = s;
    return s;
  };
  try {
    c.n = j.at("n").get<int>();
    for (const auto& name : j.value("params", std::vector<std::string>{})) slot_of(name);
    const auto& gates = j.at("gates");
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const auto& gj = gates[i];
      Gate g;
      try {
        g.kind = gate_kind_from_name(gj.at("kind").get<std::string>());
      } catch (const InvalidArgument& e) {
        throw InvalidArgument("gate " + std::to_string(i) + ": " + e.what());
      }
      g.qubits = gj.at("qubits").get<std::vector<int>>();
      auto angle = [&](const json& a) {
        if (a.is_number()) return GateAngle::number(a.get<double>());
        return GateAngle::param(slot_of(a.at("param").get<std::string>()));
      };
      if (gj.contains("angles")) {
        for (const auto& a : gj.at("angles")) g.angles.push_back(angle(a));
      } else if (gj.contains("angle")) {
        g.angles.push_back(angle(gj.at("angle")));
      }
      c.gates.push_back(std::move(g));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("circuit JSON: ") + e.what());
  }
  c.validate();
  return c;
}

std::string circuit_to_json(const CircuitIR& c) {
  json gates = json::array();
  for (const auto& g : c.gates) {
    json gj{{"kind", gate_kind_name(g.kind)}, {"qubits", g.qubits}};
    auto angle = [&](const GateAngle& a) -> json {
      if (a.slot < 0) return a.value;
      return json{{"param", c.params[static_cast<std::size_t>(a.slot)]}};
    };
    if (g.angles.size() == 1) {
      gj["angle"] = angle(g.angles[0]);
    } else if (!g.angles.empty()) {
      json arr = json::array();
      for (const auto& a : g.angles) arr.push_back(angle(a));
      gj["angles"] = arr;
    }
    gates.push_back(gj);
  }
  json j{{"n", c.n}, {"gates", gates}};
  if (!c.params.empty()) j["params"] = c.params;
  return j.dump(2);
}

// --- Factories -------------------------------------------------------------

MeasurementPattern make_euler_rotation(Angle xi, Angle eta, Angle zeta) {
  MeasurementPattern p = chain(5, {0}, {4});
  p.bases[0] = MeasurementBasis::pauli(Pauli::X);
  p.bases[1] = xy(xi.negated(), {0});
  p.bases[2] = xy(eta.negated(), {1});
  p.bases[3] = xy(zeta.negated(), {0, 2});
  p.byproduct = {{{0, 2}, {1, 3}}};
  p.clifford = quarter_turn(xi) && quarter_turn(eta) && quarter_turn(zeta);
  return p;
}

MeasurementPattern make_euler_rotation(double xi, double eta, double zeta) {
  return make_euler_rotation(Angle::constant(xi), Angle::constant(eta), Angle::constant(zeta));
}

MeasurementPattern make_rx(Angle theta) {
  return make_euler_rotation(theta, Angle::constant(0), Angle::constant(0));
}

MeasurementPattern make_rz(Angle theta) {
  return make_euler_rotation(Angle::constant(0), theta, Angle::constant(0));
}

MeasurementPattern make_wire() {
  MeasurementPattern p = chain(3, {0}, {2});
  p.bases[0] = MeasurementBasis::pauli(Pauli::X);
  p.bases[1] = MeasurementBasis::pauli(Pauli::X);
  p.byproduct = {{{0}, {1}}};
  p.clifford = true;
  return p;
}

MeasurementPattern make_hadamard() {
  MeasurementPattern p = chain(2, {0}, {1});
  p.bases[0] = MeasurementBasis::pauli(Pauli::X);
  p.byproduct = {{{}, {0}}};
  p.clifford = true;
  return p;
}

MeasurementPattern make_cz() {
  MeasurementPattern p = chain(2, {0, 1}, {0, 1});
  p.byproduct = {{}, {}};
  p.clifford = true;
  return p;
}

MeasurementPattern make_cnot() {
  // Vertices 0..14: control chain 0..6, target chain 8..14, bridge 3-7-11.
  MeasurementPattern p;
  p.graph = Graph(15);
  for (int v = 0; v < 6; ++v) p.graph.add_edge(v, v + 1);
  for (int v = 8; v < 14; ++v) p.graph.add_edge(v, v + 1);
  p.graph.add_edge(3, 7);
  p.graph.add_edge(7, 11);
  p.inputs = {0, 8};
  p.outputs = {6, 14};
  for (int v : {0, 8, 9, 10, 12, 13}) p.bases[v] = MeasurementBasis::pauli(Pauli::X);
  for (int v : {1, 2, 3, 4, 5, 7, 11}) p.bases[v] = MeasurementBasis::pauli(Pauli::Y);
  p.byproduct = {
      {{kConstOne, 0, 2, 3, 4, 7, 8, 10}, {1, 2, 4, 5}},
      {{8, 10, 12}, {1, 2, 7, 9, 11, 13}},
  };
  p.clifford = true;
  return p;
}

MeasurementPattern make_phase_gadget(int n, Angle theta) {
  if (n < 1) throw InvalidArgument("phase gadget needs at least one qubit");
  const int hub = n, carrier = n + 1;
  MeasurementPattern p;
  p.graph = Graph(n + 2);
  for (int k = 0; k < n; ++k) {
    p.graph.add_edge(hub, k);
    p.inputs.push_back(k);
    p.outputs.push_back(k);
    p.byproduct.push_back({{carrier}, {}});
  }
  p.graph.add_edge(hub, carrier);
  p.bases[hub] = MeasurementBasis::pauli(Pauli::X);
  p.bases[carrier] = xy(theta.negated(), {hub});
  p.clifford = quarter_turn(theta);
  return p;
}

MeasurementPattern make_phase_gadget(int n, double theta) {
  return make_phase_gadget(n, Angle::constant(theta));
}

MeasurementPattern gate_pattern(const Gate& g) {
  auto a = [&](std::size_t k) { return g.angles.at(k).as_angle(); };
  switch (g.kind) {
    case GateKind::Rx: return make_rx(a(0));
    case GateKind::Rz: return make_rz(a(0));
    case GateKind::Euler: return make_euler_rotation(a(0), a(1), a(2));
    case GateKind::H: return make_hadamard();
    case GateKind::CZ: return make_cz();
    case GateKind::CNOT: return make_cnot();
    case GateKind::PhaseGadget: return make_phase_gadget(static_cast<int>(g.qubits.size()), a(0));
  }
  throw InternalError("bad gate kind");
}

MeasurementPattern compile_circuit(const CircuitIR& c) {
  c.validate();
  MeasurementPattern p = identity_pattern(c.n);
  p.params = c.params;
  for (const Gate& g : c.gates) p = concatenate_on(p, gate_pattern(g), g.qubits);
  p.params = c.params;
  return p;
}

// --- Dense reference -------------------------------------------------------

void apply_gate(State& psi, const Gate& g, const std::vector<double>& params) {
  auto a = [&](std::size_t k) { return g.angles.at(k).resolve(params); };
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::Rx: apply_1q(psi, g.qubits[0], rx(a(0))); return;
    case GateKind::Rz: apply_1q(psi, g.qubits[0], rz(a(0))); return;
    case GateKind::Euler:
      apply_1q(psi, g.qubits[0], rx(a(0)));
      apply_1q(psi, g.qubits[0], rz(a(1)));
      apply_1q(psi, g.qubits[0], rx(a(2)));
      return;
    case GateKind::H: apply_1q(psi, g.qubits[0], {r, r, r, -r}); return;
    case GateKind::CZ: apply_cz(psi, g.qubits[0], g.qubits[1]); return;
    case GateKind::CNOT: {
      const std::size_t c = std::size_t{1} << g.qubits[0], t = std::size_t{1} << g.qubits[1];
      for (std::size_t i = 0; i < psi.size(); ++i) {
        if ((i & c) && !(i & t)) std::swap(psi[i], psi[i | t]);
      }
      return;
    }
    case GateKind::PhaseGadget: {
      std::size_t mask = 0;
      for (int q : g.qubits) mask |= std::size_t{1} << q;
      const cd even = std::polar(1.0, -a(0) / 2), odd = std::polar(1.0, a(0) / 2);
      for (std::size_t i = 0; i < psi.size(); ++i) {
        psi[i] *= (std::popcount(i & mask) & 1) ? odd : even;
      }
      return;
    }
  }
}

Eigen::MatrixXcd circuit_unitary(const CircuitIR& c, const std::vector<double>& params) {
  c.validate();
  if (c.n > kDenseQubitLimit) throw ResourceLimit("circuit too wide for the dense oracle");
  const std::size_t dim = std::size_t{1} << c.n;
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    State psi(dim, cd{0, 0});
    psi[col] = 1.0;
    for (const Gate& g : c.gates) apply_gate(psi, g, params);
    for (std::size_t row = 0; row < dim; ++row) {
      u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = psi[row];
    }
  }
  return u;
}

}  // namespace mbqc
