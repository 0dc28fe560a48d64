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

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mbqc/dense.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

// Gate angle: a number, or a named parameter slot.
struct GateAngle {
  double value = 0.0;
  int slot = -1;

  static GateAngle number(double v) { return {v, -1}; }
  static GateAngle param(int slot) { return {0.0, slot}; }
  double resolve(const std::vector<double>& params) const;
  Angle as_angle() const;
};

enum class GateKind { Rx, Rz, Euler, H, CZ, CNOT, PhaseGadget };

std::string gate_kind_name(GateKind k);
// Accepts the canonical names plus the aliases "cx" and "zz".
GateKind gate_kind_from_name(const std::string& s);

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> qubits;
  // rx, rz, phase_gadget: one angle; euler: (xi, eta, zeta); others: none.
  std::vector<GateAngle> angles;
};

struct CircuitIR {
  int n = 0;
  std::vector<Gate> gates;
  std::vector<std::string> params;

  // Throws InvalidArgument("gate k: ...") on the first malformed gate.
  void validate() const;
};

CircuitIR circuit_from_json(const std::string& text);
std::string circuit_to_json(const CircuitIR& c);

// Chain 0-1-2-3-4 implementing Rx(zeta) Rz(eta) Rx(xi).
MeasurementPattern make_euler_rotation(Angle xi, Angle eta, Angle zeta);
MeasurementPattern make_euler_rotation(double xi, double eta, double zeta);
MeasurementPattern make_rx(Angle theta);
MeasurementPattern make_rz(Angle theta);
MeasurementPattern make_wire();
MeasurementPattern make_hadamard();
MeasurementPattern make_cz();
// 15-vertex two-wire pattern; wire 0 is the control.
MeasurementPattern make_cnot();
// exp(-i theta/2 Z...Z) on n wires via a hub and a phase carrier.
MeasurementPattern make_phase_gadget(int n, Angle theta);
MeasurementPattern make_phase_gadget(int n, double theta);

MeasurementPattern gate_pattern(const Gate& g);
MeasurementPattern compile_circuit(const CircuitIR& c);

// Dense reference, qubit j is bit j.
void apply_gate(State& psi, const Gate& g, const std::vector<double>& params);
Eigen::MatrixXcd circuit_unitary(const CircuitIR& c, const std::vector<double>& params = {});

}  // namespace mbqc
