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

// Measurement patterns: a graph state, ordered input and output vertices,
// one adaptive measurement per non-output vertex and a Pauli byproduct per
// output.
//
// Semantics. For inputs |psi>, each input vertex i is prepared in
// in_frame(i)|psi_i>, every other vertex in |+>, then CZ acts on every edge.
// Measurements run in dependency order. The remaining output register R
// satisfies U|psi> ~ U_S * out_frame * R where, per output qubit j,
// U_S = Z^(parity of sz_j) X^(parity of sx_j).

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mbqc/clifford.hpp"
#include "mbqc/graph.hpp"

namespace mbqc {

// Pseudo-vertex whose outcome is always 1. It may appear in dependency sets
// and byproduct sets to encode constant flips.
inline constexpr int kConstOne = -1;

using DepSet = std::set<int>;
using Outcomes = std::map<int, int>;

// Parity of the outcomes in s; kConstOne counts as 1. Throws on a missing
// outcome.
int parity(const DepSet& s, const Outcomes& outcomes);
void xor_into(DepSet& s, const DepSet& f);

// offset + coeff * theta[slot]; slot < 0 means a plain number.
struct Angle {
  double offset = 0.0;
  int slot = -1;
  int coeff = 1;

  static Angle constant(double value);
  static Angle param(int slot, int coeff = 1, double offset = 0.0);

  bool symbolic() const { return slot >= 0; }
  double value(const std::vector<double>& params = {}) const;
  Angle negated() const;
  Angle shifted(double delta) const;
  // eps * this + delta for eps in {+1, -1}.
  Angle affine(int eps, double delta) const;
  Angle bound(const std::vector<double>& params) const;
  friend bool operator==(const Angle&, const Angle&) = default;
};

enum class BasisKind { PauliX, PauliY, PauliZ, PlaneXY, PlaneYZ, PlaneXZ };

std::string basis_kind_name(BasisKind k);
BasisKind basis_kind_from_name(const std::string& s);
bool is_pauli_kind(BasisKind k);
Pauli pauli_of_kind(BasisKind k);
BasisKind kind_of_pauli(Pauli p);

// Plane bases measure cos(a) A + sin(a) B with (A, B) = (X, Y), (Z, Y) and
// (Z, X) for XY, YZ and XZ. The resolved angle is
// (-1)^parity(sign_deps) * angle + pi * parity(pi_deps). Outcome 0 is the +1
// eigenvector of the measured axis.
struct MeasurementBasis {
  BasisKind kind = BasisKind::PauliX;
  Angle angle;
  DepSet sign_deps;
  DepSet pi_deps;

  static MeasurementBasis pauli(Pauli p);
  static MeasurementBasis plane(BasisKind kind, Angle angle, DepSet sign_deps = {},
                                DepSet pi_deps = {});

  bool is_pauli() const { return is_pauli_kind(kind); }
  double resolved_angle(const Outcomes& outcomes, const std::vector<double>& params = {}) const;
  // Eigenvector for `outcome` at an already resolved angle.
  Qubit1 outcome_vector(int outcome, double resolved) const;
  // Absorb kConstOne into the angle: a constant sign flip negates, a
  // constant pi flip adds pi.
  void fold_constants();
  friend bool operator==(const MeasurementBasis&, const MeasurementBasis&) = default;
};

struct ByproductEntry {
  DepSet sz;
  DepSet sx;
  friend bool operator==(const ByproductEntry&, const ByproductEntry&) = default;
};

using ByproductTable = std::vector<ByproductEntry>;

// Symmetric difference per entry.
ByproductTable merge_byproducts(const ByproductTable& a, const ByproductTable& b);

struct MeasurementPattern {
  Graph graph;
  std::vector<int> inputs;
  std::vector<int> outputs;
  std::map<int, MeasurementBasis> bases;
  ByproductTable byproduct;
  bool clifford = false;
  // Absent entries are the identity.
  std::map<int, Clifford> in_frame;
  std::map<int, Clifford> out_frame;
  // Parameter names by slot.
  std::vector<std::string> params;

  int num_qubits() const { return graph.num_vertices(); }
  int num_params() const { return static_cast<int>(params.size()); }
  std::vector<int> measured() const;
  int num_pauli_measurements() const;
  bool is_bound() const;
  Clifford input_frame(int v) const;
  Clifford output_frame(int v) const;
  // Topological over dependencies, ties by ascending vertex id.
  std::vector<int> measurement_order() const;
  // Throws InvalidArgument naming the first violated invariant.
  void validate() const;
};

// Single input = output vertex, nothing measured.
MeasurementPattern identity_pattern(int n);

MeasurementPattern relabel(const MeasurementPattern& p, const std::map<int, int>& mapping);
// Relabels vertices to 0..N-1 preserving order.
MeasurementPattern compact(const MeasurementPattern& p);

// Replace outcome bit of u by u XOR parity(f) everywhere it is referenced.
void substitute_outcome(MeasurementPattern& p, int u, const DepSet& f);

MeasurementPattern propagate_byproduct(const MeasurementPattern& p, const ByproductTable& incoming);

// Glues p2's inputs onto p1's outputs listed in `qubits` (indices into
// p1.outputs). Frames at the glue must be the identity.
MeasurementPattern concatenate_on(const MeasurementPattern& p1, const MeasurementPattern& p2,
                                  const std::vector<int>& qubits);
MeasurementPattern concatenate(const MeasurementPattern& p1, const MeasurementPattern& p2);

// Rewrites p, executed on rec applied to its graph state, into an equivalent
// pattern on the bare graph state.
MeasurementPattern transform_bases_under_lc(const MeasurementPattern& p,
                                            const LocalCliffordRecord& rec);

enum class ReductionOrder {
  // Pending vertices by current effective Pauli: Z, then Y, then X;
  // ascending id within a class.
  kEffectiveKind,
  kAscendingId,
};

struct ReductionPolicy {
  ReductionOrder order = ReductionOrder::kEffectiveKind;
  // Budget for the LC-orbit search that re-isolates input references.
  std::size_t orbit_cap = 100000;
};

struct ReductionStats {
  int eliminated = 0;
  int kept_pauli = 0;
  bool orbit_fix = false;
  // Orbit members visited, and whether the whole orbit was searched without
  // finding a member with leaf references. An exhausted search proves that
  // no Pauli-free pattern exists on the remaining vertices.
  std::size_t orbit_members = 0;
  bool orbit_exhausted = false;
  bool strict_fallback = false;
};

MeasurementPattern clifford_reduce(const MeasurementPattern& p, const ReductionPolicy& policy = {},
                                   ReductionStats* stats = nullptr);

// Observable conjugated by the realized byproduct U_S^dagger O U_S.
PauliString out_measurement_transform(const ByproductTable& byproduct, const Outcomes& outcomes,
                                      const PauliString& observable);

// Full correction including output frames: F^dagger U_S^dagger O U_S F, to
// be measured on the raw output register.
PauliString corrected_observable(const MeasurementPattern& p, const Outcomes& outcomes,
                                 const PauliString& observable);

MeasurementPattern bind_angles(const MeasurementPattern& p, const std::vector<double>& values);

std::string pattern_to_json(const MeasurementPattern& p);
MeasurementPattern pattern_from_json(const std::string& text);

}  // namespace mbqc
