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

#include "mbqc/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <optional>
#include <queue>
#include <tuple>

#include "json.hpp"
#include "mbqc/errors.hpp"

namespace mbqc {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi - 1e-15) r = 0.0;
  return r + 0.0;  // no negative zero
}

std::string vs(int v) { return std::to_string(v); }

}  // namespace

int parity(const DepSet& s, const Outcomes& outcomes) {
  int acc = 0;
  for (int u : s) {
    if (u == kConstOne) {
      acc ^= 1;
      continue;
    }
    auto it = outcomes.find(u);
    if (it == outcomes.end()) throw InvalidArgument("missing outcome for vertex " + vs(u));
    acc ^= it->second & 1;
  }
  return acc;
}

void xor_into(DepSet& s, const DepSet& f) {
  for (int u : f) {
    if (!s.erase(u)) s.insert(u);
  }
}

// --- Angle -----------------------------------------------------------------

Angle Angle::constant(double value) { return Angle{wrap(value), -1, 1}; }

Angle Angle::param(int slot, int coeff, double offset) {
  if (slot < 0) throw InvalidArgument("negative parameter slot");
  if (coeff != 1 && coeff != -1) throw InvalidArgument("parameter coefficient must be +1 or -1");
  return Angle{wrap(offset), slot, coeff};
}

double Angle::value(const std::vector<double>& params) const {
  if (slot < 0) return offset;
  if (static_cast<std::size_t>(slot) >= params.size()) {
    throw InvalidArgument("unbound parameter slot " + vs(slot));
  }
  return offset + coeff * params[static_cast<std::size_t>(slot)];
}

Angle Angle::negated() const { return Angle{wrap(-offset), slot, slot < 0 ? 1 : -coeff}; }

Angle Angle::shifted(double delta) const { return Angle{wrap(offset + delta), slot, coeff}; }

Angle Angle::affine(int eps, double delta) const {
  return Angle{wrap(eps * offset + delta), slot, slot < 0 ? 1 : eps * coeff};
}

Angle Angle::bound(const std::vector<double>& params) const {
  return slot < 0 ? *this : Angle::constant(value(params));
}

// --- Bases -----------------------------------------------------------------

std::string basis_kind_name(BasisKind k) {
  switch (k) {
    case BasisKind::PauliX: return "X";
    case BasisKind::PauliY: return "Y";
    case BasisKind::PauliZ: return "Z";
    case BasisKind::PlaneXY: return "XY";
    case BasisKind::PlaneYZ: return "YZ";
    case BasisKind::PlaneXZ: return "XZ";
  }
  throw InternalError("bad basis kind");
}

BasisKind basis_kind_from_name(const std::string& s) {
  if (s == "X") return BasisKind::PauliX;
  if (s == "Y") return BasisKind::PauliY;
  if (s == "Z") return BasisKind::PauliZ;
  if (s == "XY") return BasisKind::PlaneXY;
  if (s == "YZ") return BasisKind::PlaneYZ;
  if (s == "XZ") return BasisKind::PlaneXZ;
  throw ParseError("unknown basis kind '" + s + "'");
}

bool is_pauli_kind(BasisKind k) {
  return k == BasisKind::PauliX || k == BasisKind::PauliY || k == BasisKind::PauliZ;
}

Pauli pauli_of_kind(BasisKind k) {
  switch (k) {
    case BasisKind::PauliX: return Pauli::X;
    case BasisKind::PauliY: return Pauli::Y;
    case BasisKind::PauliZ: return Pauli::Z;
    default: throw InvalidArgument("basis kind is not a Pauli");
  }
}

BasisKind kind_of_pauli(Pauli p) {
  switch (p) {
    case Pauli::X: return BasisKind::PauliX;
    case Pauli::Y: return BasisKind::PauliY;
    case Pauli::Z: return BasisKind::PauliZ;
    default: throw InvalidArgument("identity is not a measurement basis");
  }
}

MeasurementBasis MeasurementBasis::pauli(Pauli p) { return {kind_of_pauli(p), {}, {}, {}}; }

MeasurementBasis MeasurementBasis::plane(BasisKind kind, Angle angle, DepSet sign_deps,
                                         DepSet pi_deps) {
  if (is_pauli_kind(kind)) throw InvalidArgument("plane() needs a plane kind");
  MeasurementBasis b{kind, angle, std::move(sign_deps), std::move(pi_deps)};
  b.fold_constants();
  return b;
}

double MeasurementBasis::resolved_angle(const Outcomes& outcomes,
                                        const std::vector<double>& params) const {
  if (is_pauli()) return 0.0;
  double a = angle.value(params);
  if (parity(sign_deps, outcomes)) a = -a;
  if (parity(pi_deps, outcomes)) a += kPi;
  return a;
}

Qubit1 MeasurementBasis::outcome_vector(int outcome, double resolved) const {
  const double r = 1.0 / std::sqrt(2.0);
  const double phi = resolved + kPi * (outcome & 1);
  switch (kind) {
    case BasisKind::PauliZ:
      return outcome ? Qubit1{0.0, 1.0} : Qubit1{1.0, 0.0};
    case BasisKind::PauliX:
      return {r, r * (outcome ? -1.0 : 1.0)};
    case BasisKind::PauliY:
      return {r, cd{0, outcome ? -r : r}};
    case BasisKind::PlaneXY:
      return {r, r * std::polar(1.0, phi)};
    case BasisKind::PlaneYZ:
      return {std::cos(phi / 2), cd{0, std::sin(phi / 2)}};
    case BasisKind::PlaneXZ:
      return {std::cos(phi / 2), std::sin(phi / 2)};
  }
  throw InternalError("bad basis kind");
}

void MeasurementBasis::fold_constants() {
  if (sign_deps.erase(kConstOne)) angle = angle.negated();
  if (pi_deps.erase(kConstOne)) angle = angle.shifted(kPi);
}

ByproductTable merge_byproducts(const ByproductTable& a, const ByproductTable& b) {
  if (a.size() != b.size()) throw InvalidArgument("byproduct tables differ in width");
  ByproductTable out = a;
  for (std::size_t j = 0; j < b.size(); ++j) {
    xor_into(out[j].sz, b[j].sz);
    xor_into(out[j].sx, b[j].sx);
  }
  return out;
}

// --- Pattern ---------------------------------------------------------------

std::vector<int> MeasurementPattern::measured() const {
  std::vector<int> out;
  for (const auto& [v, _] : bases) out.push_back(v);
  return out;
}

int MeasurementPattern::num_pauli_measurements() const {
  int n = 0;
  for (const auto& [_, b] : bases) n += b.is_pauli() ? 1 : 0;
  return n;
}

bool MeasurementPattern::is_bound() const {
  for (const auto& [_, b] : bases) {
    if (b.angle.symbolic()) return false;
  }
  return true;
}

Clifford MeasurementPattern::input_frame(int v) const {
  auto it = in_frame.find(v);
  return it == in_frame.end() ? Clifford::identity() : it->second;
}

Clifford MeasurementPattern::output_frame(int v) const {
  auto it = out_frame.find(v);
  return it == out_frame.end() ? Clifford::identity() : it->second;
}

std::vector<int> MeasurementPattern::measurement_order() const {
  std::map<int, int> indeg;
  std::map<int, std::vector<int>> users;
  for (const auto& [v, b] : bases) {
    DepSet deps = b.sign_deps;
    deps.insert(b.pi_deps.begin(), b.pi_deps.end());
    deps.erase(kConstOne);
    indeg[v] = 0;
    for (int u : deps) {
      if (!bases.count(u)) {
        throw InvalidArgument("vertex " + vs(v) + " depends on unmeasured vertex " + vs(u));
      }
      ++indeg[v];
      users[u].push_back(v);
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (const auto& [v, d] : indeg) {
    if (d == 0) ready.push(v);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : users[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (order.size() != bases.size()) throw InvalidArgument("cyclic measurement dependencies");
  return order;
}

void MeasurementPattern::validate() const {
  auto check_list = [&](const std::vector<int>& l, const char* what) {
    std::set<int> seen;
    for (int v : l) {
      if (!graph.has_vertex(v)) throw InvalidArgument(std::string(what) + " vertex " + vs(v) + " not in graph");
      if (!seen.insert(v).second) throw InvalidArgument(std::string("duplicate ") + what + " vertex " + vs(v));
    }
  };
  check_list(inputs, "input");
  check_list(outputs, "output");
  const std::set<int> outs(outputs.begin(), outputs.end());
  for (int v : graph.vertices()) {
    const bool has = bases.count(v) != 0;
    if (outs.count(v) && has) throw InvalidArgument("output vertex " + vs(v) + " has a basis");
    if (!outs.count(v) && !has) throw InvalidArgument("vertex " + vs(v) + " has no basis");
  }
  for (const auto& [v, b] : bases) {
    if (!graph.has_vertex(v)) throw InvalidArgument("basis for unknown vertex " + vs(v));
    if (b.is_pauli() && (!b.sign_deps.empty() || !b.pi_deps.empty())) {
      throw InvalidArgument("Pauli basis at " + vs(v) + " carries dependencies");
    }
    if (b.angle.slot >= num_params()) {
      throw InvalidArgument("basis at " + vs(v) + " uses undeclared parameter slot");
    }
  }
  if (byproduct.size() != outputs.size()) throw InvalidArgument("byproduct width mismatch");
  for (const auto& e : byproduct) {
    for (const DepSet* s : {&e.sz, &e.sx}) {
      for (int u : *s) {
        if (u != kConstOne && !bases.count(u)) {
          throw InvalidArgument("byproduct references unmeasured vertex " + vs(u));
        }
      }
    }
  }
  for (const auto& [v, _] : in_frame) {
    if (std::find(inputs.begin(), inputs.end(), v) == inputs.end()) {
      throw InvalidArgument("input frame on non-input vertex " + vs(v));
    }
  }
  for (const auto& [v, _] : out_frame) {
    if (!outs.count(v)) throw InvalidArgument("output frame on non-output vertex " + vs(v));
  }
  (void)measurement_order();
}

MeasurementPattern identity_pattern(int n) {
  if (n < 0) throw InvalidArgument("negative width");
  MeasurementPattern p;
  p.graph = Graph(n);
  for (int k = 0; k < n; ++k) {
    p.inputs.push_back(k);
    p.outputs.push_back(k);
  }
  p.byproduct.assign(static_cast<std::size_t>(n), {});
  p.clifford = true;
  return p;
}

MeasurementPattern relabel(const MeasurementPattern& p, const std::map<int, int>& mapping) {
  auto m = [&](int v) {
    if (v == kConstOne) return v;
    auto it = mapping.find(v);
    return it == mapping.end() ? v : it->second;
  };
  auto ms = [&](const DepSet& s) {
    DepSet out;
    for (int v : s) out.insert(m(v));
    return out;
  };
  MeasurementPattern q;
  for (int v : p.graph.vertices()) q.graph.add_vertex(m(v));
  for (auto [a, b] : p.graph.edges()) q.graph.add_edge(m(a), m(b));
  for (int v : p.inputs) q.inputs.push_back(m(v));
  for (int v : p.outputs) q.outputs.push_back(m(v));
  for (const auto& [v, b] : p.bases) {
    MeasurementBasis nb = b;
    nb.sign_deps = ms(b.sign_deps);
    nb.pi_deps = ms(b.pi_deps);
    q.bases[m(v)] = nb;
  }
  for (const auto& e : p.byproduct) q.byproduct.push_back({ms(e.sz), ms(e.sx)});
  for (const auto& [v, c] : p.in_frame) q.in_frame[m(v)] = c;
  for (const auto& [v, c] : p.out_frame) q.out_frame[m(v)] = c;
  q.clifford = p.clifford;
  q.params = p.params;
  return q;
}

MeasurementPattern compact(const MeasurementPattern& p) {
  std::map<int, int> mapping;
  int k = 0;
  for (int v : p.graph.vertices()) mapping[v] = k++;
  return relabel(p, mapping);
}

void substitute_outcome(MeasurementPattern& p, int u, const DepSet& f) {
  for (auto& [_, b] : p.bases) {
    if (b.sign_deps.count(u)) xor_into(b.sign_deps, f);
    if (b.pi_deps.count(u)) xor_into(b.pi_deps, f);
    b.fold_constants();
  }
  for (auto& e : p.byproduct) {
    if (e.sz.count(u)) xor_into(e.sz, f);
    if (e.sx.count(u)) xor_into(e.sx, f);
  }
}

namespace {

// Pauli Z^z X^x pushed through C as C (Z^z X^x) C^dagger, up to sign, in
// (x-set, z-set) form.
std::pair<DepSet, DepSet> conjugate_sets(Clifford c, const DepSet& xs, const DepSet& zs) {
  if (c.is_identity()) return {xs, zs};
  auto bits = [](Pauli p) {
    return std::pair<bool, bool>{p == Pauli::X || p == Pauli::Y, p == Pauli::Z || p == Pauli::Y};
  };
  auto [xx, xz] = bits(c.conjugate(Pauli::X).letter);
  auto [zx, zz] = bits(c.conjugate(Pauli::Z).letter);
  DepSet nx, nz;
  if (xx) xor_into(nx, xs);
  if (zx) xor_into(nx, zs);
  if (xz) xor_into(nz, xs);
  if (zz) xor_into(nz, zs);
  return {nx, nz};
}

}  // namespace

MeasurementPattern propagate_byproduct(const MeasurementPattern& p, const ByproductTable& incoming) {
  if (incoming.size() != p.inputs.size()) {
    throw InvalidArgument("incoming byproduct has width " + vs(static_cast<int>(incoming.size())) +
                          ", pattern has " + vs(static_cast<int>(p.inputs.size())) + " inputs");
  }
  MeasurementPattern q = p;
  // Per vertex: (X-part, Z-part) arriving before measurement.
  std::map<int, std::pair<DepSet, DepSet>> acc;
  for (std::size_t k = 0; k < incoming.size(); ++k) {
    const int i = p.inputs[k];
    auto [xs, zs] = conjugate_sets(p.input_frame(i), incoming[k].sx, incoming[k].sz);
    if (xs.empty() && zs.empty()) continue;
    auto& a = acc[i];
    xor_into(a.first, xs);
    xor_into(a.second, zs);
    // CZ X_i = X_i Z_N(i) CZ.
    for (int b : p.graph.neighbors(i)) xor_into(acc[b].second, xs);
  }
  std::vector<std::pair<int, DepSet>> flips;
  for (const auto& [u, parts] : acc) {
    const auto& [xs, zs] = parts;
    if (xs.empty() && zs.empty()) continue;
    auto out = std::find(q.outputs.begin(), q.outputs.end(), u);
    if (out != q.outputs.end()) {
      auto [cx, cz] = conjugate_sets(p.output_frame(u), xs, zs);
      auto& e = q.byproduct[static_cast<std::size_t>(out - q.outputs.begin())];
      xor_into(e.sx, cx);
      xor_into(e.sz, cz);
      continue;
    }
    MeasurementBasis& b = q.bases.at(u);
    DepSet both = xs;
    xor_into(both, zs);
    switch (b.kind) {
      case BasisKind::PlaneXY:
        xor_into(b.sign_deps, xs);
        xor_into(b.pi_deps, zs);
        break;
      case BasisKind::PlaneYZ:
        xor_into(b.sign_deps, zs);
        xor_into(b.pi_deps, xs);
        break;
      case BasisKind::PlaneXZ:
        xor_into(b.sign_deps, both);
        xor_into(b.pi_deps, xs);
        break;
      case BasisKind::PauliX:
        if (!zs.empty()) flips.emplace_back(u, zs);
        break;
      case BasisKind::PauliY:
        if (!both.empty()) flips.emplace_back(u, both);
        break;
      case BasisKind::PauliZ:
        if (!xs.empty()) flips.emplace_back(u, xs);
        break;
    }
    b.fold_constants();
  }
  // A Pauli measurement hit by an anticommuting Pauli reports the opposite
  // outcome; every consumer of that bit absorbs the flip.
  for (const auto& [u, f] : flips) substitute_outcome(q, u, f);
  return q;
}

MeasurementPattern concatenate_on(const MeasurementPattern& p1, const MeasurementPattern& p2,
                                  const std::vector<int>& qubits) {
  if (qubits.size() != p2.inputs.size()) {
    throw InvalidArgument("concatenation width mismatch: " + vs(static_cast<int>(qubits.size())) +
                          " wires for " + vs(static_cast<int>(p2.inputs.size())) + " inputs");
  }
  std::set<int> seen;
  for (int q : qubits) {
    if (q < 0 || q >= static_cast<int>(p1.outputs.size())) {
      throw InvalidArgument("wire index " + vs(q) + " out of range");
    }
    if (!seen.insert(q).second) throw InvalidArgument("wire " + vs(q) + " used twice");
    if (!p1.output_frame(p1.outputs[static_cast<std::size_t>(q)]).is_identity()) {
      throw InvalidArgument("concatenation needs identity output frames at the glue");
    }
  }
  for (int i : p2.inputs) {
    if (!p2.input_frame(i).is_identity()) {
      throw InvalidArgument("concatenation needs identity input frames at the glue");
    }
  }
  std::map<int, int> mapping;
  int next = p1.graph.max_vertex() + 1;
  for (int v : p2.graph.vertices()) {
    auto it = std::find(p2.inputs.begin(), p2.inputs.end(), v);
    if (it != p2.inputs.end()) {
      mapping[v] = p1.outputs[static_cast<std::size_t>(qubits[static_cast<std::size_t>(it - p2.inputs.begin())])];
    } else {
      mapping[v] = next++;
    }
  }
  ByproductTable incoming;
  for (int q : qubits) incoming.push_back(p1.byproduct[static_cast<std::size_t>(q)]);
  MeasurementPattern q2 = propagate_byproduct(relabel(p2, mapping), incoming);

  MeasurementPattern r;
  r.graph = p1.graph;
  for (int v : q2.graph.vertices()) r.graph.add_vertex(v);
  for (auto [a, b] : q2.graph.edges()) r.graph.toggle_edge(a, b);
  r.inputs = p1.inputs;
  r.outputs = p1.outputs;
  r.byproduct = p1.byproduct;
  r.bases = p1.bases;
  for (const auto& [v, b] : q2.bases) r.bases[v] = b;
  r.in_frame = p1.in_frame;
  for (const auto& [v, c] : p1.out_frame) r.out_frame[v] = c;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    const auto q = static_cast<std::size_t>(qubits[j]);
    r.outputs[q] = q2.outputs[j];
    r.byproduct[q] = q2.byproduct[j];
    if (auto it = q2.out_frame.find(q2.outputs[j]); it != q2.out_frame.end()) {
      r.out_frame[it->first] = it->second;
    }
  }
  r.clifford = p1.clifford && q2.clifford;
  r.params = p1.params.size() >= q2.params.size() ? p1.params : q2.params;
  return r;
}

MeasurementPattern concatenate(const MeasurementPattern& p1, const MeasurementPattern& p2) {
  if (p1.outputs.size() != p2.inputs.size()) {
    throw InvalidArgument("concatenation width mismatch");
  }
  std::vector<int> all(p1.outputs.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
  return concatenate_on(p1, p2, all);
}

namespace {

struct PlaneAxes {
  BasisKind kind;
  Pauli a;
  Pauli b;
};

constexpr std::array<PlaneAxes, 3> kPlanes = {{
    {BasisKind::PlaneXY, Pauli::X, Pauli::Y},
    {BasisKind::PlaneYZ, Pauli::Z, Pauli::Y},
    {BasisKind::PlaneXZ, Pauli::Z, Pauli::X},
}};

const PlaneAxes& axes_of(BasisKind k) {
  for (const auto& p : kPlanes) {
    if (p.kind == k) return p;
  }
  throw InternalError("not a plane kind");
}

// Replaces the basis by C^dagger M C. Returns true when a Pauli basis picked
// up a sign, i.e. its outcome bit must be flipped.
bool conjugate_basis(MeasurementBasis& b, Clifford c) {
  if (c.is_identity()) return false;
  if (b.is_pauli()) {
    SignedPauli s = c.conjugate_dag(pauli_of_kind(b.kind));
    b.kind = kind_of_pauli(s.letter);
    return s.sign == -1;
  }
  const PlaneAxes& src = axes_of(b.kind);
  const SignedPauli i1 = c.conjugate_dag(src.a);
  const SignedPauli i2 = c.conjugate_dag(src.b);
  for (const auto& dst : kPlanes) {
    int eps = 0;
    double delta = 0;
    // cos(phi) s1 P1 + sin(phi) s2 P2 rewritten as cos(phi') A + sin(phi') B.
    if (i1.letter == dst.a && i2.letter == dst.b) {
      eps = i1.sign * i2.sign;
      delta = i1.sign == 1 ? 0.0 : kPi;
    } else if (i1.letter == dst.b && i2.letter == dst.a) {
      eps = -i1.sign * i2.sign;
      delta = i1.sign == 1 ? kPi / 2 : -kPi / 2;
    } else {
      continue;
    }
    b.kind = dst.kind;
    b.angle = b.angle.affine(eps, delta);
    // (-1)^s phi maps to (-1)^s (eps phi + delta) + pi s when delta = pi/2
    // mod pi, so every sign dependency is also a pi dependency.
    if (std::abs(std::remainder(delta, kPi)) > 1e-12) xor_into(b.pi_deps, b.sign_deps);
    b.fold_constants();
    return false;
  }
  throw InternalError("conjugated measurement plane left the XY/YZ/XZ family");
}

Clifford transpose(Clifford c) {
  const Mat2& m = c.matrix();
  return Clifford::from_matrix({m[0], m[2], m[1], m[3]});
}

}  // namespace

MeasurementPattern transform_bases_under_lc(const MeasurementPattern& p,
                                            const LocalCliffordRecord& rec) {
  MeasurementPattern q = p;
  std::vector<int> flipped;
  for (auto& [v, b] : q.bases) {
    if (conjugate_basis(b, rec.at(v))) flipped.push_back(v);
  }
  for (int v : flipped) substitute_outcome(q, v, {kConstOne});
  for (int o : q.outputs) {
    Clifford f = q.output_frame(o) * rec.at(o);
    if (f.is_identity()) {
      q.out_frame.erase(o);
    } else {
      q.out_frame[o] = f;
    }
  }
  return q;
}

// --- Clifford reduction ----------------------------------------------------
//
// Inputs are handled by attaching a reference vertex r_k to every input,
// turning the input-to-output map into a state. Pauli vertices are then
// measured out on the extended graph with the record bookkeeping of
// measure_pauli_inplace. At the end each reference must be a leaf hanging off
// a distinct vertex u_k, which becomes the new input with a Clifford frame
// read off the reference's record.

namespace {

// A plane measurement at a numeric multiple of pi/2 is a Pauli measurement
// whose outcome is flipped by the parity of some earlier outcomes.
MeasurementPattern normalize_pauli_planes(const MeasurementPattern& p) {
  MeasurementPattern q = p;
  for (int v : p.measured()) {
    MeasurementBasis& b = q.bases.at(v);
    if (b.is_pauli() || b.angle.symbolic()) continue;
    const double k = b.angle.offset / (kPi / 2);
    const double r = std::round(k);
    if (std::abs(k - r) > 1e-12) continue;
    const int quarter = static_cast<int>(r) % 4;
    const PlaneAxes& ax = axes_of(b.kind);
    DepSet flip = b.pi_deps;
    if (quarter % 2) xor_into(flip, b.sign_deps);
    if (quarter >= 2) xor_into(flip, {kConstOne});
    b = MeasurementBasis::pauli(quarter % 2 ? ax.b : ax.a);
    substitute_outcome(q, v, flip);
  }
  return q;
}

bool refs_ok(const Graph& g, const std::vector<int>& refs) {
  std::set<int> partners;
  const std::set<int> rs(refs.begin(), refs.end());
  for (int r : refs) {
    if (g.degree(r) != 1) return false;
    const int u = *g.neighbors(r).begin();
    if (rs.count(u) || !partners.insert(u).second) return false;
  }
  return true;
}

struct Elim {
  Graph g;
  LocalCliffordRecord rec;
  int outcome = 0;
};

// Measures the Pauli `letter` at a on rec|g> with outcome fixed so that the
// branch exists. b0 is the vertex used for the X rule. Returns nothing when
// the step is not possible or would break the reference invariant.
std::optional<Elim> try_eliminate(const Graph& g0, const LocalCliffordRecord& rec0, int a,
                                  Pauli letter, int b0, const std::vector<int>& pre,
                                  const std::vector<int>* refs) {
  Elim e{g0, rec0, 0};
  for (int w : pre) local_complement_with_record(e.g, e.rec, w);
  auto eff = [&] { return e.rec.at(a).conjugate_dag(letter); };
  SignedPauli s = eff();
  bool used_b0 = false;
  for (int guard = 0; s.letter != Pauli::Z; ++guard) {
    if (guard > 6) return std::nullopt;
    if (s.letter == Pauli::Y) {
      local_complement_with_record(e.g, e.rec, a);
    } else {
      if (e.g.neighbors(a).empty()) break;
      if (!used_b0) {
        if (b0 < 0 || !e.g.has_edge(a, b0)) return std::nullopt;
        used_b0 = true;
      }
      local_complement_with_record(e.g, e.rec, b0);
    }
    s = eff();
  }
  if (s.letter == Pauli::X) {
    e.outcome = s.sign == 1 ? 0 : 1;
  } else if (s.sign == -1) {
    for (int b : e.g.neighbors(a)) e.rec.right_multiply(b, Clifford::pauli(Pauli::Z));
  }
  e.rec.erase(a);
  e.g.remove_vertex(a);
  if (refs && !refs_ok(e.g, *refs)) return std::nullopt;
  return e;
}

// Breadth-first search over the LC orbit for a member whose references are
// leaves; applies the LC sequence on success.
bool orbit_fix(Graph& g, LocalCliffordRecord& rec, const std::vector<int>& refs, std::size_t cap,
               ReductionStats& st) {
  const std::vector<int> verts = g.vertices();
  auto build = [&](const std::vector<Edge>& edges) {
    Graph h;
    for (int v : verts) h.add_vertex(v);
    for (auto [a, b] : edges) h.add_edge(a, b);
    return h;
  };
  std::set<std::vector<Edge>> seen{g.edges()};
  std::deque<std::pair<std::vector<Edge>, std::vector<int>>> queue;
  queue.emplace_back(g.edges(), std::vector<int>{});
  while (!queue.empty()) {
    auto [edges, seq] = std::move(queue.front());
    queue.pop_front();
    Graph h = build(edges);
    st.orbit_members = seen.size();
    if (refs_ok(h, refs)) {
      for (int w : seq) local_complement_with_record(g, rec, w);
      return true;
    }
    for (int v : verts) {
      Graph n = local_complement(h, v);
      auto key = n.edges();
      if (!seen.insert(key).second) continue;
      if (seen.size() > cap) {
        st.orbit_members = seen.size();
        return false;
      }
      auto next = seq;
      next.push_back(v);
      queue.emplace_back(std::move(key), std::move(next));
    }
  }
  st.orbit_members = seen.size();
  st.orbit_exhausted = true;
  return false;
}

class Reducer {
 public:
  Reducer(const MeasurementPattern& p, const ReductionPolicy& policy)
      : p_(p), policy_(policy), g_(p.graph) {
    const int base = p.graph.max_vertex() + 1;
    for (std::size_t k = 0; k < p.inputs.size(); ++k) {
      const int r = base + static_cast<int>(k);
      refs_.push_back(r);
      g_.add_vertex(r);
      g_.add_edge(r, p.inputs[k]);
      lambda_.push_back(Clifford::h() * p.input_frame(p.inputs[k]));
    }
    ref_set_.insert(refs_.begin(), refs_.end());
    for (const auto& [v, b] : p.bases) {
      if (b.is_pauli()) pending_.insert(v);
    }
    outputs_.insert(p.outputs.begin(), p.outputs.end());
  }

  // Eliminates every Pauli vertex, then repairs references via the orbit.
  bool run_fast(ReductionStats& st) {
    while (!pending_.empty()) {
      const int a = next_vertex();
      const auto nb = g_.neighbors(a);
      int b0 = -1;
      for (int b : nb) {
        if (ref_set_.count(b)) {
          b0 = b;
          break;
        }
      }
      if (b0 < 0 && !nb.empty()) {
        b0 = *std::min_element(nb.begin(), nb.end(),
                               [&](int x, int y) { return score(x) < score(y); });
      }
      auto e = try_eliminate(g_, rec_, a, letter(a), b0, {}, nullptr);
      if (!e) throw InternalError("Pauli elimination did not converge at vertex " + vs(a));
      accept(a, std::move(*e));
    }
    if (refs_ok(g_, refs_)) return true;
    st.orbit_fix = true;
    return orbit_fix(g_, rec_, refs_, policy_.orbit_cap, st);
  }

  // Eliminates only steps that keep every reference a leaf. Vertices that
  // cannot be removed this way stay as Pauli measurements.
  void run_strict() {
    for (;;) {
      bool progressed = false;
      for (int a : ordered_pending()) {
        const auto& nb = g_.neighbors(a);
        std::vector<int> prefs;
        std::vector<int> plain;
        for (int b : nb) {
          if (ref_set_.count(b)) {
            if (prefs.empty()) prefs.push_back(b);
          } else {
            plain.push_back(b);
          }
        }
        std::sort(plain.begin(), plain.end(), [&](int x, int y) { return score(x) < score(y); });
        prefs.insert(prefs.end(), plain.begin(), plain.end());
        if (prefs.empty()) prefs.push_back(-1);
        std::set<int> around(nb.begin(), nb.end());
        for (int b : nb) {
          for (int x : g_.neighbors(b)) around.insert(x);
        }
        around.erase(a);
        std::vector<std::vector<int>> pres{{}};
        for (int w : around) pres.push_back({w});
        std::optional<Elim> e;
        for (const auto& pre : pres) {
          for (int b0 : prefs) {
            e = try_eliminate(g_, rec_, a, letter(a), b0, pre, &refs_);
            if (e) break;
          }
          if (e) break;
        }
        if (e) {
          accept(a, std::move(*e));
          progressed = true;
          break;
        }
      }
      if (!progressed) return;
    }
  }

  MeasurementPattern finish(ReductionStats& st) {
    MeasurementPattern q = p_;
    for (const auto& [a, o] : fixed_) q.bases.erase(a);
    for (const auto& [a, o] : fixed_) {
      DepSet f{a};
      if (o) f.insert(kConstOne);
      substitute_outcome(q, a, f);
    }
    std::vector<int> new_inputs;
    std::map<int, Clifford> frames;
    for (std::size_t k = 0; k < refs_.size(); ++k) {
      const int r = refs_[k];
      const int u = *g_.neighbors(r).begin();
      new_inputs.push_back(u);
      // (C (x) 1)|Phi> = (1 (x) C^T)|Phi> moves the reference record onto u.
      Clifford f = Clifford::h() * transpose(rec_.at(r)) * lambda_[k];
      if (!f.is_identity()) frames[u] = f;
      g_.remove_vertex(r);
      rec_.erase(r);
    }
    q.inputs = new_inputs;
    q.in_frame = frames;
    q.graph = g_;
    MeasurementPattern t = transform_bases_under_lc(q, rec_);
    st.eliminated = static_cast<int>(fixed_.size());
    st.kept_pauli = t.num_pauli_measurements();
    return compact(t);
  }

 private:
  Pauli letter(int v) const { return pauli_of_kind(p_.bases.at(v).kind); }

  std::tuple<bool, int, int> score(int u) const {
    const int cls = pending_.count(u) ? 0 : (outputs_.count(u) ? 2 : 1);
    return {ref_set_.count(u) != 0, cls, u};
  }

  int effective_rank(int v) const {
    switch (rec_.at(v).conjugate_dag(letter(v)).letter) {
      case Pauli::Z: return 0;
      case Pauli::Y: return 1;
      default: return 2;
    }
  }

  std::vector<int> ordered_pending() const {
    std::vector<int> order(pending_.begin(), pending_.end());
    if (policy_.order == ReductionOrder::kEffectiveKind) {
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return effective_rank(x) < effective_rank(y); });
    }
    return order;
  }

  int next_vertex() const { return ordered_pending().front(); }

  void accept(int a, Elim e) {
    g_ = std::move(e.g);
    rec_ = std::move(e.rec);
    pending_.erase(a);
    fixed_[a] = e.outcome;
  }

  const MeasurementPattern& p_;
  ReductionPolicy policy_;
  Graph g_;
  LocalCliffordRecord rec_;
  std::vector<int> refs_;
  std::set<int> ref_set_;
  std::vector<Clifford> lambda_;
  std::set<int> pending_;
  std::set<int> outputs_;
  std::map<int, int> fixed_;
};

}  // namespace

MeasurementPattern clifford_reduce(const MeasurementPattern& p, const ReductionPolicy& policy,
                                   ReductionStats* stats) {
  ReductionStats local;
  ReductionStats& st = stats ? *stats : local;
  st = {};
  const MeasurementPattern q = normalize_pauli_planes(p);
  if (q.num_pauli_measurements() == 0) return p;
  {
    Reducer r(q, policy);
    if (r.run_fast(st)) return r.finish(st);
  }
  st.strict_fallback = true;
  Reducer r(q, policy);
  r.run_strict();
  return r.finish(st);
}

// --- Observables -----------------------------------------------------------

PauliString out_measurement_transform(const ByproductTable& byproduct, const Outcomes& outcomes,
                                      const PauliString& observable) {
  if (static_cast<int>(byproduct.size()) != observable.size()) {
    throw InvalidArgument("observable width does not match the byproduct table");
  }
  PauliString out = observable;
  int phase = observable.phase();
  for (int j = 0; j < observable.size(); ++j) {
    const auto& e = byproduct[static_cast<std::size_t>(j)];
    const Pauli p = observable[j];
    if (parity(e.sx, outcomes) && (p == Pauli::Y || p == Pauli::Z)) phase += 2;
    if (parity(e.sz, outcomes) && (p == Pauli::X || p == Pauli::Y)) phase += 2;
  }
  out.set_phase(phase);
  return out;
}

PauliString corrected_observable(const MeasurementPattern& p, const Outcomes& outcomes,
                                 const PauliString& observable) {
  PauliString out = out_measurement_transform(p.byproduct, outcomes, observable);
  int phase = out.phase();
  for (int j = 0; j < out.size(); ++j) {
    Clifford f = p.output_frame(p.outputs[static_cast<std::size_t>(j)]);
    if (f.is_identity() || out[j] == Pauli::I) continue;
    SignedPauli s = f.conjugate_dag(out[j]);
    out.set(j, s.letter);
    if (s.sign == -1) phase += 2;
  }
  out.set_phase(phase);
  return out;
}

MeasurementPattern bind_angles(const MeasurementPattern& p, const std::vector<double>& values) {
  if (values.size() != p.params.size()) {
    throw InvalidArgument("expected " + vs(p.num_params()) + " parameter values, got " +
                          vs(static_cast<int>(values.size())));
  }
  MeasurementPattern q = p;
  for (auto& [_, b] : q.bases) b.angle = b.angle.bound(values);
  q.params.clear();
  return q;
}

// --- JSON ------------------------------------------------------------------

namespace {

json angle_to_json(const Angle& a) {
  if (!a.symbolic()) return a.offset;
  return json{{"param", a.slot}, {"coeff", a.coeff}, {"offset", a.offset}};
}

Angle angle_from_json(const json& j) {
  if (j.is_number()) return Angle::constant(j.get<double>());
  return Angle::param(j.at("param").get<int>(), j.value("coeff", 1), j.value("offset", 0.0));
}

}  // namespace

std::string pattern_to_json(const MeasurementPattern& p) {
  json j;
  const std::vector<int> verts = p.graph.vertices();
  j["n"] = verts.size();
  if (!verts.empty() && verts.back() != static_cast<int>(verts.size()) - 1) j["vertices"] = verts;
  json edges = json::array();
  for (auto [a, b] : p.graph.edges()) edges.push_back({a, b});
  j["edges"] = edges;
  j["inputs"] = p.inputs;
  j["outputs"] = p.outputs;
  json bases = json::object();
  for (const auto& [v, b] : p.bases) {
    bases[std::to_string(v)] = {{"kind", basis_kind_name(b.kind)},
                                {"angle", angle_to_json(b.angle)},
                                {"sign_deps", b.sign_deps},
                                {"pi_deps", b.pi_deps}};
  }
  j["bases"] = bases;
  json byp = json::array();
  for (const auto& e : p.byproduct) byp.push_back({{"sz", e.sz}, {"sx", e.sx}});
  j["byproduct"] = byp;
  j["clifford"] = p.clifford;
  auto frames = [](const std::map<int, Clifford>& m) {
    json f = json::object();
    for (const auto& [v, c] : m) f[std::to_string(v)] = c.index();
    return f;
  };
  if (!p.in_frame.empty()) j["in_frame"] = frames(p.in_frame);
  if (!p.out_frame.empty()) j["out_frame"] = frames(p.out_frame);
  if (!p.params.empty()) j["params"] = p.params;
  return j.dump();
}

MeasurementPattern pattern_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("pattern JSON: ") + e.what());
  }
  try {
    MeasurementPattern p;
    if (j.contains("vertices")) {
      for (int v : j.at("vertices").get<std::vector<int>>()) p.graph.add_vertex(v);
    } else {
      p.graph = Graph(j.at("n").get<int>());
    }
    for (const auto& e : j.at("edges")) {
      if (e.size() != 2) throw ParseError("pattern JSON: edge must have two endpoints");
      p.graph.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    p.inputs = j.at("inputs").get<std::vector<int>>();
    p.outputs = j.at("outputs").get<std::vector<int>>();
    for (const auto& [key, b] : j.at("bases").items()) {
      MeasurementBasis mb;
      mb.kind = basis_kind_from_name(b.at("kind").get<std::string>());
      mb.angle = angle_from_json(b.value("angle", json(0.0)));
      mb.sign_deps = b.value("sign_deps", DepSet{});
      mb.pi_deps = b.value("pi_deps", DepSet{});
      mb.fold_constants();
      p.bases[std::stoi(key)] = mb;
    }
    for (const auto& e : j.at("byproduct")) {
      p.byproduct.push_back({e.value("sz", DepSet{}), e.value("sx", DepSet{})});
    }
    p.clifford = j.value("clifford", false);
    for (const char* name : {"in_frame", "out_frame"}) {
      if (!j.contains(name)) continue;
      auto& dst = std::string(name) == "in_frame" ? p.in_frame : p.out_frame;
      for (const auto& [key, idx] : j.at(name).items()) {
        dst[std::stoi(key)] = Clifford::from_index(idx.get<int>());
      }
    }
    p.params = j.value("params", std::vector<std::string>{});
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("pattern JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("pattern JSON: ") + e.what());
  }
}

}  // namespace mbqc
