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

// Small dense state-vector toolkit used by the oracles. Qubit q is bit q of
// the amplitude index (little-endian).

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mbqc/clifford.hpp"

namespace mbqc {

using State = std::vector<cd>;
using Qubit1 = std::array<cd, 2>;

inline constexpr int kDenseQubitLimit = 14;

State zero_state(int n);
State plus_state(int n);
State kron(const State& low, const State& high);  // low occupies the low bits

void apply_1q(State& psi, int q, const Mat2& m);
void apply_cz(State& psi, int a, int b);
void apply_pauli(State& psi, const PauliString& p);

cd inner(const State& a, const State& b);  // <a|b>
double norm(const State& a);
void normalize(State& a);
cd expectation(const State& psi, const PauliString& p);

// min over alpha of || a/|a| - e^{i alpha} b/|b| ||.
double phase_distance(const State& a, const State& b);

// Frobenius distance after normalizing a to Frobenius norm sqrt(dim) and
// aligning its global phase with u. Returns +inf if a vanishes.
double unitary_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& u);

Eigen::MatrixXcd embed_1q(int n, int q, const Mat2& m);

Mat2 rx(double theta);
Mat2 rz(double theta);

}  // namespace mbqc
