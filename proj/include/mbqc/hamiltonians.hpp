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

// Problem Hamiltonians as real-weighted sums of Pauli strings, with the
// exact ground-state oracle used by every VQE check.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "mbqc/clifford.hpp"

namespace mbqc {

struct PauliHamiltonian {
  int n = 0;
  std::vector<PauliTerm> terms;

  // Merges equal strings, drops zero weights, sorts by letters.
  void canonicalize();
  bool is_diagonal() const;
  // Throws InvalidArgument on a length mismatch, a phase or a non-finite
  // coefficient.
  void validate() const;
};

// Builds from (coefficient, letters) pairs; the result is canonical.
PauliHamiltonian make_hamiltonian(int n, const std::vector<std::pair<double, std::string>>& terms);

// B * sum Z_i + J * sum over open-grid neighbours (XX + YY + ZZ); qubit
// r * cols + c sits at row r, column c.
PauliHamiltonian heisenberg_2d(int rows, int cols, double B, double J);

// Single vehicle on a complete graph; the depot is visited at time 0 and n.
struct RoutingInstance {
  int n = 0;
  std::vector<std::vector<double>> w;
  double A = 0.0;
  int depot = 0;

  // Throws InvalidArgument unless w is square, symmetric, non-negative with a
  // zero diagonal and A exceeds the largest weight.
  void validate() const;
  int num_qubits() const { return (n - 1) * (n - 1); }
  // Qubit of non-depot vertex v at time t in 1..n-1.
  int qubit(int v, int t) const;

  // Unit square: perimeter edges 1, diagonals 2.
  static RoutingInstance square(double A = 2.5);
};

// H_C + A * H_P over x = (1 - Z)/2, constants kept.
PauliHamiltonian vehicle_routing(const RoutingInstance& inst);

// Combinatorial values on a bitstring (bit q = x_q).
double routing_cost(const RoutingInstance& inst, std::uint64_t bits);
double routing_penalty(const RoutingInstance& inst, std::uint64_t bits);
// Vertex sequence of a valid tour (depot first), or empty.
std::vector<int> routing_tour(const RoutingInstance& inst, std::uint64_t bits);

// Eigenvalue of a diagonal Hamiltonian on a computational basis state.
double diagonal_energy(const PauliHamiltonian& h, std::uint64_t bits);

// "coef LETTERS" per line, '#' comments and blank lines ignored.
PauliHamiltonian parse_hamiltonian(const std::string& text);
PauliHamiltonian load_hamiltonian(const std::string& path);
std::string format_hamiltonian(const PauliHamiltonian& h);
void save_hamiltonian(const PauliHamiltonian& h, const std::string& path);

Eigen::MatrixXcd hamiltonian_matrix(const PauliHamiltonian& h);

struct GroundState {
  double energy = 0.0;
  int degeneracy = 0;
};

inline constexpr int kExactQubitLimit = 14;
// Dense diagonalization is capped lower than the diagonal scan.
inline constexpr int kDenseDiagLimit = 11;

GroundState exact_ground_energy(const PauliHamiltonian& h, double tol = 1e-8);

}  // namespace mbqc
