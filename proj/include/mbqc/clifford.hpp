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

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mbqc {

using cd = std::complex<double>;

// Row-major 2x2 complex matrix.
using Mat2 = std::array<cd, 4>;

Mat2 matmul(const Mat2& a, const Mat2& b);
Mat2 adjoint(const Mat2& a);

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);
const Mat2& pauli_matrix(Pauli p);

// a*b = i^phase * c for single-qubit letters.
struct PauliProduct {
  Pauli letter;
  int phase;
};
PauliProduct pauli_mul(Pauli a, Pauli b);

inline bool anticommute(Pauli a, Pauli b) {
  return a != Pauli::I && b != Pauli::I && a != b;
}

struct SignedPauli {
  Pauli letter = Pauli::I;
  int sign = 1;
  friend bool operator==(const SignedPauli&, const SignedPauli&) = default;
};

// Element of the single-qubit Clifford group modulo global phase. The 24
// elements are enumerated once by breadth-first search over {H, S}; products
// are looked up in a fixed multiplication table.
class Clifford {
 public:
  static constexpr int kOrder = 24;

  constexpr Clifford() = default;

  static Clifford identity() { return Clifford(); }
  static Clifford from_index(int idx);
  static Clifford h();
  static Clifford s();
  // sqrt(+iX) = (I + iX)/sqrt2 and sqrt(-iZ) = (I - iZ)/sqrt2.
  static Clifford sqrt_ix();
  static Clifford sqrt_miz();
  static Clifford pauli(Pauli p);
  // Element whose matrix equals m up to phase; throws if m is not Clifford.
  static Clifford from_matrix(const Mat2& m);

  int index() const { return idx_; }
  const Mat2& matrix() const;
  Clifford operator*(Clifford rhs) const;
  Clifford inverse() const;
  bool is_identity() const { return idx_ == 0; }

  // C P C^dagger.
  SignedPauli conjugate(Pauli p) const;
  // C^dagger P C.
  SignedPauli conjugate_dag(Pauli p) const;

  friend bool operator==(Clifford a, Clifford b) { return a.idx_ == b.idx_; }

 private:
  explicit constexpr Clifford(int idx) : idx_(idx) {}
  int idx_ = 0;
};

// Tensor product of single-qubit Paulis with a global phase i^phase.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n) : letters_(static_cast<std::size_t>(n), Pauli::I) {}
  // Accepts an optional leading sign: "-XZ", "+iXZ", "-iYY".
  static PauliString parse(std::string_view text);
  static PauliString single(int n, int qubit, Pauli p);

  int size() const { return static_cast<int>(letters_.size()); }
  Pauli operator[](int q) const { return letters_[static_cast<std::size_t>(q)]; }
  void set(int q, Pauli p) { letters_[static_cast<std::size_t>(q)] = p; }
  int phase() const { return phase_; }
  void set_phase(int ph) { phase_ = ((ph % 4) + 4) % 4; }
  cd phase_factor() const;
  bool is_diagonal() const;
  bool is_identity() const;

  // Letters only, qubit 0 first.
  std::string letters() const;
  std::string str() const;

  PauliString operator*(const PauliString& rhs) const;
  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
  int phase_ = 0;
};

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
};

}  // namespace mbqc
