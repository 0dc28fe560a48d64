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

#include "mbqc/clifford.hpp"

#include <cmath>
#include <deque>
#include <optional>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

constexpr double kTol = 1e-9;
const cd kI{0.0, 1.0};

const std::array<Mat2, 4> kPauliMats = {{
    {1, 0, 0, 1},
    {0, 1, 1, 0},
    {0, cd{0, -1}, cd{0, 1}, 0},
    {1, 0, 0, -1},
}};

bool close(const Mat2& a, const Mat2& b) {
  for (int k = 0; k < 4; ++k) {
    if (std::abs(a[k] - b[k]) > kTol) return false;
  }
  return true;
}

Mat2 scaled(const Mat2& a, cd s) {
  return {a[0] * s, a[1] * s, a[2] * s, a[3] * s};
}

// Identify m as +-P for a Pauli P, if possible.
std::optional<SignedPauli> as_signed_pauli(const Mat2& m) {
  for (int p = 0; p < 4; ++p) {
    for (int s : {1, -1}) {
      if (close(m, scaled(kPauliMats[p], static_cast<double>(s)))) {
        return SignedPauli{static_cast<Pauli>(p), s};
      }
    }
  }
  return std::nullopt;
}

struct Table {
  std::vector<Mat2> mats;
  // images[i][p] = C_i P C_i^dagger
  std::vector<std::array<SignedPauli, 4>> images;
  std::array<std::array<int, Clifford::kOrder>, Clifford::kOrder> mul{};
  std::array<int, Clifford::kOrder> inv{};

  std::optional<int> find(const Mat2& m) const {
    auto x = as_signed_pauli(matmul(matmul(m, kPauliMats[1]), adjoint(m)));
    auto z = as_signed_pauli(matmul(matmul(m, kPauliMats[3]), adjoint(m)));
    if (!x || !z) return std::nullopt;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i][1] == *x && images[i][3] == *z) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  void add(const Mat2& m) {
    // Fix the phase so the first nonzero entry is real positive.
    Mat2 c = m;
    for (const cd& e : m) {
      if (std::abs(e) > kTol) {
        c = scaled(m, std::conj(e) / std::abs(e));
        break;
      }
    }
    std::array<SignedPauli, 4> im{};
    for (int p = 0; p < 4; ++p) {
      auto sp = as_signed_pauli(matmul(matmul(c, kPauliMats[p]), adjoint(c)));
      if (!sp) throw InternalError("clifford enumeration produced a non-Clifford");
      im[p] = *sp;
    }
    mats.push_back(c);
    images.push_back(im);
  }

  Table() {
    const double r = 1.0 / std::sqrt(2.0);
    const Mat2 h{r, r, r, -r};
    const Mat2 s{1, 0, 0, kI};
    add(kPauliMats[0]);
    std::deque<int> queue{0};
    while (!queue.empty()) {
      int g = queue.front();
      queue.pop_front();
      for (const Mat2& gen : {h, s}) {
        Mat2 m = matmul(gen, mats[static_cast<std::size_t>(g)]);
        if (!find(m)) {
          add(m);
          queue.push_back(static_cast<int>(mats.size()) - 1);
        }
      }
    }
    if (mats.size() != Clifford::kOrder) throw InternalError("clifford group order");
    for (int i = 0; i < Clifford::kOrder; ++i) {
      for (int j = 0; j < Clifford::kOrder; ++j) {
        mul[i][j] = *find(matmul(mats[i], mats[j]));
        if (mul[i][j] == 0) inv[i] = j;
      }
    }
  }
};

const Table& table() {
  static const Table t;
  return t;
}

}  // namespace

Mat2 matmul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 adjoint(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ParseError(std::string("not a Pauli letter: '") + c + "'");
  }
}

const Mat2& pauli_matrix(Pauli p) { return kPauliMats[static_cast<int>(p)]; }

PauliProduct pauli_mul(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  int ia = static_cast<int>(a), ib = static_cast<int>(b);
  auto c = static_cast<Pauli>(6 - ia - ib);
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  bool cyclic = (ib - ia + 3) % 3 == 1;
  return {c, cyclic ? 1 : 3};
}

Clifford Clifford::from_index(int idx) {
  if (idx < 0 || idx >= kOrder) throw InvalidArgument("clifford index out of range");
  return Clifford(idx);
}

Clifford Clifford::from_matrix(const Mat2& m) {
  auto idx = table().find(m);
  if (!idx) throw InvalidArgument("matrix is not a single-qubit Clifford");
  return Clifford(*idx);
}

Clifford Clifford::h() {
  const double r = 1.0 / std::sqrt(2.0);
  return from_matrix({r, r, r, -r});
}

Clifford Clifford::s() { return from_matrix({1, 0, 0, kI}); }

Clifford Clifford::sqrt_ix() {
  const double r = 1.0 / std::sqrt(2.0);
  return from_matrix({r, kI * r, kI * r, r});
}

Clifford Clifford::sqrt_miz() {
  const double r = 1.0 / std::sqrt(2.0);
  return from_matrix({r - kI * r, 0, 0, r + kI * r});
}

Clifford Clifford::pauli(Pauli p) { return from_matrix(kPauliMats[static_cast<int>(p)]); }

const Mat2& Clifford::matrix() const { return table().mats[static_cast<std::size_t>(idx_)]; }

Clifford Clifford::operator*(Clifford rhs) const { return Clifford(table().mul[idx_][rhs.idx_]); }

Clifford Clifford::inverse() const { return Clifford(table().inv[idx_]); }

SignedPauli Clifford::conjugate(Pauli p) const {
  return table().images[static_cast<std::size_t>(idx_)][static_cast<int>(p)];
}

SignedPauli Clifford::conjugate_dag(Pauli p) const { return inverse().conjugate(p); }

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  PauliString out(static_cast<int>(text.size() - pos));
  for (std::size_t k = pos; k < text.size(); ++k) {
    out.letters_[k - pos] = pauli_from_char(text[k]);
  }
  out.set_phase(phase);
  return out;
}

PauliString PauliString::single(int n, int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n) throw InvalidArgument("qubit index out of range");
  PauliString out(n);
  out.set(qubit, p);
  return out;
}

cd PauliString::phase_factor() const {
  static const std::array<cd, 4> f = {cd{1, 0}, cd{0, 1}, cd{-1, 0}, cd{0, -1}};
  return f[static_cast<std::size_t>(phase_)];
}

bool PauliString::is_diagonal() const {
  for (Pauli p : letters_) {
    if (p == Pauli::X || p == Pauli::Y) return false;
  }
  return true;
}

bool PauliString::is_identity() const {
  for (Pauli p : letters_) {
    if (p != Pauli::I) return false;
  }
  return true;
}

std::string PauliString::letters() const {
  std::string s;
  s.reserve(letters_.size());
  for (Pauli p : letters_) s.push_back(pauli_char(p));
  return s;
}

std::string PauliString::str() const {
  static const std::array<const char*, 4> prefix = {"+", "+i", "-", "-i"};
  return prefix[static_cast<std::size_t>(phase_)] + letters();
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (rhs.size() != size()) throw InvalidArgument("Pauli string length mismatch");
  PauliString out(size());
  int phase = phase_ + rhs.phase_;
  for (int q = 0; q < size(); ++q) {
    auto pr = pauli_mul((*this)[q], rhs[q]);
    out.set(q, pr.letter);
    phase += pr.phase;
  }
  out.set_phase(phase);
  return out;
}

}  // namespace mbqc
