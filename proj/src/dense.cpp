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

#include "mbqc/dense.hpp"

#include <cmath>
#include <limits>

#include "mbqc/errors.hpp"

namespace mbqc {

State zero_state(int n) {
  State s(std::size_t{1} << n, cd{0, 0});
  s[0] = 1.0;
  return s;
}

State plus_state(int n) {
  const double a = std::pow(2.0, -0.5 * n);
  return State(std::size_t{1} << n, cd{a, 0});
}

State kron(const State& low, const State& high) {
  State out(low.size() * high.size());
  for (std::size_t h = 0; h < high.size(); ++h) {
    for (std::size_t l = 0; l < low.size(); ++l) out[h * low.size() + l] = high[h] * low[l];
  }
  return out;
}

void apply_1q(State& psi, int q, const Mat2& m) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & bit) continue;
    cd a0 = psi[i], a1 = psi[i | bit];
    psi[i] = m[0] * a0 + m[1] * a1;
    psi[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void apply_cz(State& psi, int a, int b) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if ((i & mask) == mask) psi[i] = -psi[i];
  }
}

void apply_pauli(State& psi, const PauliString& p) {
  for (int q = 0; q < p.size(); ++q) {
    if (p[q] != Pauli::I) apply_1q(psi, q, pauli_matrix(p[q]));
  }
  const cd f = p.phase_factor();
  for (cd& a : psi) a *= f;
}

cd inner(const State& a, const State& b) {
  if (a.size() != b.size()) throw InvalidArgument("state size mismatch");
  cd s{0, 0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const State& a) { return std::sqrt(std::abs(inner(a, a))); }

void normalize(State& a) {
  const double n = norm(a);
  if (n == 0.0) throw ImpossibleBranch("cannot normalize the zero vector");
  for (cd& x : a) x /= n;
}

cd expectation(const State& psi, const PauliString& p) {
  State t = psi;
  apply_pauli(t, p);
  return inner(psi, t);
}

double phase_distance(const State& a, const State& b) {
  if (a.size() != b.size()) throw InvalidArgument("state size mismatch");
  const double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) return std::numeric_limits<double>::infinity();
  const cd ov = inner(b, a);
  const cd ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cd{1, 0};
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] / na - ph * b[i] / nb);
  return std::sqrt(acc);
}

double unitary_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& u) {
  if (a.rows() != u.rows() || a.cols() != u.cols()) throw InvalidArgument("shape mismatch");
  const double na = a.norm();
  if (na < 1e-300) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd an = a * (std::sqrt(static_cast<double>(u.cols())) / na);
  cd tr = (u.adjoint() * an).trace();
  cd ph = std::abs(tr) > 1e-12 ? tr / std::abs(tr) : cd{1, 0};
  return (an - ph * u).norm();
}

Eigen::MatrixXcd embed_1q(int n, int q, const Mat2& m) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    State col(static_cast<std::size_t>(dim), cd{0, 0});
    col[static_cast<std::size_t>(c)] = 1.0;
    apply_1q(col, q, m);
    for (Eigen::Index r = 0; r < dim; ++r) out(r, c) = col[static_cast<std::size_t>(r)];
  }
  return out;
}

Mat2 rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, cd{0, -s}, cd{0, -s}, c};
}

Mat2 rz(double theta) {
  return {std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)};
}

}  // namespace mbqc
