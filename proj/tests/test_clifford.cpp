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

#include <gtest/gtest.h>

#include <set>

#include "mbqc/clifford.hpp"
#include "mbqc/dense.hpp"
#include "mbqc/errors.hpp"

namespace mbqc {
namespace {

bool same_up_to_phase(const Mat2& a, const Mat2& b) {
  cd ph{0, 0};
  for (int k = 0; k < 4; ++k) {
    if (std::abs(b[k]) > 1e-9) {
      ph = a[k] / b[k];
      break;
    }
  }
  if (std::abs(std::abs(ph) - 1.0) > 1e-9) return false;
  for (int k = 0; k < 4; ++k) {
    if (std::abs(a[k] - ph * b[k]) > 1e-9) return false;
  }
  return true;
}

TEST(CliffordTest, GroupHasTwentyFourDistinctElements) {
  std::set<int> seen;
  for (int i = 0; i < Clifford::kOrder; ++i) {
    const Clifford c = Clifford::from_index(i);
    seen.insert(c.index());
    EXPECT_TRUE((c * c.inverse()).is_identity());
    for (int j = 0; j < i; ++j) {
      EXPECT_FALSE(same_up_to_phase(c.matrix(), Clifford::from_index(j).matrix()));
    }
  }
  EXPECT_EQ(seen.size(), 24u);
  EXPECT_THROW(Clifford::from_index(24), InvalidArgument);
}

TEST(CliffordTest, ProductMatchesMatrices) {
  for (int i = 0; i < 24; ++i) {
    for (int j = 0; j < 24; ++j) {
      const Clifford a = Clifford::from_index(i), b = Clifford::from_index(j);
      EXPECT_TRUE(same_up_to_phase((a * b).matrix(), matmul(a.matrix(), b.matrix())));
    }
  }
}

TEST(CliffordTest, ConjugationMatchesMatrices) {
  for (int i = 0; i < 24; ++i) {
    const Clifford c = Clifford::from_index(i);
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const SignedPauli s = c.conjugate(p);
      Mat2 expect = pauli_matrix(s.letter);
      for (auto& x : expect) x *= static_cast<double>(s.sign);
      const Mat2 got = matmul(matmul(c.matrix(), pauli_matrix(p)), adjoint(c.matrix()));
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(got[k] - expect[k]), 0.0, 1e-12);
      const SignedPauli d = c.conjugate_dag(p);
      const SignedPauli back = c.conjugate(d.letter);
      EXPECT_EQ(back.letter, p);
      EXPECT_EQ(back.sign * d.sign, 1);
    }
  }
}

TEST(CliffordTest, NamedElements) {
  const double r = M_SQRT1_2;
  EXPECT_TRUE(same_up_to_phase(Clifford::sqrt_ix().matrix(), {r, cd{0, r}, cd{0, r}, r}));
  EXPECT_TRUE(same_up_to_phase(Clifford::sqrt_miz().matrix(), {cd{r, -r}, 0, 0, cd{r, r}}));
  EXPECT_EQ(Clifford::h() * Clifford::h(), Clifford::identity());
  EXPECT_EQ(Clifford::s() * Clifford::s(), Clifford::pauli(Pauli::Z));
  EXPECT_EQ(Clifford::from_matrix(pauli_matrix(Pauli::Y)), Clifford::pauli(Pauli::Y));
  EXPECT_THROW(Clifford::from_matrix(rz(0.3)), InvalidArgument);
}

TEST(PauliStringTest, ParseAndMultiply) {
  const PauliString a = PauliString::parse("XZ");
  const PauliString b = PauliString::parse("-iYY");
  EXPECT_EQ(b.phase(), 3);
  EXPECT_EQ(a.letters(), "XZ");
  // XY = iZ, ZY = -iX: product phase i * -i * (-i) = -i.
  const PauliString c = a * b;
  EXPECT_EQ(c.letters(), "ZX");
  EXPECT_EQ(c.phase(), 3);
  EXPECT_TRUE(PauliString::parse("ZIZ").is_diagonal());
  EXPECT_FALSE(PauliString::parse("ZXZ").is_diagonal());
  EXPECT_THROW(PauliString::parse("XQ"), ParseError);
}

TEST(PauliStringTest, DenseActionMatchesLetters) {
  State psi = plus_state(2);
  psi[3] = cd{0, 0.5};
  State t = psi;
  apply_pauli(t, PauliString::parse("XZ"));
  State u = psi;
  apply_1q(u, 0, pauli_matrix(Pauli::X));
  apply_1q(u, 1, pauli_matrix(Pauli::Z));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(t[i] - u[i]), 0.0, 1e-15);
}

}  // namespace
}  // namespace mbqc
