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

#include <filesystem>
#include <fstream>
#include <random>

#include "mbqc/errors.hpp"
#include "mbqc/hamiltonians.hpp"
#include "mbqc/tensor_sim.hpp"

namespace mbqc {
namespace {

TEST(HeisenbergTest, SingleSiteIsField) {
  const PauliHamiltonian h = heisenberg_2d(1, 1, 0.7, 3.0);
  ASSERT_EQ(h.terms.size(), 1u);
  EXPECT_EQ(h.terms[0].string.letters(), "Z");
  EXPECT_DOUBLE_EQ(h.terms[0].coeff, 0.7);
}

TEST(HeisenbergTest, TermCount) {
  for (auto [r, c] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{1, 4}}) {
    const std::size_t edges = static_cast<std::size_t>(r * (c - 1) + c * (r - 1));
    EXPECT_EQ(heisenberg_2d(r, c, 1.0, 0.5).terms.size(), static_cast<std::size_t>(r * c) + 3 * edges);
  }
  EXPECT_THROW(heisenberg_2d(0, 2, 1.0, 1.0), InvalidArgument);
}

TEST(HeisenbergTest, GroundEnergies) {
  const GroundState free = exact_ground_energy(heisenberg_2d(2, 2, 1.0, 0.0));
  EXPECT_NEAR(free.energy, -4.0, 1e-10);
  EXPECT_EQ(free.degeneracy, 1);
  // Reference values from an independent numpy diagonalization.
  EXPECT_NEAR(exact_ground_energy(heisenberg_2d(2, 2, 1.0, 0.5)).energy, -4.0, 1e-9);
  EXPECT_NEAR(exact_ground_energy(heisenberg_2d(2, 2, 1.0, 1.0)).energy, -8.0, 1e-9);
  EXPECT_NEAR(exact_ground_energy(heisenberg_2d(2, 2, 1.0, 2.0)).energy, -16.0, 1e-9);
  EXPECT_NEAR(exact_ground_energy(heisenberg_2d(2, 2, 1.0, 0.1)).energy, -3.6, 1e-9);
}

TEST(HamiltonianTest, MatrixIsHermitianAndMatchesExpectation) {
  const PauliHamiltonian h = heisenberg_2d(1, 3, 0.3, 1.1);
  const Eigen::MatrixXcd m = hamiltonian_matrix(h);
  EXPECT_LE((m - m.adjoint()).norm(), 1e-12);
  std::mt19937_64 rng(71);
  std::normal_distribution<double> g;
  State psi(8);
  for (auto& a : psi) a = cd{g(rng), g(rng)};
  normalize(psi);
  Eigen::VectorXcd v(8);
  for (int i = 0; i < 8; ++i) v(i) = psi[static_cast<std::size_t>(i)];
  EXPECT_NEAR((v.adjoint() * m * v)(0, 0).real(), expectation_value(psi, h.terms), 1e-12);
}

TEST(HamiltonianTest, ExactLimits) {
  PauliHamiltonian h = make_hamiltonian(1, {{1.0, "Z"}});
  const GroundState g = exact_ground_energy(h);
  EXPECT_DOUBLE_EQ(g.energy, -1.0);
  EXPECT_EQ(g.degeneracy, 1);
  PauliHamiltonian big = make_hamiltonian(15, {{1.0, std::string(15, 'Z')}});
  EXPECT_THROW(exact_ground_energy(big), ResourceLimit);
  PauliHamiltonian dense12 = make_hamiltonian(12, {{1.0, "X" + std::string(11, 'I')}});
  EXPECT_THROW(exact_ground_energy(dense12), ResourceLimit);
  PauliHamiltonian diag14 = make_hamiltonian(14, {{1.0, std::string(14, 'Z')}});
  EXPECT_EQ(exact_ground_energy(diag14).degeneracy, 1 << 13);
}

TEST(RoutingTest, SquareInstanceGroundStates) {
  const RoutingInstance inst = RoutingInstance::square(2.5);
  const PauliHamiltonian h = vehicle_routing(inst);
  EXPECT_EQ(h.n, 9);
  EXPECT_TRUE(h.is_diagonal());
  const GroundState g = exact_ground_energy(h);
  EXPECT_NEAR(g.energy, 4.0, 1e-9);
  EXPECT_EQ(g.degeneracy, 2);
  std::set<std::vector<int>> minima;
  for (std::uint64_t b = 0; b < 512; ++b) {
    if (std::abs(diagonal_energy(h, b) - 4.0) < 1e-9) minima.insert(routing_tour(inst, b));
  }
  EXPECT_EQ(minima, (std::set<std::vector<int>>{{0, 1, 2, 3}, {0, 3, 2, 1}}));
}

TEST(RoutingTest, DiagonalMatchesCombinatorialEnergy) {
  const RoutingInstance inst = RoutingInstance::square(2.5);
  const PauliHamiltonian h = vehicle_routing(inst);
  int cycles = 0;
  for (std::uint64_t b = 0; b < 512; ++b) {
    const double e = routing_cost(inst, b) + routing_penalty(inst, b);
    EXPECT_NEAR(diagonal_energy(h, b), e, 1e-9) << b;
    const std::vector<int> tour = routing_tour(inst, b);
    if (!tour.empty()) {
      ++cycles;
      EXPECT_EQ(routing_penalty(inst, b), 0.0);
      const bool diagonals = std::abs(tour[1] - tour[0]) == 2 || std::abs(tour[2] - tour[1]) == 2;
      EXPECT_NEAR(e, diagonals ? 6.0 : 4.0, 1e-9);
    }
  }
  EXPECT_EQ(cycles, 6);
  EXPECT_NEAR(diagonal_energy(h, 0), 2.5 * 6, 1e-9);
}

TEST(RoutingTest, RejectsBadInstances) {
  RoutingInstance inst = RoutingInstance::square(2.0);
  EXPECT_THROW(vehicle_routing(inst), InvalidArgument);
  inst = RoutingInstance::square();
  inst.w[0][1] = 3.0;
  EXPECT_THROW(vehicle_routing(inst), InvalidArgument);
  inst = RoutingInstance::square();
  inst.w[2][2] = 1.0;
  EXPECT_THROW(vehicle_routing(inst), InvalidArgument);
  inst = RoutingInstance::square();
  inst.depot = 2;
  EXPECT_NEAR(exact_ground_energy(vehicle_routing(inst)).energy, 4.0, 1e-9);
}

TEST(HamiltonianFileTest, ParseMergeAndComments) {
  const PauliHamiltonian a = parse_hamiltonian("1.0 Z\n");
  ASSERT_EQ(a.terms.size(), 1u);
  EXPECT_EQ(a.n, 1);
  const PauliHamiltonian b = parse_hamiltonian("# header\n0.5 X\n\n  0.5 X  # again\n");
  ASSERT_EQ(b.terms.size(), 1u);
  EXPECT_DOUBLE_EQ(b.terms[0].coeff, 1.0);
  const PauliHamiltonian c = parse_hamiltonian("1 ZZ\n-1 ZZ\n2 XX\n");
  EXPECT_EQ(c.terms.size(), 1u);
}

TEST(HamiltonianFileTest, Errors) {
  try {
    parse_hamiltonian("1.0 Z\n# ok\nfoo Z\n");
    FAIL() << "expected a throw";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_hamiltonian("1.0 ZZ\n1.0 Z\n"), ParseError);
  EXPECT_THROW(parse_hamiltonian("1.0 ZQ\n"), ParseError);
  EXPECT_THROW(parse_hamiltonian("1.0 Z extra\n"), ParseError);
  EXPECT_THROW(parse_hamiltonian("# nothing\n"), ParseError);
  EXPECT_THROW(load_hamiltonian("/nonexistent/h.txt"), MissingData);
}

TEST(HamiltonianFileTest, SaveLoadRoundTripIsExact) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<std::pair<double, std::string>> terms;
  const char* l = "IXYZ";
  for (int k = 0; k < 30; ++k) {
    std::string s;
    for (int q = 0; q < 4; ++q) s += l[rng() % 4];
    terms.emplace_back(u(rng), s);
  }
  const PauliHamiltonian h = make_hamiltonian(4, terms);
  const auto path = std::filesystem::temp_directory_path() / "mbqc_roundtrip.ham";
  save_hamiltonian(h, path.string());
  const PauliHamiltonian g = load_hamiltonian(path.string());
  std::filesystem::remove(path);
  ASSERT_EQ(g.terms.size(), h.terms.size());
  for (std::size_t k = 0; k < h.terms.size(); ++k) {
    EXPECT_EQ(g.terms[k].coeff, h.terms[k].coeff);
    EXPECT_EQ(g.terms[k].string, h.terms[k].string);
  }
}

}  // namespace
}  // namespace mbqc
