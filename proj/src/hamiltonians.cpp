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

#include "mbqc/hamiltonians.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

constexpr double kZeroWeight = 1e-14;

// Pseudo-boolean polynomial: sorted variable sets to weights.
using Poly = std::map<std::vector<int>, double>;

void add_monomial(Poly& poly, double c, std::vector<int> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());  // x^2 = x
  poly[vars] += c;
}

// prod_{i in S} (1 - Z_i)/2 = 2^-|S| sum_{T subset S} (-1)^|T| Z_T.
PauliHamiltonian poly_to_pauli(int n, const Poly& poly) {
  std::map<std::string, double> acc;
  for (const auto& [vars, c] : poly) {
    const std::size_t k = vars.size();
    const double scale = c / static_cast<double>(std::size_t{1} << k);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::string s(static_cast<std::size_t>(n), 'I');
      int bits = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (mask >> j & 1) {
          s[static_cast<std::size_t>(vars[j])] = 'Z';
          ++bits;
        }
      }
      acc[s] += (bits % 2 ? -scale : scale);
    }
  }
  std::vector<std::pair<double, std::string>> terms;
  for (const auto& [s, c] : acc) terms.emplace_back(c, s);
  return make_hamiltonian(n, terms);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void PauliHamiltonian::canonicalize() {
  std::map<std::string, double> acc;
  for (const auto& t : terms) {
    if (t.string.size() != n) throw InvalidArgument("term length differs from qubit count");
    if (t.string.phase() != 0) throw InvalidArgument("term carries a phase");
    acc[t.string.letters()] += t.coeff;
  }
  terms.clear();
  for (const auto& [s, c] : acc) {
    if (std::abs(c) > kZeroWeight) terms.push_back({c, PauliString::parse(s)});
  }
}

bool PauliHamiltonian::is_diagonal() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const PauliTerm& t) { return t.string.is_diagonal(); });
}

void PauliHamiltonian::validate() const {
  if (n < 1) throw InvalidArgument("hamiltonian needs at least one qubit");
  for (const auto& t : terms) {
    if (t.string.size() != n) throw InvalidArgument("term length differs from qubit count");
    if (t.string.phase() != 0) throw InvalidArgument("term carries a phase");
    if (!std::isfinite(t.coeff)) throw InvalidArgument("non-finite coefficient");
  }
}

PauliHamiltonian make_hamiltonian(int n,
                                  const std::vector<std::pair<double, std::string>>& terms) {
  PauliHamiltonian h;
  h.n = n;
  for (const auto& [c, s] : terms) {
    if (static_cast<int>(s.size()) != n) {
      throw InvalidArgument(fmt::format("term '{}' has length {}, expected {}", s, s.size(), n));
    }
    h.terms.push_back({c, PauliString::parse(s)});
  }
  h.canonicalize();
  return h;
}

PauliHamiltonian heisenberg_2d(int rows, int cols, double B, double J) {
  if (rows < 1 || cols < 1) throw InvalidArgument("grid needs at least one site");
  const int n = rows * cols;
  std::vector<std::pair<double, std::string>> terms;
  auto term = [n](std::initializer_list<std::pair<int, char>> ops) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (auto [q, c] : ops) s[static_cast<std::size_t>(q)] = c;
    return s;
  };
  for (int q = 0; q < n; ++q) terms.emplace_back(B, term({{q, 'Z'}}));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int q = r * cols + c;
      std::vector<int> nbrs;
      if (c + 1 < cols) nbrs.push_back(q + 1);
      if (r + 1 < rows) nbrs.push_back(q + cols);
      for (int p : nbrs) {
        for (char l : {'X', 'Y', 'Z'}) terms.emplace_back(J, term({{q, l}, {p, l}}));
      }
    }
  }
  return make_hamiltonian(n, terms);
}

void RoutingInstance::validate() const {
  if (n < 2) throw InvalidArgument("routing instance needs at least two vertices");
  if (depot < 0 || depot >= n) throw InvalidArgument("depot out of range");
  if (static_cast<int>(w.size()) != n) throw InvalidArgument("weight matrix has wrong size");
  double wmax = 0.0;
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(w[u].size()) != n) throw InvalidArgument("weight matrix is not square");
    if (w[u][u] != 0.0) throw InvalidArgument("weight matrix diagonal must be zero");
    for (int v = 0; v < n; ++v) {
      if (!(w[u][v] >= 0.0) || !std::isfinite(w[u][v])) {
        throw InvalidArgument("weights must be finite and non-negative");
      }
      if (w[u][v] != w[v][u]) throw InvalidArgument("weight matrix is not symmetric");
      wmax = std::max(wmax, w[u][v]);
    }
  }
  if (!(A > wmax)) {
    throw InvalidArgument(fmt::format("penalty A = {} must exceed the largest weight {}", A, wmax));
  }
}

int RoutingInstance::qubit(int v, int t) const {
  if (v == depot || v < 0 || v >= n || t < 1 || t > n - 1) {
    throw InvalidArgument("routing variable out of range");
  }
  const int vi = v < depot ? v : v - 1;
  return vi * (n - 1) + (t - 1);
}

RoutingInstance RoutingInstance::square(double A) {
  RoutingInstance inst;
  inst.n = 4;
  inst.A = A;
  inst.w = {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}};
  return inst;
}

PauliHamiltonian vehicle_routing(const RoutingInstance& inst) {
  inst.validate();
  const int n = inst.n;
  std::vector<int> others;
  for (int v = 0; v < n; ++v) {
    if (v != inst.depot) others.push_back(v);
  }
  Poly poly;
  // Cost: depot to first stop, consecutive stops, last stop back to depot.
  for (int v : others) {
    add_monomial(poly, inst.w[inst.depot][v], {inst.qubit(v, 1)});
    add_monomial(poly, inst.w[v][inst.depot], {inst.qubit(v, n - 1)});
  }
  for (int t = 1; t + 1 <= n - 1; ++t) {
    for (int u : others) {
      for (int v : others) {
        if (u != v) add_monomial(poly, inst.w[u][v], {inst.qubit(u, t), inst.qubit(v, t + 1)});
      }
    }
  }
  // (1 - sum x)^2 = 1 - sum x + 2 sum_{i<j} x_i x_j for binary x.
  auto one_hot = [&](const std::vector<int>& qs) {
    add_monomial(poly, inst.A, {});
    for (std::size_t i = 0; i < qs.size(); ++i) {
      add_monomial(poly, -inst.A, {qs[i]});
      for (std::size_t j = i + 1; j < qs.size(); ++j) {
        add_monomial(poly, 2.0 * inst.A, {qs[i], qs[j]});
      }
    }
  };
  for (int v : others) {
    std::vector<int> qs;
    for (int t = 1; t <= n - 1; ++t) qs.push_back(inst.qubit(v, t));
    one_hot(qs);
  }
  for (int t = 1; t <= n - 1; ++t) {
    std::vector<int> qs;
    for (int v : others) qs.push_back(inst.qubit(v, t));
    one_hot(qs);
  }
  return poly_to_pauli(inst.num_qubits(), poly);
}

namespace {

// x[v][t] for t in 0..n with the depot pinned at both ends.
std::vector<std::vector<int>> routing_table(const RoutingInstance& inst, std::uint64_t bits) {
  const int n = inst.n;
  std::vector<std::vector<int>> x(static_cast<std::size_t>(n), std::vector<int>(n + 1, 0));
  x[inst.depot][0] = 1;
  x[inst.depot][n] = 1;
  for (int v = 0; v < n; ++v) {
    if (v == inst.depot) continue;
    for (int t = 1; t <= n - 1; ++t) x[v][t] = static_cast<int>(bits >> inst.qubit(v, t) & 1);
  }
  return x;
}

}  // namespace

double routing_cost(const RoutingInstance& inst, std::uint64_t bits) {
  const auto x = routing_table(inst, bits);
  double cost = 0.0;
  for (int t = 0; t < inst.n; ++t) {
    for (int u = 0; u < inst.n; ++u) {
      for (int v = 0; v < inst.n; ++v) {
        if (u != v && x[u][t] && x[v][t + 1]) cost += inst.w[u][v];
      }
    }
  }
  return cost;
}

double routing_penalty(const RoutingInstance& inst, std::uint64_t bits) {
  const auto x = routing_table(inst, bits);
  double pen = 0.0;
  for (int v = 0; v < inst.n; ++v) {
    if (v == inst.depot) continue;
    int s = 0;
    for (int t = 1; t <= inst.n - 1; ++t) s += x[v][t];
    pen += (1 - s) * (1 - s);
  }
  for (int t = 1; t <= inst.n - 1; ++t) {
    int s = 0;
    for (int v = 0; v < inst.n; ++v) {
      if (v != inst.depot) s += x[v][t];
    }
    pen += (1 - s) * (1 - s);
  }
  return inst.A * pen;
}

std::vector<int> routing_tour(const RoutingInstance& inst, std::uint64_t bits) {
  if (routing_penalty(inst, bits) != 0.0) return {};
  const auto x = routing_table(inst, bits);
  std::vector<int> tour{inst.depot};
  for (int t = 1; t <= inst.n - 1; ++t) {
    for (int v = 0; v < inst.n; ++v) {
      if (v != inst.depot && x[v][t]) tour.push_back(v);
    }
  }
  return tour;
}

double diagonal_energy(const PauliHamiltonian& h, std::uint64_t bits) {
  double e = 0.0;
  for (const auto& t : h.terms) {
    if (!t.string.is_diagonal()) throw InvalidArgument("hamiltonian is not diagonal");
    int par = 0;
    for (int q = 0; q < h.n; ++q) {
      if (t.string[q] == Pauli::Z) par ^= static_cast<int>(bits >> q & 1);
    }
    e += par ? -t.coeff : t.coeff;
  }
  return e;
}

PauliHamiltonian parse_hamiltonian(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  PauliHamiltonian h;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string coef_tok, letters, extra;
    ls >> coef_tok >> letters;
    if (letters.empty() || (ls >> extra)) {
      throw ParseError(fmt::format("line {}: expected 'coefficient PAULISTRING'", lineno));
    }
    double c = 0.0;
    try {
      std::size_t used = 0;
      c = std::stod(coef_tok, &used);
      if (used != coef_tok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(fmt::format("line {}: bad coefficient '{}'", lineno, coef_tok));
    }
    if (!std::isfinite(c)) throw ParseError(fmt::format("line {}: non-finite coefficient", lineno));
    for (char ch : letters) {
      if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z') {
        throw ParseError(fmt::format("line {}: bad Pauli letter '{}'", lineno, ch));
      }
    }
    if (n < 0) n = static_cast<int>(letters.size());
    if (static_cast<int>(letters.size()) != n) {
      throw ParseError(fmt::format("line {}: string length {} differs from {}", lineno,
                                   letters.size(), n));
    }
    h.terms.push_back({c, PauliString::parse(letters)});
  }
  if (n < 0) throw ParseError("no terms");
  h.n = n;
  h.canonicalize();
  return h;
}

PauliHamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw MissingData(fmt::format("cannot open hamiltonian file '{}'", path));
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_hamiltonian(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path, e.what()));
  }
}

std::string format_hamiltonian(const PauliHamiltonian& h) {
  std::string out;
  for (const auto& t : h.terms) out += fmt::format("{:.17g} {}\n", t.coeff, t.string.letters());
  return out;
}

void save_hamiltonian(const PauliHamiltonian& h, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument(fmt::format("cannot write '{}'", path));
  f << format_hamiltonian(h);
}

Eigen::MatrixXcd hamiltonian_matrix(const PauliHamiltonian& h) {
  if (h.n > kDenseDiagLimit) {
    throw ResourceLimit(fmt::format("dense matrix limited to {} qubits", kDenseDiagLimit));
  }
  const std::size_t dim = std::size_t{1} << h.n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms) {
    std::size_t xmask = 0;
    for (int q = 0; q < h.n; ++q) {
      if (t.string[q] == Pauli::X || t.string[q] == Pauli::Y) xmask |= std::size_t{1} << q;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      cd amp = t.coeff;
      for (int q = 0; q < h.n; ++q) {
        const int b = static_cast<int>(i >> q & 1);
        switch (t.string[q]) {
          case Pauli::Y:
            amp *= b ? cd{0, -1} : cd{0, 1};
            break;
          case Pauli::Z:
            if (b) amp = -amp;
            break;
          default:
            break;
        }
      }
      m(static_cast<Eigen::Index>(i ^ xmask), static_cast<Eigen::Index>(i)) += amp;
    }
  }
  return m;
}

GroundState exact_ground_energy(const PauliHamiltonian& h, double tol) {
  if (h.n > kExactQubitLimit) {
    throw ResourceLimit(fmt::format("exact ground energy limited to {} qubits", kExactQubitLimit));
  }
  std::vector<double> ev;
  if (h.is_diagonal()) {
    const std::uint64_t dim = std::uint64_t{1} << h.n;
    ev.reserve(dim);
    for (std::uint64_t b = 0; b < dim; ++b) ev.push_back(diagonal_energy(h, b));
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian_matrix(h),
                                                       Eigen::EigenvaluesOnly);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) ev.push_back(es.eigenvalues()(k));
  }
  GroundState g;
  g.energy = *std::min_element(ev.begin(), ev.end());
  g.degeneracy = static_cast<int>(
      std::count_if(ev.begin(), ev.end(), [&](double e) { return e - g.energy <= tol; }));
  return g;
}

}  // namespace mbqc
