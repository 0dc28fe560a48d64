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

#include <algorithm>
#include <cmath>
#include <random>

#include "mbqc/errors.hpp"
#include "mbqc/tensor_sim.hpp"

namespace mbqc {

namespace {

// Dense sweep: vertices enter lazily (a measured vertex together with its
// neighbours) and leave as soon as they are measured, so memory follows the
// live width rather than the pattern size. The low `in_bits` bits of the
// amplitude index carry an input basis index when computing a full map.
class Sweep {
 public:
  Sweep(const MeasurementPattern& p, const std::vector<Qubit1>* inputs, int limit)
      : p_(p), inputs_(inputs), limit_(limit) {
    in_bits_ = inputs ? 0 : static_cast<int>(p.inputs.size());
    st_.assign(std::size_t{1} << in_bits_, cd{1, 0});
  }

  void add(int v) {
    if (std::find(live_.begin(), live_.end(), v) != live_.end() || done_.count(v)) return;
    if (static_cast<int>(live_.size()) + 1 > limit_) {
      throw ResourceLimit("dense sweep needs more than " + std::to_string(limit_) + " live qubits");
    }
    const int pos = static_cast<int>(live_.size()) + in_bits_;
    const std::size_t half = st_.size();
    std::vector<cd> next(half * 2);
    auto it = std::find(p_.inputs.begin(), p_.inputs.end(), v);
    const double r = 1.0 / std::sqrt(2.0);
    if (it == p_.inputs.end()) {
      for (std::size_t i = 0; i < half; ++i) next[i] = next[i + half] = st_[i] * r;
    } else {
      const auto j = static_cast<std::size_t>(it - p_.inputs.begin());
      const Mat2& f = p_.input_frame(v).matrix();
      for (std::size_t i = 0; i < half; ++i) {
        cd a0, a1;
        if (inputs_) {
          const Qubit1& s = (*inputs_)[j];
          a0 = f[0] * s[0] + f[1] * s[1];
          a1 = f[2] * s[0] + f[3] * s[1];
        } else {
          const std::size_t bit = (i >> j) & 1;
          a0 = f[bit];
          a1 = f[2 + bit];
        }
        next[i] = st_[i] * a0;
        next[i + half] = st_[i] * a1;
      }
    }
    st_ = std::move(next);
    live_.push_back(v);
    for (int u : p_.graph.neighbors(v)) {
      auto k = std::find(live_.begin(), live_.end(), u);
      if (k == live_.end()) continue;
      const std::size_t mask = (std::size_t{1} << pos) |
                               (std::size_t{1} << (in_bits_ + static_cast<int>(k - live_.begin())));
      for (std::size_t i = 0; i < st_.size(); ++i) {
        if ((i & mask) == mask) st_[i] = -st_[i];
      }
    }
  }

  // Projects v onto vec (scaled by sqrt2 so deterministic branches keep
  // their norm) and drops it.
  void project(int v, const Qubit1& vec) {
    auto k = std::find(live_.begin(), live_.end(), v);
    const int pos = in_bits_ + static_cast<int>(k - live_.begin());
    const std::size_t low = (std::size_t{1} << pos) - 1;
    const cd c0 = std::conj(vec[0]) * std::sqrt(2.0), c1 = std::conj(vec[1]) * std::sqrt(2.0);
    std::vector<cd> next(st_.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::size_t i0 = ((i & ~low) << 1) | (i & low);
      next[i] = c0 * st_[i0] + c1 * st_[i0 | (low + 1)];
    }
    st_ = std::move(next);
    live_.erase(k);
    done_.insert(v);
  }

  void run(const Outcomes& outcomes, const std::vector<double>& params) {
    for (int v : p_.measurement_order()) {
      add(v);
      for (int u : p_.graph.neighbors(v)) add(u);
      const MeasurementBasis& b = p_.bases.at(v);
      auto it = outcomes.find(v);
      if (it == outcomes.end()) throw InvalidArgument("missing outcome for vertex " + std::to_string(v));
      project(v, b.outcome_vector(it->second, b.resolved_angle(outcomes, params)));
    }
    for (int o : p_.outputs) add(o);
  }

  // Matrix with rows indexed by output bits (output j = bit j) and columns
  // by the input index.
  Eigen::MatrixXcd matrix() const {
    const int nout = static_cast<int>(p_.outputs.size());
    std::vector<int> pos(static_cast<std::size_t>(nout));
    for (int j = 0; j < nout; ++j) {
      auto k = std::find(live_.begin(), live_.end(), p_.outputs[static_cast<std::size_t>(j)]);
      pos[static_cast<std::size_t>(j)] = in_bits_ + static_cast<int>(k - live_.begin());
    }
    const auto rows = static_cast<Eigen::Index>(std::size_t{1} << nout);
    const auto cols = static_cast<Eigen::Index>(std::size_t{1} << in_bits_);
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      std::size_t base = 0;
      for (int j = 0; j < nout; ++j) {
        if ((static_cast<std::size_t>(r) >> j) & 1) base |= std::size_t{1} << pos[static_cast<std::size_t>(j)];
      }
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = st_[base | static_cast<std::size_t>(c)];
    }
    return m;
  }

 private:
  const MeasurementPattern& p_;
  const std::vector<Qubit1>* inputs_;
  int limit_;
  int in_bits_ = 0;
  std::vector<int> live_;
  std::set<int> done_;
  std::vector<cd> st_;
};

}  // namespace

State dense_run(const MeasurementPattern& p, const std::vector<Qubit1>& inputs,
                const Outcomes& outcomes, const std::vector<double>& params, int limit) {
  if (inputs.size() != p.inputs.size()) throw InvalidArgument("input state count mismatch");
  Sweep s(p, &inputs, limit);
  s.run(outcomes, params);
  Eigen::MatrixXcd m = s.matrix();
  State out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) out[static_cast<std::size_t>(r)] = m(r, 0);
  if (norm(out) < 1e-10) throw ImpossibleBranch("requested outcome branch has zero probability");
  normalize(out);
  return out;
}

Eigen::MatrixXcd implemented_map(const MeasurementPattern& p, const Outcomes& outcomes,
                                 const std::vector<double>& params, int limit) {
  Sweep s(p, nullptr, limit);
  s.run(outcomes, params);
  Eigen::MatrixXcd m = s.matrix();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    State col(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) col[static_cast<std::size_t>(r)] = m(r, c);
    col = correct_output(p, outcomes, std::move(col));
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = col[static_cast<std::size_t>(r)];
  }
  return m;
}

BranchCheck check_branches(const MeasurementPattern& p, const Eigen::MatrixXcd& u,
                           const std::vector<double>& params, int exhaustive_max, int samples,
                           std::uint64_t seed, int limit) {
  const std::vector<int> meas = p.measured();
  const int m = static_cast<int>(meas.size());
  std::vector<Outcomes> branches;
  if (m <= exhaustive_max) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
      Outcomes o;
      for (int k = 0; k < m; ++k) o[meas[static_cast<std::size_t>(k)]] = static_cast<int>((bits >> k) & 1);
      branches.push_back(std::move(o));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    for (int s = 0; s < samples; ++s) {
      Outcomes o;
      for (int v : meas) o[v] = coin(rng) ? 1 : 0;
      branches.push_back(std::move(o));
    }
  }
  BranchCheck res;
  const double scale = std::sqrt(static_cast<double>(u.cols()));
  for (const auto& o : branches) {
    Eigen::MatrixXcd a = implemented_map(p, o, params, limit);
    if (a.norm() < 1e-6 * scale) {
      ++res.impossible;
      continue;
    }
    ++res.branches;
    res.worst = std::max(res.worst, unitary_distance(a, u));
  }
  return res;
}

}  // namespace mbqc
