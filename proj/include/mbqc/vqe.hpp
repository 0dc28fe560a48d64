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

// Layered measurement-based VQE: ansatz construction, energy evaluation on
// the tensor engine and derivative-free minimization over restarts.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mbqc/gate_factory.hpp"
#include "mbqc/hamiltonians.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/tensor_sim.hpp"

namespace mbqc {

enum class Entangler { PhaseGadget, CxRing };

std::string entangler_name(Entangler e);
// "phase_gadget" or "cx_ring".
Entangler entangler_from_name(const std::string& s);

// Initial Euler layer, then d layers of (entangler; Euler on every wire).
// Slots are layer-major, wire-minor, entangler last within a layer.
struct AnsatzSpec {
  int n = 1;
  int d = 0;
  Entangler entangler = Entangler::PhaseGadget;

  void validate() const;
  int num_params() const;
};

CircuitIR ansatz_circuit(const AnsatzSpec& spec);
// Compiled and Clifford-reduced; the wires start in |+>.
MeasurementPattern build_ansatz(const AnsatzSpec& spec, const ReductionPolicy& policy = {},
                                ReductionStats* stats = nullptr);

MeasurementPattern bind_parameters(const MeasurementPattern& p, const std::vector<double>& values);

enum class OutcomeMode {
  // Every measured vertex reports 0.
  kAllZero,
  // Independent fair coins per vertex and evaluation.
  kSample,
};

struct OutcomePolicy {
  OutcomeMode mode = OutcomeMode::kAllZero;
  std::uint64_t seed = 0;
  // Resampled branches tried after an impossible one.
  int max_retries = 16;
};

// Executes the pattern on |+>^n and evaluates <H> with per-term correction.
class EnergyEvaluator {
 public:
  EnergyEvaluator(MeasurementPattern p, PauliHamiltonian h, OutcomePolicy policy = {});

  double energy(const std::vector<double>& params);
  // Corrected, normalized output register.
  State output_state(const std::vector<double>& params);
  int evaluations() const { return evaluations_; }
  const MeasurementPattern& pattern() const { return exec_.pattern(); }

 private:
  struct Branch {
    Outcomes outcomes;
    State raw;
  };
  Branch run(const std::vector<double>& params);
  Outcomes draw(bool resample);

  PatternExecutor exec_;
  PauliHamiltonian h_;
  OutcomePolicy policy_;
  std::mt19937_64 rng_;
  std::vector<int> measured_;
  int evaluations_ = 0;
};

double evaluate_energy(const MeasurementPattern& bound, const PauliHamiltonian& h,
                       const OutcomePolicy& policy = {});

// Dense gate-circuit reference on |+>^n.
State circuit_state(const AnsatzSpec& spec, const std::vector<double>& params);
double circuit_energy(const AnsatzSpec& spec, const std::vector<double>& params,
                      const PauliHamiltonian& h);

struct OptimizerConfig {
  int max_iterations = 1000;
  double initial_step = 0.5;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  int restarts = 1;
  // 0 picks default_workers().
  int workers = 0;

  void validate() const;
};

// MBQC_WORKERS if set, else the hardware concurrency.
int default_workers();

struct MinimizeResult {
  std::vector<double> initial_params;
  std::vector<double> best_params;
  double best_energy = 0.0;
  // Energy of every evaluation and the running minimum.
  std::vector<double> trace;
  std::vector<double> best_trace;
};

// Starts from uniform [0, 2pi) parameters drawn with cfg.seed.
MinimizeResult minimize(const MeasurementPattern& p, const PauliHamiltonian& h,
                        const OptimizerConfig& cfg, const OutcomePolicy& policy = {});
MinimizeResult minimize_from(const MeasurementPattern& p, const PauliHamiltonian& h,
                             const OptimizerConfig& cfg, std::vector<double> x0,
                             const OutcomePolicy& policy = {});

struct RestartResult {
  // Restart k used seed cfg.seed + k.
  std::vector<MinimizeResult> runs;
  int best_index = 0;
  // Output-state probabilities at each run's best parameters, and their mean.
  std::vector<std::vector<double>> probabilities;
  std::vector<double> mean_probabilities;

  const MinimizeResult& best() const { return runs.at(static_cast<std::size_t>(best_index)); }
};

RestartResult run_restarts(const MeasurementPattern& p, const PauliHamiltonian& h,
                           const OptimizerConfig& cfg, const OutcomePolicy& policy = {});

}  // namespace mbqc
