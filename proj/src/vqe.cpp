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

#include "mbqc/vqe.hpp"

#include <fmt/format.h>
#include <nlopt.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void add_euler_layer(CircuitIR& c, int layer, int base) {
  static const char* kNames[3] = {"xi", "eta", "zeta"};
  for (int j = 0; j < c.n; ++j) {
    Gate g;
    g.kind = GateKind::Euler;
    g.qubits = {j};
    for (int k = 0; k < 3; ++k) {
      const int slot = base + 3 * j + k;
      g.angles.push_back(GateAngle::param(slot));
      c.params[static_cast<std::size_t>(slot)] = fmt::format("l{}.q{}.{}", layer, j, kNames[k]);
    }
    c.gates.push_back(g);
  }
}

}  // namespace

std::string entangler_name(Entangler e) {
  return e == Entangler::PhaseGadget ? "phase_gadget" : "cx_ring";
}

Entangler entangler_from_name(const std::string& s) {
  if (s == "phase_gadget") return Entangler::PhaseGadget;
  if (s == "cx_ring") return Entangler::CxRing;
  throw InvalidArgument(fmt::format("unknown entangler '{}'", s));
}

void AnsatzSpec::validate() const {
  if (n < 1) throw InvalidArgument("ansatz needs n >= 1");
  if (d < 0) throw InvalidArgument("ansatz needs d >= 0");
  if (entangler == Entangler::CxRing && d > 0 && n < 2) {
    throw InvalidArgument("cx_ring needs at least two wires");
  }
}

int AnsatzSpec::num_params() const {
  return entangler == Entangler::PhaseGadget ? d * (3 * n + 1) + 3 * n : 3 * n * (d + 1);
}

CircuitIR ansatz_circuit(const AnsatzSpec& spec) {
  spec.validate();
  CircuitIR c;
  c.n = spec.n;
  c.params.resize(static_cast<std::size_t>(spec.num_params()));
  add_euler_layer(c, 0, 0);
  int base = 3 * spec.n;
  for (int layer = 1; layer <= spec.d; ++layer) {
    if (spec.entangler == Entangler::PhaseGadget) {
      const int slot = base + 3 * spec.n;
      Gate g;
      g.kind = GateKind::PhaseGadget;
      for (int j = 0; j < spec.n; ++j) g.qubits.push_back(j);
      g.angles = {GateAngle::param(slot)};
      c.params[static_cast<std::size_t>(slot)] = fmt::format("l{}.zz", layer);
      c.gates.push_back(g);
    } else {
      for (int j = 0; j < spec.n; ++j) {
        Gate g;
        g.kind = GateKind::CNOT;
        g.qubits = {j, (j + 1) % spec.n};
        c.gates.push_back(g);
      }
    }
    add_euler_layer(c, layer, base);
    base += 3 * spec.n + (spec.entangler == Entangler::PhaseGadget ? 1 : 0);
  }
  return c;
}

MeasurementPattern build_ansatz(const AnsatzSpec& spec, const ReductionPolicy& policy,
                                ReductionStats* stats) {
  return clifford_reduce(compile_circuit(ansatz_circuit(spec)), policy, stats);
}

MeasurementPattern bind_parameters(const MeasurementPattern& p, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != p.num_params()) {
    throw InvalidArgument(fmt::format("expected {} parameter values, got {}", p.num_params(),
                                      values.size()));
  }
  return bind_angles(p, values);
}

// --- Energy ---------------------------------------------------------------

EnergyEvaluator::EnergyEvaluator(MeasurementPattern p, PauliHamiltonian h, OutcomePolicy policy)
    : exec_(std::move(p)), h_(std::move(h)), policy_(policy), rng_(policy.seed) {
  h_.validate();
  if (h_.n != static_cast<int>(exec_.pattern().outputs.size())) {
    throw InvalidArgument(fmt::format("hamiltonian acts on {} qubits, pattern has {} outputs",
                                      h_.n, exec_.pattern().outputs.size()));
  }
  if (exec_.pattern().inputs.size() != exec_.pattern().outputs.size()) {
    throw InvalidArgument("pattern must have as many inputs as outputs");
  }
  measured_ = exec_.pattern().measured();
}

Outcomes EnergyEvaluator::draw(bool resample) {
  Outcomes o;
  std::bernoulli_distribution coin(0.5);
  const bool random = resample || policy_.mode == OutcomeMode::kSample;
  for (int v : measured_) o[v] = random ? static_cast<int>(coin(rng_)) : 0;
  return o;
}

EnergyEvaluator::Branch EnergyEvaluator::run(const std::vector<double>& params) {
  const std::vector<Qubit1> plus(exec_.pattern().inputs.size(),
                                 Qubit1{cd{M_SQRT1_2, 0}, cd{M_SQRT1_2, 0}});
  // A uniform branch of a deterministic pattern has norm 2^(-m/2).
  const double floor = 1e-6 * std::pow(2.0, -0.5 * static_cast<double>(measured_.size()));
  for (int attempt = 0; attempt <= policy_.max_retries; ++attempt) {
    Branch b;
    b.outcomes = draw(attempt > 0);
    b.raw = exec_.run(plus, b.outcomes, params);
    const double nrm = norm(b.raw);
    if (nrm >= floor) {
      for (auto& a : b.raw) a /= nrm;
      ++evaluations_;
      return b;
    }
  }
  throw ImpossibleBranch(
      fmt::format("no possible branch after {} retries", policy_.max_retries));
}

double EnergyEvaluator::energy(const std::vector<double>& params) {
  const Branch b = run(params);
  cd acc{0, 0};
  for (const auto& t : h_.terms) {
    acc += t.coeff * expectation(b.raw, corrected_observable(exec_.pattern(), b.outcomes, t.string));
  }
  if (std::abs(acc.imag()) > 1e-9) {
    throw InternalError(fmt::format("energy has imaginary residue {}", acc.imag()));
  }
  return acc.real();
}

State EnergyEvaluator::output_state(const std::vector<double>& params) {
  Branch b = run(params);
  return correct_output(exec_.pattern(), b.outcomes, std::move(b.raw));
}

double evaluate_energy(const MeasurementPattern& bound, const PauliHamiltonian& h,
                       const OutcomePolicy& policy) {
  if (!bound.is_bound()) throw InvalidArgument("pattern has unbound parameters");
  EnergyEvaluator ev(bound, h, policy);
  return ev.energy({});
}

State circuit_state(const AnsatzSpec& spec, const std::vector<double>& params) {
  const CircuitIR c = ansatz_circuit(spec);
  if (static_cast<int>(params.size()) != spec.num_params()) {
    throw InvalidArgument("parameter count mismatch");
  }
  if (spec.n > kDenseQubitLimit) throw ResourceLimit("dense circuit state too large");
  State psi = plus_state(spec.n);
  for (const Gate& g : c.gates) apply_gate(psi, g, params);
  return psi;
}

double circuit_energy(const AnsatzSpec& spec, const std::vector<double>& params,
                      const PauliHamiltonian& h) {
  return expectation_value(circuit_state(spec, params), h.terms);
}

// --- Optimizer --------------------------------------------------------------

void OptimizerConfig::validate() const {
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!(initial_step > 0.0)) throw InvalidArgument("initial_step must be positive");
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (workers < 0) throw InvalidArgument("workers must be >= 0");
}

int default_workers() {
  if (const char* env = std::getenv("MBQC_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct ObjectiveData {
  EnergyEvaluator* eval;
  MinimizeResult* result;
  std::exception_ptr error;
  nlopt_opt opt;
};

double objective(unsigned dim, const double* x, double* grad, void* data) {
  (void)grad;  // derivative-free: never requested
  auto* d = static_cast<ObjectiveData*>(data);
  try {
    std::vector<double> params(x, x + dim);
    const double e = d->eval->energy(params);
    MinimizeResult& r = *d->result;
    if (r.trace.empty() || e < r.best_energy) {
      r.best_energy = e;
      r.best_params = params;
    }
    r.trace.push_back(e);
    r.best_trace.push_back(r.best_energy);
    return e;
  } catch (...) {
    d->error = std::current_exception();
    nlopt_force_stop(d->opt);
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<double> uniform_params(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<double> x(static_cast<std::size_t>(k));
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace

MinimizeResult minimize_from(const MeasurementPattern& p, const PauliHamiltonian& h,
                             const OptimizerConfig& cfg, std::vector<double> x0,
                             const OutcomePolicy& policy) {
  cfg.validate();
  const int k = p.num_params();
  if (static_cast<int>(x0.size()) != k) throw InvalidArgument("initial parameter count mismatch");
  EnergyEvaluator eval(p, h, policy);
  MinimizeResult r;
  r.initial_params = x0;
  if (k == 0) {
    r.best_energy = eval.energy({});
    r.trace = {r.best_energy};
    r.best_trace = r.trace;
    return r;
  }
  for (auto& v : x0) v = std::clamp(v, 0.0, kTwoPi);
  nlopt_opt opt = nlopt_create(NLOPT_LN_COBYLA, static_cast<unsigned>(k));
  if (opt == nullptr) throw InternalError("nlopt_create failed");
  ObjectiveData data{&eval, &r, nullptr, opt};
  nlopt_set_lower_bounds1(opt, 0.0);
  nlopt_set_upper_bounds1(opt, kTwoPi);
  nlopt_set_min_objective(opt, objective, &data);
  nlopt_set_initial_step1(opt, cfg.initial_step);
  nlopt_set_xtol_abs1(opt, cfg.tolerance);
  nlopt_set_maxeval(opt, cfg.max_iterations);
  double fmin = 0.0;
  const nlopt_result status = nlopt_optimize(opt, x0.data(), &fmin);
  nlopt_destroy(opt);
  if (data.error) std::rethrow_exception(data.error);
  if (status < 0 && status != NLOPT_ROUNDOFF_LIMITED) {
    throw InternalError(fmt::format("optimizer failed with status {}", static_cast<int>(status)));
  }
  return r;
}

MinimizeResult minimize(const MeasurementPattern& p, const PauliHamiltonian& h,
                        const OptimizerConfig& cfg, const OutcomePolicy& policy) {
  return minimize_from(p, h, cfg, uniform_params(p.num_params(), cfg.seed), policy);
}

RestartResult run_restarts(const MeasurementPattern& p, const PauliHamiltonian& h,
                           const OptimizerConfig& cfg, const OutcomePolicy& policy) {
  cfg.validate();
  const auto count = static_cast<std::size_t>(cfg.restarts);
  RestartResult out;
  out.runs.resize(count);
  out.probabilities.resize(count);
  std::vector<std::exception_ptr> errors(count);

  auto work = [&](std::size_t k) {
    try {
      OptimizerConfig c = cfg;
      c.seed = cfg.seed + k;
      OutcomePolicy pol = policy;
      pol.seed = policy.seed + k;
      out.runs[k] = minimize(p, h, c, pol);
      EnergyEvaluator eval(p, h, pol);
      const State psi = eval.output_state(out.runs[k].best_params);
      auto& probs = out.probabilities[k];
      probs.reserve(psi.size());
      for (const cd& a : psi) probs.push_back(std::norm(a));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  const std::size_t workers =
      std::min(count, static_cast<std::size_t>(cfg.workers > 0 ? cfg.workers : default_workers()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) work(k);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  out.mean_probabilities.assign(out.probabilities[0].size(), 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < out.mean_probabilities.size(); ++i) {
      out.mean_probabilities[i] += out.probabilities[k][i] / static_cast<double>(count);
    }
    if (out.runs[k].best_energy < out.runs[static_cast<std::size_t>(out.best_index)].best_energy) {
      out.best_index = static_cast<int>(k);
    }
  }
  return out;
}

}  // namespace mbqc
