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

#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "mbqc/errors.hpp"
#include "mbqc/gate_factory.hpp"
#include "mbqc/graph.hpp"
#include "mbqc/hamiltonians.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/tensor_sim.hpp"
#include "mbqc/vqe.hpp"

namespace mbqc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kVerifyTolerance = 1e-9;

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw MissingData(fmt::format("cannot open '{}'", path));
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw InvalidArgument(fmt::format("cannot write '{}'", path.string()));
  f << text;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", what, e.what()));
  }
}

ReductionOrder order_from_name(const std::string& s) {
  if (s == "effective_kind") return ReductionOrder::kEffectiveKind;
  if (s == "ascending_id") return ReductionOrder::kAscendingId;
  throw InvalidArgument(fmt::format("unknown reduction order '{}'", s));
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw InvalidArgument(fmt::format("bad number '{}' in parameter list", tok));
    }
  }
  return out;
}

std::string bitstring(std::size_t index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if (index >> q & 1) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

// --- compile ----------------------------------------------------------------

struct CompileArgs {
  std::string circuit;
  std::string output;
  bool reduce = false;
  std::string order = "effective_kind";
};

int cmd_compile(const CompileArgs& a, std::ostream& out) {
  const std::string text = read_file(a.circuit);
  const CircuitIR c = circuit_from_json(text);
  MeasurementPattern p = compile_circuit(c);
  ReductionStats stats;
  if (a.reduce) {
    ReductionPolicy policy;
    policy.order = order_from_name(a.order);
    p = clifford_reduce(p, policy, &stats);
  }
  const std::string hash = content_hash(fmt::format(
      "compile\n{}\nreduce={}\norder={}\n", text, a.reduce, a.reduce ? a.order : ""));
  json j = json::parse(pattern_to_json(p));
  j["manifest_hash"] = hash;
  const std::string body = j.dump(1) + "\n";
  if (a.output.empty()) {
    out << body;
  } else {
    write_file(a.output, body);
  }
  const std::string summary =
      fmt::format("qubits={} edges={} params={} measured={} pauli={}", p.num_qubits(),
                  p.graph.num_edges(), p.num_params(), p.measured().size(),
                  p.num_pauli_measurements());
  if (!a.output.empty()) out << summary << "\n";
  return kOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string pattern;
  std::string circuit;
  std::string params;
  std::uint64_t seed = 0;
  int samples = 256;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const std::string ptext = read_file(a.pattern);
  const std::string ctext = read_file(a.circuit);
  const MeasurementPattern p = pattern_from_json(ptext);
  const CircuitIR c = circuit_from_json(ctext);
  if (static_cast<int>(p.inputs.size()) != c.n || static_cast<int>(p.outputs.size()) != c.n) {
    throw InvalidArgument(fmt::format("pattern has {} inputs and {} outputs, circuit has {} qubits",
                                      p.inputs.size(), p.outputs.size(), c.n));
  }
  if (c.n > kDenseQubitLimit) {
    throw ResourceLimit(fmt::format("circuit width {} exceeds {}", c.n, kDenseQubitLimit));
  }
  std::vector<double> values;
  if (!a.params.empty()) {
    values = parse_list(a.params);
  } else {
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < c.params.size(); ++k) values.push_back(u(rng));
  }
  if (values.size() != c.params.size() || p.num_params() != static_cast<int>(c.params.size())) {
    throw InvalidArgument(fmt::format("circuit has {} parameters, pattern {}, given {}",
                                      c.params.size(), p.num_params(), values.size()));
  }
  const Eigen::MatrixXcd u = circuit_unitary(c, values);
  const BranchCheck r =
      check_branches(p, u, values, kDenseQubitLimit, a.samples, a.seed, kDenseQubitLimit);
  const bool pass = r.branches > 0 && r.worst <= kVerifyTolerance;
  json j;
  j["manifest_hash"] = content_hash(fmt::format("verify\n{}\n{}\nseed={}\nsamples={}\nparams={}\n",
                                                ptext, ctext, a.seed, a.samples, a.params));
  j["max_deviation"] = r.worst;
  j["branches"] = r.branches;
  j["impossible_branches"] = r.impossible;
  j["tolerance"] = kVerifyTolerance;
  j["pass"] = pass;
  out << j.dump(1) << "\n";
  return pass ? kOk : kInternal;
}

// --- vqe --------------------------------------------------------------------

struct VqeArgs {
  std::string manifest;
  std::string output_dir;
  int workers = 0;
};

PauliHamiltonian hamiltonian_from(const json& h, const fs::path& base) {
  if (h.contains("file")) {
    fs::path path = h.at("file").get<std::string>();
    if (path.is_relative()) path = base / path;
    return load_hamiltonian(path.string());
  }
  if (h.contains("heisenberg")) {
    const json& s = h.at("heisenberg");
    return heisenberg_2d(s.at("rows").get<int>(), s.at("cols").get<int>(), s.at("B").get<double>(),
                         s.at("J").get<double>());
  }
  if (h.contains("vehicle_routing")) {
    const json& s = h.at("vehicle_routing");
    RoutingInstance inst;
    if (s.value("instance", std::string()) == "square") {
      inst = RoutingInstance::square(s.value("A", 2.5));
    } else {
      inst.w = s.at("weights").get<std::vector<std::vector<double>>>();
      inst.n = static_cast<int>(inst.w.size());
      inst.A = s.at("A").get<double>();
    }
    inst.depot = s.value("depot", 0);
    return vehicle_routing(inst);
  }
  throw InvalidArgument("hamiltonian needs one of: file, heisenberg, vehicle_routing");
}

int cmd_vqe(const VqeArgs& a, std::ostream& out) {
  const fs::path mpath = a.manifest;
  const json m = parse_json(read_file(a.manifest), a.manifest);
  const fs::path base = mpath.has_parent_path() ? mpath.parent_path() : fs::path(".");

  AnsatzSpec spec;
  const json& aj = m.at("ansatz");
  spec.n = aj.at("n").get<int>();
  spec.d = aj.at("d").get<int>();
  spec.entangler = entangler_from_name(aj.value("entangler", std::string("phase_gadget")));
  spec.validate();

  ReductionPolicy policy;
  if (m.contains("reduction")) {
    policy.order = order_from_name(m.at("reduction").value("order", std::string("effective_kind")));
  }

  OptimizerConfig cfg;
  if (m.contains("optimizer")) {
    const json& o = m.at("optimizer");
    cfg.max_iterations = o.value("max_iterations", cfg.max_iterations);
    cfg.initial_step = o.value("initial_step", cfg.initial_step);
    cfg.tolerance = o.value("tolerance", cfg.tolerance);
    cfg.restarts = o.value("restarts", cfg.restarts);
  }
  cfg.seed = m.value("seed", std::uint64_t{0});
  cfg.workers = a.workers;
  cfg.validate();

  OutcomePolicy outcomes;
  const std::string mode = m.value("outcome_policy", std::string("all_zero"));
  if (mode == "all_zero") {
    outcomes.mode = OutcomeMode::kAllZero;
  } else if (mode == "sample") {
    outcomes.mode = OutcomeMode::kSample;
  } else {
    throw InvalidArgument(fmt::format("unknown outcome policy '{}'", mode));
  }
  outcomes.seed = cfg.seed;

  const PauliHamiltonian h = hamiltonian_from(m.at("hamiltonian"), base);
  if (h.n != spec.n) {
    throw InvalidArgument(fmt::format("hamiltonian has {} qubits, ansatz {}", h.n, spec.n));
  }

  fs::path dir = a.output_dir;
  if (dir.empty()) {
    dir = m.value("output_dir", std::string("."));
    if (dir.is_relative()) dir = base / dir;
  }

  const std::string hash = content_hash(m.dump() + "\n" + format_hamiltonian(h));
  const MeasurementPattern p = build_ansatz(spec, policy);
  const RestartResult r = run_restarts(p, h, cfg, outcomes);

  json res;
  res["manifest_hash"] = hash;
  res["manifest"] = m;
  res["ansatz"] = {{"n", spec.n},
                   {"d", spec.d},
                   {"entangler", entangler_name(spec.entangler)},
                   {"parameters", p.num_params()},
                   {"qubits", p.num_qubits()}};
  bool have_exact = false;
  GroundState exact;
  try {
    exact = exact_ground_energy(h);
    have_exact = true;
    res["exact"] = {{"energy", exact.energy}, {"degeneracy", exact.degeneracy}};
  } catch (const ResourceLimit& e) {
    res["exact"] = nullptr;
  }
  json runs = json::array();
  for (std::size_t k = 0; k < r.runs.size(); ++k) {
    runs.push_back({{"restart", k},
                    {"seed", cfg.seed + k},
                    {"energy", r.runs[k].best_energy},
                    {"evaluations", r.runs[k].trace.size()}});
  }
  res["restarts"] = runs;
  json best_params = json::object();
  for (int s = 0; s < p.num_params(); ++s) {
    best_params[p.params[static_cast<std::size_t>(s)]] =
        r.best().best_params.empty() ? 0.0 : r.best().best_params[static_cast<std::size_t>(s)];
  }
  res["best"] = {{"restart", r.best_index},
                 {"energy", r.best().best_energy},
                 {"parameters", best_params},
                 {"parameter_order", p.params}};

  std::string energies = fmt::format("# manifest {}\nrestart,seed,energy,evaluations,exact\n", hash);
  for (std::size_t k = 0; k < r.runs.size(); ++k) {
    energies += fmt::format("{},{},{:.17g},{},{}\n", k, cfg.seed + k, r.runs[k].best_energy,
                            r.runs[k].trace.size(),
                            have_exact ? fmt::format("{:.17g}", exact.energy) : std::string());
  }
  const bool diag = h.is_diagonal();
  std::string probs = fmt::format("# manifest {}\n# bit q of the string is qubit q\n", hash);
  probs += diag ? "bitstring,probability,energy\n" : "bitstring,probability\n";
  for (std::size_t i = 0; i < r.mean_probabilities.size(); ++i) {
    probs += fmt::format("{},{:.17g}", bitstring(i, h.n), r.mean_probabilities[i]);
    if (diag) probs += fmt::format(",{:.17g}", diagonal_energy(h, i));
    probs += "\n";
  }

  write_file(dir / "results.json", res.dump(1) + "\n");
  write_file(dir / "energies.csv", energies);
  write_file(dir / "probabilities.csv", probs);
  out << fmt::format("best energy {:.10f}", r.best().best_energy);
  if (have_exact) out << fmt::format(" (exact {:.10f})", exact.energy);
  out << fmt::format(" over {} restarts; wrote {}\n", r.runs.size(), dir.string());
  return kOk;
}

// --- orbit ------------------------------------------------------------------

struct OrbitArgs {
  std::string graph;
  std::string output;
  std::size_t limit = 10000;
};

json edges_json(const Graph& g) {
  json e = json::parse(graph_to_json(g));
  return e;
}

int cmd_orbit(const OrbitArgs& a, std::ostream& out) {
  const std::string text = read_file(a.graph);
  const Graph g = graph_from_json(text);
  const OrbitResult r = lc_orbit(g, a.limit);
  json j;
  j["manifest_hash"] = content_hash(fmt::format("orbit\n{}\nlimit={}\n", text, a.limit));
  j["size"] = r.members.size();
  j["truncated"] = r.truncated;
  json members = json::array();
  for (std::size_t k = 0; k < r.members.size(); ++k) {
    members.push_back({{"graph", edges_json(r.members[k])}, {"sequence", r.sequences[k]}});
  }
  j["members"] = members;
  const std::string body = j.dump(1) + "\n";
  if (a.output.empty()) {
    out << body;
  } else {
    write_file(a.output, body);
    out << fmt::format("orbit size {}{}\n", r.members.size(), r.truncated ? " (truncated)" : "");
  }
  return kOk;
}

}  // namespace

std::string content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-based quantum computation compiler and simulator", "mbqc"};
  app.require_subcommand(1);

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Compile a circuit into a measurement pattern");
  compile->add_option("circuit", ca.circuit, "Circuit JSON")->required();
  compile->add_option("-o,--output", ca.output, "Pattern JSON path (stdout if absent)");
  compile->add_flag("--reduce", ca.reduce, "Remove Pauli measurements");
  compile->add_option("--order", ca.order, "Reduction order: effective_kind or ascending_id");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a pattern against a circuit on every branch");
  verify->add_option("pattern", va.pattern, "Pattern JSON")->required();
  verify->add_option("circuit", va.circuit, "Circuit JSON")->required();
  verify->add_option("--params", va.params, "Comma-separated parameter values");
  verify->add_option("--seed", va.seed, "Seed for random parameters and branch samples");
  verify->add_option("--samples", va.samples, "Sampled branches above 14 measured vertices");

  VqeArgs qa;
  auto* vqe = app.add_subcommand("vqe", "Run measurement-based VQE restarts from a manifest");
  vqe->add_option("manifest", qa.manifest, "Run manifest JSON")->required();
  vqe->add_option("-o,--output-dir", qa.output_dir, "Output directory");
  vqe->add_option("--workers", qa.workers, "Worker threads (default: MBQC_WORKERS or all cores)");

  OrbitArgs oa;
  auto* orbit = app.add_subcommand("orbit", "Enumerate the local-complementation orbit of a graph");
  orbit->add_option("graph", oa.graph, "Graph JSON")->required();
  orbit->add_option("-o,--output", oa.output, "Orbit JSON path (stdout if absent)");
  orbit->add_option("--limit", oa.limit, "Maximum number of members");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (compile->parsed()) return cmd_compile(ca, out);
    if (verify->parsed()) return cmd_verify(va, out);
    if (vqe->parsed()) return cmd_vqe(qa, out);
    if (orbit->parsed()) return cmd_orbit(oa, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const MissingData& e) {
    err << "error: " << e.what() << "\n";
    return kMissingData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace mbqc::cli
