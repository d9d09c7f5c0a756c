// Copyright 2026 The EJOF Authors
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

#include "problem.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "ejof/qec.hpp"
#include "ejof/random.hpp"
#include "ejof/scenarios.hpp"

namespace ejof::cli {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string key(const std::string& path, const std::string& k) { return path + "." + k; }

void expect_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) throw InputError(key(path, k), "unknown key");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t seed_value(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw InputError(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

Complex entry(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError(path, "expected a number or a [re, im] pair");
}

/// Matrix of any rectangular shape.
Operator any_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError(path, "expected a nonempty array of rows");
  return parse_matrix(j, path, static_cast<Index>(j.size()), static_cast<Index>(j[0].size()));
}

std::vector<Operator> matrix_list(const json& j, const std::string& path, Index dim) {
  if (!j.is_array()) throw InputError(path, "expected an array of matrices");
  std::vector<Operator> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_matrix(j[i], at(path, i), dim, dim));
  return out;
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

DfsProjector parse_dfs(const json& j, Index dim) {
  const std::string path = "$.dfs";
  if (!j.is_object()) throw InputError(path, "expected an object with \"basis\" or \"projector\"");
  expect_keys(j, path, {"basis", "projector"});
  if (j.contains("basis") == j.contains("projector")) {
    throw InputError(path, "give exactly one of \"basis\" and \"projector\"");
  }
  if (j.contains("basis")) {
    const json& b = j["basis"];
    const std::string bp = key(path, "basis");
    if (!b.is_array() || b.empty()) throw InputError(bp, "expected a nonempty array of basis indices");
    std::vector<Index> idx;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::int64_t v = integer(b[i], at(bp, i));
      if (v < 0 || v >= dim) throw InputError(at(bp, i), "index out of range [0, hilbert_dim)");
      idx.push_back(static_cast<Index>(v));
    }
    try {
      return DfsProjector::from_basis(dim, idx);
    } catch (const std::exception& e) {
      throw InputError(bp, e.what());
    }
  }
  const Operator p = parse_matrix(j["projector"], key(path, "projector"), dim, dim);
  try {
    return DfsProjector::from_matrix(p);
  } catch (const std::exception& e) {
    throw InputError(key(path, "projector"), e.what());
  }
}

Tolerances parse_tolerances(const json& j) {
  const std::string path = "$.tolerances";
  if (!j.is_object()) throw InputError(path, "expected an object");
  expect_keys(j, path, {"structure", "equivalence", "identity", "corner"});
  Tolerances t;
  auto read = [&](const char* name, double& slot) {
    if (!j.contains(name)) return;
    slot = number(j[name], key(path, name));
    if (!(slot > 0.0)) throw InputError(key(path, name), "tolerance must be positive");
  };
  read("structure", t.structure);
  read("equivalence", t.equivalence);
  read("identity", t.identity);
  read("corner", t.corner);
  return t;
}

SweepConfig parse_sweep(const json& j) {
  const std::string path = "$.sweep";
  if (!j.is_object()) throw InputError(path, "expected an object");
  expect_keys(j, path, {"epsilons", "taus", "mode", "initial_states"});
  SweepConfig cfg;
  if (j.contains("epsilons")) cfg.epsilons = number_list(j["epsilons"], key(path, "epsilons"));
  if (j.contains("taus")) cfg.taus = number_list(j["taus"], key(path, "taus"));
  if (j.contains("mode")) {
    const json& m = j["mode"];
    if (m == "second-order") {
      cfg.mode = TimeScaling::kSecondOrder;
    } else if (m == "first-order") {
      cfg.mode = TimeScaling::kFirstOrder;
    } else {
      throw InputError(key(path, "mode"), "expected \"first-order\" or \"second-order\"");
    }
  }
  if (j.contains("initial_states")) {
    const json& s = j["initial_states"];
    const std::string sp = key(path, "initial_states");
    if (!s.is_array()) throw InputError(sp, "expected an array of matrices");
    for (std::size_t i = 0; i < s.size(); ++i) cfg.initial_states.push_back(any_matrix(s[i], at(sp, i)));
  }
  return cfg;
}

// Scenario parameter access with defaults and path-tagged errors.
class Params {
 public:
  Params(const json& j, std::string path, std::set<std::string> allowed) : j_(j), path_(std::move(path)) {
    expect_keys(j_, path_, allowed);
  }
  double num(const char* name, double fallback) const {
    return j_.contains(name) ? number(j_[name], key(path_, name)) : fallback;
  }
  Index dim(const char* name, Index fallback, Index lo) const {
    if (!j_.contains(name)) return fallback;
    const std::int64_t v = integer(j_[name], key(path_, name));
    if (v < lo) throw InputError(key(path_, name), "must be at least " + std::to_string(lo));
    return static_cast<Index>(v);
  }
  bool flag(const char* name, bool fallback) const {
    if (!j_.contains(name)) return fallback;
    if (!j_[name].is_boolean()) throw InputError(key(path_, name), "expected true or false");
    return j_[name].get<bool>();
  }
  std::string str(const char* name, const std::string& fallback) const {
    if (!j_.contains(name)) return fallback;
    if (!j_[name].is_string()) throw InputError(key(path_, name), "expected a string");
    return j_[name].get<std::string>();
  }
  std::uint64_t seed(std::uint64_t fallback) const {
    return j_.contains("seed") ? seed_value(j_["seed"], key(path_, "seed")) : fallback;
  }
  std::vector<Index> dims(const char* name, std::vector<Index> fallback) const {
    if (!j_.contains(name)) return fallback;
    const json& a = j_[name];
    const std::string p = key(path_, name);
    if (!a.is_array() || a.empty()) throw InputError(p, "expected a nonempty array of integers");
    std::vector<Index> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(static_cast<Index>(integer(a[i], at(p, i))));
    return out;
  }
  std::string where(const char* name) const { return key(path_, name); }

 private:
  const json& j_;
  std::string path_;
};

System three_level_scenario(const Params& p) {
  ThreeLevelParams tp{p.num("delta", 1.0), p.num("Gamma", 2.0), p.num("gamma", 0.04)};
  auto [l, pert] = three_level_system(tp);
  std::ostringstream d;
  d << "three-level system";
  return {std::move(l), std::move(pert), d.str()};
}

System random_scenario(const Params& p, std::uint64_t seed) {
  InstanceShape shape;
  shape.dfs_dim = p.dim("d", 2, 1);
  shape.decay_dim = p.dim("N", 3, 1);
  shape.jump_count = p.dim("jumps", 1, 1);
  shape.hamiltonian = p.flag("hamiltonian", true);
  const bool jordan = p.flag("jordan", false);
  const double scale = p.num("scale", 1.0);
  StructuredLindbladian l = jordan ? jordan_structured_lindbladian(shape, seed)
                                   : random_structured_lindbladian(shape, seed);
  Perturbation pert = random_perturbation(l, seed ^ 0x5eedULL, scale);
  return {std::move(l), std::move(pert), jordan ? "random structured system (Jordan Kamiltonian)"
                                                : "random structured system"};
}

// Orthogonal family with H = 0 and DFS-preserving perturbations; `violate`
// breaks one hypothesis on purpose.
System cancellation_scenario(const Params& p, std::uint64_t seed) {
  const Index d = p.dim("d", 2, 1);
  const std::vector<Index> blocks = p.dims("blocks", {2, 2});
  const double eps = p.num("eps", 0.1);
  const std::string violate = p.str("violate", "none");
  if (violate != "none" && violate != "raising" && violate != "overlap" && violate != "hamiltonian") {
    throw InputError(p.where("violate"), "expected one of none, raising, overlap, hamiltonian");
  }
  std::vector<Operator> jumps = random_orthogonal_family(d, blocks, seed);
  const Index dim = jumps.front().rows();
  std::vector<Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), Index{0});
  DfsProjector dfs = DfsProjector::from_basis(dim, idx);
  Rng rng(seed ^ 0xca11ULL);
  if (violate == "overlap" && jumps.size() >= 2) {
    jumps[1].block(0, d, d, blocks.front()) += random_complex_matrix(rng, d, blocks.front());
  }
  Operator h = Operator::Zero(dim, dim);
  if (violate == "hamiltonian") h = dfs.expand(Corner::kLowerRight, random_hermitian(rng, dim - d));
  Perturbation pert = Perturbation::zero(dim, jumps.size());
  for (auto& f : pert.fs) {
    const CorneredOperator c = four_corners(random_complex_matrix(rng, dim, dim), dfs);
    f = eps * (c.ul + c.ur + c.lr);
    if (violate == "raising") f += eps * c.ll;
  }
  StructuredLindbladian l(std::move(h), std::move(jumps), std::move(dfs));
  return {std::move(l), std::move(pert), "orthogonal jump family (violation: " + violate + ")"};
}

System repetition_scenario(const Params& p, std::uint64_t seed) {
  const std::string miscal = p.str("miscal", "Z");
  const double eps = p.num("eps", 0.01);
  const RecoveryChannel r = repetition_code_recovery();
  Perturbation pert;
  if (miscal == "random") {
    pert = random_correctable_miscalibration(r, eps, seed);
  } else if (miscal.size() == 1 && std::string("IXYZ").find(miscal[0]) != std::string::npos) {
    pert = pauli_miscalibration(miscal[0], eps);
  } else {
    throw InputError(p.where("miscal"), "expected one of I, X, Y, Z, random");
  }
  return {recovery_lindbladian(r), std::move(pert), "three-qubit repetition code, " + miscal + " miscalibration"};
}

}  // namespace

const std::vector<std::string>& problem_scenarios() {
  static const std::vector<std::string> names{"three-level", "random", "cancellation", "repetition"};
  return names;
}

Operator parse_matrix(const json& j, const std::string& path, Index rows, Index cols) {
  if (!j.is_array()) throw InputError(path, "expected an array of rows");
  if (static_cast<Index>(j.size()) != rows) {
    throw InputError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  Operator m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rp = at(path, static_cast<std::size_t>(r));
    if (!row.is_array()) throw InputError(rp, "expected a row array");
    if (static_cast<Index>(row.size()) != cols) {
      throw InputError(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    }
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = entry(row[static_cast<std::size_t>(c)], at(rp, static_cast<std::size_t>(c)));
    }
  }
  return m;
}

Problem parse_problem(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("$", e.what());
  }
  if (!root.is_object()) throw InputError("$", "expected a JSON object");
  expect_keys(root, "$", {"version", "hilbert_dim", "dfs", "hamiltonian", "jumps", "perturbation", "scenario",
                          "tolerances", "seed", "sweep"});
  if (!root.contains("version")) throw InputError("$.version", "missing");
  if (integer(root["version"], "$.version") != kFormatVersion) {
    throw InputError("$.version", "unsupported version, expected " + std::to_string(kFormatVersion));
  }

  Problem p;
  p.source = text;
  if (root.contains("seed")) p.seed = seed_value(root["seed"], "$.seed");
  if (root.contains("tolerances")) p.tolerances = parse_tolerances(root["tolerances"]);
  if (root.contains("sweep")) p.sweep = parse_sweep(root["sweep"]);

  const bool explicit_system = root.contains("hilbert_dim") || root.contains("dfs") || root.contains("jumps") ||
                               root.contains("hamiltonian") || root.contains("perturbation");
  const bool has_scenario = root.contains("scenario");
  if (explicit_system == has_scenario) {
    throw InputError("$", "give exactly one of an explicit system (hilbert_dim, dfs, jumps, ...) or \"scenario\"");
  }

  if (has_scenario) {
    const json& s = root["scenario"];
    if (!s.is_object()) throw InputError("$.scenario", "expected an object");
    expect_keys(s, "$.scenario", {"name", "params"});
    if (!s.contains("name") || !s["name"].is_string()) throw InputError("$.scenario.name", "expected a string");
    ScenarioSpec spec;
    spec.name = s["name"].get<std::string>();
    const auto& names = problem_scenarios();
    if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      throw InputError("$.scenario.name", "unknown scenario \"" + spec.name + "\"; valid names: " + list);
    }
    if (s.contains("params")) {
      if (!s["params"].is_object()) throw InputError("$.scenario.params", "expected an object");
      spec.params = s["params"];
    }
    p.scenario = std::move(spec);
    return p;
  }

  for (const char* required : {"hilbert_dim", "dfs", "jumps"}) {
    if (!root.contains(required)) throw InputError(std::string("$.") + required, "missing");
  }
  const std::int64_t dim = integer(root["hilbert_dim"], "$.hilbert_dim");
  if (dim < 2) throw InputError("$.hilbert_dim", "must be at least 2");
  const Index n = static_cast<Index>(dim);
  DfsProjector dfs = parse_dfs(root["dfs"], n);
  Operator h = root.contains("hamiltonian") ? parse_matrix(root["hamiltonian"], "$.hamiltonian", n, n)
                                            : Operator(Operator::Zero(n, n));
  std::vector<Operator> jumps = matrix_list(root["jumps"], "$.jumps", n);
  if (jumps.empty()) throw InputError("$.jumps", "need at least one jump operator");
  try {
    p.lindbladian.emplace(std::move(h), std::move(jumps), std::move(dfs));
  } catch (const std::exception& e) {
    throw InputError("$", e.what());
  }

  Perturbation pert = Perturbation::zero(n, p.lindbladian->jumps().size());
  if (root.contains("perturbation")) {
    const json& q = root["perturbation"];
    if (!q.is_object()) throw InputError("$.perturbation", "expected an object");
    expect_keys(q, "$.perturbation", {"V", "f"});
    if (q.contains("V")) pert.v = parse_matrix(q["V"], "$.perturbation.V", n, n);
    if (q.contains("f")) {
      std::vector<Operator> fs = matrix_list(q["f"], "$.perturbation.f", n);
      if (fs.size() != pert.fs.size()) {
        throw InputError("$.perturbation.f", "expected one matrix per jump (" + std::to_string(pert.fs.size()) + ")");
      }
      pert.fs = std::move(fs);
    }
  }
  p.perturbation = std::move(pert);
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

System materialize(const Problem& p) {
  if (!p.scenario) {
    return {*p.lindbladian, *p.perturbation, "explicit system"};
  }
  const ScenarioSpec& s = *p.scenario;
  const std::string path = "$.scenario.params";
  if (s.name == "three-level") {
    return three_level_scenario(Params(s.params, path, {"delta", "Gamma", "gamma"}));
  }
  if (s.name == "random") {
    const Params params(s.params, path, {"d", "N", "jumps", "hamiltonian", "jordan", "scale", "seed"});
    return random_scenario(params, params.seed(p.seed));
  }
  if (s.name == "cancellation") {
    const Params params(s.params, path, {"d", "blocks", "eps", "violate", "seed"});
    return cancellation_scenario(params, params.seed(p.seed));
  }
  const Params params(s.params, path, {"miscal", "eps", "seed"});
  return repetition_scenario(params, params.seed(p.seed));
}

}  // namespace ejof::cli
