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

// Problem files: JSON with complex entries as [re, im] (bare numbers are
// real) and matrices as row-major nested arrays. Either an explicit system
//
//   {"version": 1, "hilbert_dim": 3, "dfs": {"basis": [0, 1]},
//    "hamiltonian": M, "jumps": [M, ...],
//    "perturbation": {"V": M, "f": [M, ...]}}
//
// or a named scenario
//
//   {"version": 1, "scenario": {"name": "three-level",
//                               "params": {"delta": 1, "Gamma": 2, "gamma": 0.04}}}
//
// plus optional "tolerances", "seed" and "sweep" blocks.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ejof/dynamics.hpp"
#include "ejof/effective.hpp"

namespace ejof::cli {

/// Malformed input; `path` locates the offending key, e.g. $.jumps[0][1].
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct Tolerances {
  double structure = kDefaultTol;
  double equivalence = 1e-9;
  double identity = 1e-11;
  double corner = 1e-10;
};

struct ScenarioSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
};

struct Problem {
  /// Raw bytes of the file, for the digest.
  std::string source;
  std::optional<ScenarioSpec> scenario;
  std::optional<StructuredLindbladian> lindbladian;
  std::optional<Perturbation> perturbation;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::optional<SweepConfig> sweep;
};

/// Scenario names understood in problem files.
const std::vector<std::string>& problem_scenarios();

Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

/// A structured system with its perturbation, built from either form.
struct System {
  StructuredLindbladian lindbladian;
  Perturbation perturbation;
  std::string description;
};

/// Builds the system; scenario parameters are validated here.
System materialize(const Problem& p);

Operator parse_matrix(const nlohmann::json& j, const std::string& path, Index rows, Index cols);

}  // namespace ejof::cli
