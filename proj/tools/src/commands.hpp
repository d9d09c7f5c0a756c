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

// Subcommands of the ejof tool. Each returns an Outcome; nothing touches
// the filesystem until finish() writes the report and side files.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "report.hpp"

namespace ejof::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputInvalid = 2, kNumericalFailure = 3 };

struct CommonOptions {
  std::string out;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  /// Directory for flat CSV series; empty disables.
  std::string plot_data;
  bool timing = false;
  bool force = false;
};

struct Outcome {
  int exit_code = kOk;
  Json report;
  std::string summary;
  /// Extra (path, content) files written next to the report.
  std::vector<std::pair<std::string, std::string>> files;
};

Outcome cmd_effective(const std::string& problem_path, const CommonOptions& opt);

Outcome cmd_verify_file(const std::string& problem_path, const CommonOptions& opt);

struct RandomVerifyArgs {
  std::int64_t d = 2;
  std::int64_t n = 4;
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
};
Outcome cmd_verify_random(const RandomVerifyArgs& args, const CommonOptions& opt);

struct ScenarioArgs {
  std::string name;
  double delta = 1.0;
  double Gamma = 2.0;
  double gamma = 0.04;
  std::string targets = "pauli";
};
const std::vector<std::string>& scenario_names();
Outcome cmd_scenario(const ScenarioArgs& args, const CommonOptions& opt);

struct QecArgs {
  std::string code = "repetition";
  std::string miscal = "Z";
  double eps = 0.01;
  bool obstruction = false;
};
Outcome cmd_qec(const QecArgs& args, const CommonOptions& opt);

struct EvolveArgs {
  std::vector<double> epsilons;
  std::vector<double> taus;
  std::string mode;
};
Outcome cmd_evolve(const std::string& problem_path, const EvolveArgs& args, const CommonOptions& opt);

/// Runs `body`, mapping library exceptions to exit codes; on 0 or 1 writes
/// the report (and side files) and prints the summary. Errors go to `err`.
int finish(const std::function<Outcome()>& body, const CommonOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace ejof::cli
