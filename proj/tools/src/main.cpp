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

// ejof: effective Lindbladians on a decoherence-free subspace.
//
//   ejof effective problem.json --out report.json
//   ejof verify --random 2 4 100 42 --out report.json
//   ejof scenario three-level --delta 1 --Gamma 2 --gamma 0.04 --out report.json
//   ejof qec repetition --miscal Z --eps 0.01 --out report.json
//   ejof evolve problem.json --eps 0.04,0.02,0.01 --out report.json
//
// Exit codes: 0 ok, 1 verification failed, 2 input invalid, 3 numerical failure.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace ejof::cli;

  CLI::App app{"ejof: effective Lindbladians on a decoherence-free subspace"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "ejof 0.1.0");

  CommonOptions opt;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  app.add_option("--out", opt.out, "Report path (JSON)");
  app.add_option("--tol", tol, "Verdict tolerance (command specific)");
  app.add_option("--seed", seed, "Seed for random instances");
  app.add_option("--plot-data", opt.plot_data, "Directory for flat CSV series");
  app.add_flag("--timing", opt.timing, "Record wall time in the report");
  app.add_flag("--force", opt.force, "Compute the general route even if the structure check fails");

  std::string problem;

  auto* effective = app.add_subcommand("effective", "Effective Lindbladian by both routes for a problem file");
  effective->add_option("problem", problem, "Problem file")->required();

  auto* verify = app.add_subcommand("verify", "Equivalence, identity and corner checks");
  std::vector<std::int64_t> random_args;
  verify->add_option("problem", problem, "Problem file");
  verify->add_option("--random", random_args, "d N trials seed")->expected(4);

  auto* scenario = app.add_subcommand("scenario", "Run a named scenario");
  ScenarioArgs sargs;
  scenario->add_option("name", sargs.name, "three-level | cancellation | coherent-cancel | universal")->required();
  scenario->add_option("--delta", sargs.delta, "Detuning of the excited level");
  scenario->add_option("--Gamma", sargs.Gamma, "Strong decay rate");
  scenario->add_option("--gamma", sargs.gamma, "Weak direct decay rate");
  scenario->add_option("--targets", sargs.targets, "pauli | random");

  auto* qec = app.add_subcommand("qec", "Robustness of continuous error correction to miscalibration");
  QecArgs qargs;
  qec->add_option("code", qargs.code, "repetition")->required();
  qec->add_option("--miscal", qargs.miscal, "I | X | Y | Z | random");
  qec->add_option("--eps", qargs.eps, "Miscalibration strength");
  qec->add_flag("--obstruction", qargs.obstruction, "Add the Hamiltonian obstruction table");

  auto* evolve = app.add_subcommand("evolve", "Compare full and effective dynamics over a sweep");
  EvolveArgs eargs;
  evolve->add_option("problem", problem, "Problem file")->required();
  evolve->add_option("--eps", eargs.epsilons, "Perturbation scales")->delimiter(',');
  evolve->add_option("--tau", eargs.taus, "Rescaled times")->delimiter(',');
  evolve->add_option("--mode", eargs.mode, "first-order | second-order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputInvalid;
  }
  opt.tol = tol;
  opt.seed = seed;
  if (opt.out.empty()) {
    std::cerr << "error: --out is required\n";
    return kInputInvalid;
  }
  if (tol && !(*tol > 0.0)) {
    std::cerr << "error: --tol must be positive\n";
    return kInputInvalid;
  }

  std::function<Outcome()> body;
  if (*effective) {
    body = [&] { return cmd_effective(problem, opt); };
  } else if (*verify) {
    if (problem.empty() == random_args.empty()) {
      std::cerr << "error: verify takes either a problem file or --random d N trials seed\n";
      return kInputInvalid;
    }
    if (problem.empty()) {
      if (random_args[3] < 0) {
        std::cerr << "error: --random seed must be nonnegative\n";
        return kInputInvalid;
      }
      const RandomVerifyArgs ra{random_args[0], random_args[1], random_args[2],
                                static_cast<std::uint64_t>(random_args[3])};
      body = [&, ra] { return cmd_verify_random(ra, opt); };
    } else {
      body = [&] { return cmd_verify_file(problem, opt); };
    }
  } else if (*scenario) {
    body = [&] { return cmd_scenario(sargs, opt); };
  } else if (*qec) {
    body = [&] { return cmd_qec(qargs, opt); };
  } else {
    body = [&] { return cmd_evolve(problem, eargs, opt); };
  }
  return finish(body, opt, std::cout, std::cerr);
}
