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

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "commands.hpp"
#include "problem.hpp"
#include "report.hpp"

namespace ejof::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ejof_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  int run(const std::string& args) const {
    const std::string cmd = std::string(EJOF_BINARY) + " " + args + " >" + path("stdout.txt") + " 2>" +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  json report(const std::string& name) const { return json::parse(slurp(name)); }

  fs::path dir_;
};

constexpr const char* kThreeLevel =
    R"({"version": 1, "scenario": {"name": "three-level", "params": {"delta": 1, "Gamma": 2, "gamma": 0.04}}})";

std::complex<double> entry(const json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

TEST_F(Cli, EffectiveThreeLevelJump) {
  const std::string in = write("tl.json", kThreeLevel);
  ASSERT_EQ(run("effective " + in + " --out " + path("r.json")), 0) << slurp("stderr.txt");
  const json r = report("r.json");
  const auto f01 = entry(r["effective"]["closed"]["f_eff"][0][0][1]);
  EXPECT_NEAR(f01.real(), 0.1, 1e-12);
  EXPECT_NEAR(f01.imag(), 0.1, 1e-12);
  EXPECT_EQ(r["verdict"], "pass");
  EXPECT_EQ(r["input_digest"].get<std::string>().rfind("sha256:", 0), 0u);
  EXPECT_TRUE(r["equivalence"].contains("residual"));
  EXPECT_TRUE(r["equivalence"].contains("tolerance"));
}

TEST_F(Cli, MalformedMatrixRowExitsTwoWithKeyPath) {
  const std::string in = write("bad.json", R"({"version": 1, "hilbert_dim": 3, "dfs": {"basis": [0, 1]},
    "jumps": [[[0, 0, 1.4], [0, 0, 0], [0, 0]]]})");
  EXPECT_EQ(run("effective " + in + " --out " + path("r.json")), 2);
  EXPECT_NE(slurp("stderr.txt").find("$.jumps[0][2]"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("r.json")));
}

TEST_F(Cli, StructuredRandomReportsAreByteIdentical) {
  const std::string in =
      write("rnd.json", R"({"version": 1, "seed": 11, "scenario": {"name": "random", "params": {"d": 2, "N": 4, "jumps": 2}}})");
  ASSERT_EQ(run("effective " + in + " --out " + path("a.json")), 0);
  ASSERT_EQ(run("effective " + in + " --out " + path("b.json")), 0);
  EXPECT_EQ(slurp("a.json"), slurp("b.json"));
  EXPECT_FALSE(slurp("a.json").empty());
}

TEST_F(Cli, StructureFailureWithoutForceIsInvalid) {
  // Second decaying state has no decay: the steady space is larger than the DFS.
  const std::string in = write("weak.json", R"({"version": 1, "hilbert_dim": 4, "dfs": {"basis": [0, 1]},
    "jumps": [[[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]]})");
  EXPECT_EQ(run("effective " + in + " --out " + path("r.json")), 2);
  EXPECT_EQ(run("effective " + in + " --force --out " + path("f.json")), 1);
  const json r = report("f.json");
  EXPECT_FALSE(r["structure"]["pass"].get<bool>());
  EXPECT_TRUE(r["effective"].contains("general"));
  EXPECT_FALSE(r["effective"].contains("closed"));
}

TEST_F(Cli, VerifyRandomHundredTrials) {
  ASSERT_EQ(run("verify --random 2 4 100 42 --out " + path("v.json")), 0);
  const json r = report("v.json");
  EXPECT_EQ(r["aggregate"]["passed"], 100);
  EXPECT_LE(r["aggregate"]["equivalence"]["residual"].get<double>(), 1e-9);
}

TEST_F(Cli, VerifyZeroTrialsIsEmptyPass) {
  ASSERT_EQ(run("verify --random 2 4 0 42 --out " + path("v.json")), 0);
  const json r = report("v.json");
  EXPECT_TRUE(r["trials"].empty());
  EXPECT_TRUE(r["aggregate"]["pass"].get<bool>());
}

TEST_F(Cli, VerifyViolatingFamilyHasNoCancellationClaim) {
  const std::string in = write("viol.json",
      R"({"version": 1, "seed": 4, "scenario": {"name": "cancellation", "params": {"violate": "raising", "eps": 0.01}}})");
  ASSERT_EQ(run("verify " + in + " --out " + path("v.json")), 0);
  const json r = report("v.json");
  EXPECT_FALSE(r["cancellation"]["preconditions_hold"].get<bool>());
  EXPECT_GT(r["cancellation"]["general_norm"].get<double>(), 1e-6);
  EXPECT_TRUE(r["equivalence"]["pass"].get<bool>());
}

TEST_F(Cli, VerifyNeedsExactlyOneSource) {
  EXPECT_EQ(run("verify --out " + path("v.json")), 2);
}

TEST_F(Cli, ScenarioThreeLevelResonantVanishes) {
  ASSERT_EQ(run("scenario three-level --delta 0 --Gamma 2 --gamma 0.04 --out " + path("s.json")), 0);
  EXPECT_LE(report("s.json")["f_eff_norm"].get<double>(), 1e-12);
}

TEST_F(Cli, ScenarioCoherentCancel) {
  ASSERT_EQ(run("scenario coherent-cancel --seed 5 --out " + path("s.json")), 0);
  const json r = report("s.json");
  EXPECT_EQ(r["verdict"], "F_eff = 0");
  EXPECT_LE(r["f_eff_zero"]["residual"].get<double>(), 1e-11);
}

TEST_F(Cli, ScenarioUniversalPauli) {
  ASSERT_EQ(run("scenario universal --seed 5 --targets pauli --out " + path("s.json")), 0);
  EXPECT_LE(report("s.json")["generator_match"]["residual"].get<double>(), 1e-9);
}

TEST_F(Cli, ScenarioCancellation) {
  ASSERT_EQ(run("scenario cancellation --seed 3 --out " + path("s.json")), 0);
  EXPECT_TRUE(report("s.json")["cancellation"]["cancelled"].get<bool>());
}

TEST_F(Cli, UnknownScenarioListsNames) {
  EXPECT_EQ(run("scenario nope --out " + path("s.json")), 2);
  const std::string err = slurp("stderr.txt");
  for (const char* name : {"three-level", "cancellation", "coherent-cancel", "universal"}) {
    EXPECT_NE(err.find(name), std::string::npos) << name;
  }
}

TEST_F(Cli, QecPauliMiscalibrations) {
  for (const char* p : {"X", "Z"}) {
    ASSERT_EQ(run(std::string("qec repetition --miscal ") + p + " --eps 0.01 --out " + path("q.json")), 0) << p;
    const json r = report("q.json");
    EXPECT_EQ(r["verdict"], "robust") << p;
    EXPECT_TRUE(r["hypotheses_hold"].get<bool>()) << p;
    EXPECT_LE(r["l_eff"]["general_norm"].get<double>(), 1e-10 * 1e-4) << p;
  }
  ASSERT_EQ(run("qec repetition --miscal Y --eps 0.01 --out " + path("y.json")), 0);
  const json y = report("y.json");
  EXPECT_EQ(y["verdict"], "not robust");
  EXPECT_GT(y["l_eff"]["general_norm"].get<double>(), 1e-6);
}

TEST_F(Cli, QecObstructionTable) {
  ASSERT_EQ(run("qec repetition --miscal random --seed 3 --obstruction --out " + path("q.json")), 0);
  const json cells = report("q.json")["obstruction"]["cells"];
  ASSERT_EQ(cells.size(), 4u);
  int zeros = 0;
  for (const auto& c : cells) zeros += c["predicted_zero"].get<bool>() ? 1 : 0;
  EXPECT_EQ(zeros, 3);
  EXPECT_FALSE(cells[3]["predicted_zero"].get<bool>());
}

TEST_F(Cli, QecUnknownCode) { EXPECT_EQ(run("qec steane --out " + path("q.json")), 2); }

TEST_F(Cli, EvolveThreeLevelSlopeAndCsv) {
  const std::string in = write("tl.json",
      R"({"version": 1, "scenario": {"name": "three-level", "params": {"delta": 2, "Gamma": 2, "gamma": 1}}})");
  ASSERT_EQ(run("evolve " + in + " --out " + path("e.json") + " --plot-data " + path("plots")), 0);
  const json r = report("e.json");
  EXPECT_GE(r["convergence"]["slope"].get<double>(), 0.7);
  EXPECT_TRUE(r["convergence"]["monotone"].get<bool>());
  const std::string csv = slurp("e.csv");
  EXPECT_EQ(csv.rfind("epsilon,tau,state_index,trace_distance\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 4 * 2);
  EXPECT_TRUE(fs::exists(path("plots/evolve_errors.csv")));
}

TEST_F(Cli, EvolveWithoutPerturbationIsAllZero) {
  const std::string in = write("zero.json",
      R"({"version": 1, "scenario": {"name": "three-level", "params": {"delta": 2, "Gamma": 2, "gamma": 0}}})");
  ASSERT_EQ(run("evolve " + in + " --out " + path("e.json")), 0);
  const json r = report("e.json");
  for (const auto& c : r["error_table"]) EXPECT_LE(c["trace_distance"].get<double>(), 1e-11);
  EXPECT_TRUE(r["convergence"]["at_floor"].get<bool>());
}

TEST_F(Cli, EvolveBadConfig) {
  const std::string in = write("tl.json", kThreeLevel);
  EXPECT_EQ(run("evolve " + in + " --eps 0.1,-0.2,0.3 --out " + path("e.json")), 2);
  EXPECT_EQ(run("evolve " + in + " --mode third --out " + path("e.json")), 2);
  EXPECT_FALSE(fs::exists(path("e.json")));
}

TEST_F(Cli, MissingOutIsInvalid) { EXPECT_EQ(run("scenario three-level"), 2); }

TEST_F(Cli, UnknownSubcommandIsInvalid) { EXPECT_EQ(run("frobnicate --out " + path("x.json")), 2); }

// In-process pieces.

TEST(Problem, RejectsBothSystemAndScenario) {
  EXPECT_THROW(parse_problem(R"({"version": 1, "hilbert_dim": 3, "scenario": {"name": "three-level"}})"),
               InputError);
  EXPECT_THROW(parse_problem(R"({"version": 1})"), InputError);
}

TEST(Problem, ReportsKeyPaths) {
  try {
    parse_problem(R"({"version": 1, "hilbert_dim": 2, "dfs": {"basis": [0]}, "jumps": [[[0, 1], [0, "x"]]]})");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_EQ(e.path(), "$.jumps[0][1][1]");
  }
  try {
    parse_problem("{\"version\": 1,\n \"seed\": }");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Problem, ExplicitSystemRoundTrip) {
  const Problem p = parse_problem(R"({"version": 1, "hilbert_dim": 3, "dfs": {"projector":
      [[1, 0, 0], [0, 1, 0], [0, 0, 0]]}, "hamiltonian": [[0, 0, 0], [0, 0, 0], [0, 0, 0.5]],
      "jumps": [[[0, 0, 1], [0, 0, 0], [0, 0, 0]]],
      "perturbation": {"f": [[[0, [0.2, -0.1], 0], [0, 0, 0], [0, 0, 0]]]}})");
  const System s = materialize(p);
  EXPECT_EQ(s.lindbladian.dfs().dfs_dim(), 2);
  EXPECT_EQ(s.perturbation.fs[0](0, 1), Complex(0.2, -0.1));
  EXPECT_EQ(s.lindbladian.hamiltonian()(2, 2), Complex(0.5, 0.0));
}

TEST(Problem, UnknownScenarioParameterIsRejected) {
  const Problem p = parse_problem(R"({"version": 1, "scenario": {"name": "three-level", "params": {"Delta": 1}}})");
  try {
    materialize(p);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_EQ(e.path(), "$.scenario.params.Delta");
  }
}

TEST(Report, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "null");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "null");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Report, RenderKeepsInsertionOrder) {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = 0.5;
  EXPECT_EQ(render(j), "{\n  \"zeta\": 1,\n  \"alpha\": 0.5\n}\n");
}

TEST(Report, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Finish, NumericalFailureMapsToThree) {
  std::ostringstream out;
  std::ostringstream err;
  CommonOptions opt;
  opt.out = (fs::temp_directory_path() / "ejof_never_written.json").string();
  const int code = finish([]() -> Outcome { throw NumericalFailure("singular K"); }, opt, out, err);
  EXPECT_EQ(code, 3);
  EXPECT_FALSE(fs::exists(opt.out));
  EXPECT_NE(err.str().find("singular K"), std::string::npos);
}

}  // namespace
}  // namespace ejof::cli
