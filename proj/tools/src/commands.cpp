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

#include "commands.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <ostream>

#include "ejof/qec.hpp"
#include "ejof/random.hpp"
#include "ejof/scenarios.hpp"
#include "problem.hpp"

namespace ejof::cli {
namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kTraceTol = 1e-10;
constexpr double kPositivityTol = 1e-9;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const char* pass_word(bool pass) { return pass ? "pass" : "FAIL"; }

std::string line(const std::string& label, double residual, double tol, bool pass) {
  return "  " + label + ": " + sci(residual) + " (tol " + sci(tol) + ") " + pass_word(pass) + "\n";
}

Json header(const char* command, const std::string& digest_source, std::optional<std::uint64_t> seed) {
  Json j;
  j["tool"] = "ejof";
  j["version"] = kVersion;
  j["command"] = command;
  j["input_digest"] = "sha256:" + sha256_hex(digest_source);
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  return j;
}

Json system_json(const System& s) {
  Json j;
  j["description"] = s.description;
  j["hilbert_dim"] = s.lindbladian.dim();
  j["dfs_dim"] = s.lindbladian.dfs().dfs_dim();
  j["jump_count"] = s.lindbladian.jumps().size();
  return j;
}

Json structure_json(const StructureReport& st) {
  Json j;
  j["pass"] = st.pass();
  j["steady_multiplicity"] = st.steady_multiplicity;
  j["expected_multiplicity"] = st.expected_multiplicity;
  j["checks"] = checks_json(st.checks);
  return j;
}

std::string failing_checks(const std::vector<Check>& checks) {
  std::string out;
  for (const auto& c : checks) {
    if (!c.pass) out += (out.empty() ? "" : ", ") + c.name;
  }
  return out;
}

void require_structure(const StructureReport& st) {
  if (st.pass()) return;
  std::string why = failing_checks(st.checks);
  if (st.steady_multiplicity != st.expected_multiplicity) {
    why += (why.empty() ? "" : ", ") + std::string("steady-state multiplicity ") +
           std::to_string(st.steady_multiplicity) + " != " + std::to_string(st.expected_multiplicity);
  }
  throw ValidationError("structure validation failed (" + why + ")");
}

Matrix dfs_block(const Operator& o, const DfsProjector& dfs) { return dfs.compress(Corner::kUpperLeft, o); }

Json closed_json(const EffectiveLindbladian& e) {
  Json j;
  j["h_eff"] = matrix_json(dfs_block(e.h_eff, e.dfs));
  Json fs = Json::array();
  for (const auto& f : e.f_effs) fs.push_back(matrix_json(dfs_block(f, e.dfs)));
  j["f_eff"] = std::move(fs);
  j["e_eff"] = matrix_json(e.cp_map.matrix());
  j["e_eff_adjoint_identity"] = matrix_json(dfs_block(e.cp_adjoint_identity, e.dfs));
  Json kraus = Json::array();
  for (const auto& k : kraus_operators(e.cp_map)) kraus.push_back(matrix_json(k));
  j["e_eff_kraus"] = std::move(kraus);
  j["generator"] = matrix_json(e.generator.matrix());
  return j;
}

Json equivalence_json(const EquivalenceReport& eq) {
  Json j = verdict_json(eq.residual, eq.tolerance, eq.pass);
  j["general_norm"] = eq.general_norm;
  j["closed_norm"] = eq.closed_norm;
  return j;
}

Json identities_json(const IdentityReport& ids) {
  Json j;
  auto add = [&](const char* name, double r) { j[name] = verdict_json(r, ids.tolerance, r <= ids.tolerance); };
  add("cp_adjoint_identity", ids.cp_adjoint_identity);
  add("off_diagonal_inverse", ids.off_diagonal_inverse);
  add("kamiltonian_inverse", ids.kamiltonian_inverse);
  add("effective_jump_norm", ids.effective_jump_norm);
  j["pass"] = ids.pass;
  return j;
}

Json corners_json(const CornerSensitivityReport& cs) {
  Json j;
  j["without_lower_right"] = verdict_json(cs.without_lower_right, cs.tolerance, cs.without_lower_right <= cs.tolerance);
  j["without_right_column"] =
      verdict_json(cs.without_right_column, cs.tolerance, cs.without_right_column <= cs.tolerance);
  j["pass"] = cs.pass;
  return j;
}

Json cancellation_json(const CancellationReport& c) {
  Json j;
  j["preconditions"] = checks_json(c.preconditions);
  j["preconditions_hold"] = c.preconditions_hold;
  j["general_norm"] = c.general_norm;
  j["closed_norm"] = c.closed_norm;
  j["max_effective_jump_norm"] = c.max_effective_jump_norm;
  j["perturbation_scale"] = c.perturbation_scale;
  j["bound"] = c.tolerance * std::max(c.perturbation_scale, kResidualFloor);
  j["tolerance"] = c.tolerance;
  j["cancelled"] = c.cancelled;
  return j;
}

// Shared by `effective` and `verify` on a problem file.
struct Verification {
  EquivalenceReport eq;
  IdentityReport ids;
  CornerSensitivityReport cs;
  bool pass() const { return eq.pass && ids.pass && cs.pass; }
};

Verification verify_system(const System& s, const Tolerances& t) {
  return {verify_equivalence(s.lindbladian, s.perturbation, t.equivalence),
          identity_suite(s.lindbladian, s.perturbation, t.identity),
          corner_sensitivity(s.lindbladian, s.perturbation, t.corner)};
}

std::string verification_summary(const Verification& v) {
  return line("equivalence residual", v.eq.residual, v.eq.tolerance, v.eq.pass) +
         line("worst identity residual", v.ids.worst(), v.ids.tolerance, v.ids.pass) +
         line("corner sensitivity", std::max(v.cs.without_lower_right, v.cs.without_right_column), v.cs.tolerance,
              v.cs.pass);
}

std::string plot_path(const CommonOptions& opt, const std::string& name) {
  return (std::filesystem::path(opt.plot_data) / name).string();
}

std::string sibling_csv(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".csv");
  return p.string();
}

}  // namespace

// ---------------------------------------------------------------------------

Outcome cmd_effective(const std::string& problem_path, const CommonOptions& opt) {
  const Problem prob = load_problem(problem_path);
  const System sys = materialize(prob);
  Tolerances tol = prob.tolerances;
  if (opt.tol) tol.equivalence = *opt.tol;

  Outcome o;
  Json& r = o.report;
  r = header("effective", prob.source, prob.seed);
  r["system"] = system_json(sys);
  const StructureReport st = validate_structure(sys.lindbladian, tol.structure);
  r["structure"] = structure_json(st);
  if (!opt.force) require_structure(st);
  check_perturbation(sys.lindbladian, sys.perturbation);

  const Superoperator general = effective_lindbladian_general(sys.lindbladian, sys.perturbation);
  o.summary = "ejof effective: " + sys.description + ", D = " + std::to_string(sys.lindbladian.dim()) +
              ", d = " + std::to_string(sys.lindbladian.dfs().dfs_dim()) + "\n";
  if (!st.pass()) {
    Json eff;
    eff["general"] = matrix_json(general.matrix());
    r["effective"] = std::move(eff);
    r["verdict"] = "structure invalid; general route only";
    o.summary += "  structure invalid (" + failing_checks(st.checks) + "); general route only\n";
    o.exit_code = kVerificationFailed;
    return o;
  }

  const EffectiveLindbladian closed = effective_lindbladian_closed(sys.lindbladian, sys.perturbation);
  const Verification v = verify_system(sys, tol);
  Json eff;
  eff["general"] = matrix_json(general.matrix());
  eff["closed"] = closed_json(closed);
  r["effective"] = std::move(eff);
  r["equivalence"] = equivalence_json(v.eq);
  r["identities"] = identities_json(v.ids);
  r["corner_sensitivity"] = corners_json(v.cs);
  r["verdict"] = v.pass() ? "pass" : "fail";
  o.summary += verification_summary(v) + "  verdict: " + (v.pass() ? "pass" : "fail") + "\n";
  o.exit_code = v.pass() ? kOk : kVerificationFailed;
  return o;
}

Outcome cmd_verify_file(const std::string& problem_path, const CommonOptions& opt) {
  const Problem prob = load_problem(problem_path);
  const System sys = materialize(prob);
  Tolerances tol = prob.tolerances;
  if (opt.tol) tol.equivalence = *opt.tol;

  Outcome o;
  Json& r = o.report;
  r = header("verify", prob.source, prob.seed);
  r["system"] = system_json(sys);
  const StructureReport st = validate_structure(sys.lindbladian, tol.structure);
  r["structure"] = structure_json(st);
  require_structure(st);

  const Verification v = verify_system(sys, tol);
  r["equivalence"] = equivalence_json(v.eq);
  r["identities"] = identities_json(v.ids);
  r["corner_sensitivity"] = corners_json(v.cs);
  // Whether the interference-cancellation claims apply to this system.
  const CancellationReport c = cancellation_check(sys.lindbladian, sys.perturbation);
  r["cancellation"] = cancellation_json(c);
  r["verdict"] = v.pass() ? "pass" : "fail";

  o.summary = "ejof verify: " + sys.description + "\n" + verification_summary(v);
  o.summary += c.preconditions_hold ? "  cancellation claims: apply, L_eff " + std::string(c.cancelled ? "vanishes" : "does NOT vanish") + "\n"
                                    : "  cancellation claims: absent (" + failing_checks(c.preconditions) + ")\n";
  o.summary += std::string("  verdict: ") + (v.pass() ? "pass" : "fail") + "\n";
  o.exit_code = v.pass() ? kOk : kVerificationFailed;
  return o;
}

Outcome cmd_verify_random(const RandomVerifyArgs& a, const CommonOptions& opt) {
  if (a.d < 1 || a.n < 1) throw ValidationError("verify --random: need d >= 1 and N >= 1");
  if (a.trials < 0) throw ValidationError("verify --random: trials must be nonnegative");
  Tolerances tol;
  if (opt.tol) tol.equivalence = *opt.tol;
  const std::string canonical = "verify --random " + std::to_string(a.d) + " " + std::to_string(a.n) + " " +
                                std::to_string(a.trials) + " " + std::to_string(a.seed) + " --tol " +
                                format_double(tol.equivalence);

  Outcome o;
  Json& r = o.report;
  r = header("verify", canonical, a.seed);
  Json params;
  params["d"] = a.d;
  params["N"] = a.n;
  params["trials"] = a.trials;
  params["jumps"] = "1 + (trial mod 3)";
  params["jordan"] = "every 8th trial when N >= 2";
  r["random"] = std::move(params);

  Json trials = Json::array();
  std::string csv = "trial,equivalence,identity,corner\n";
  double worst_eq = 0.0;
  double worst_id = 0.0;
  double worst_cs = 0.0;
  std::int64_t passed = 0;
  for (std::int64_t k = 0; k < a.trials; ++k) {
    InstanceShape shape;
    shape.dfs_dim = static_cast<Index>(a.d);
    shape.decay_dim = static_cast<Index>(a.n);
    shape.jump_count = 1 + static_cast<Index>(k % 3);
    const std::uint64_t s = a.seed * 1000003ULL + static_cast<std::uint64_t>(k);
    const bool jordan = k % 8 == 7 && a.n >= 2;
    const StructuredLindbladian l =
        jordan ? jordan_structured_lindbladian(shape, s) : random_structured_lindbladian(shape, s);
    const System sys{l, random_perturbation(l, s ^ 0x5eedULL), ""};
    const Verification v = verify_system(sys, tol);
    const double cs = std::max(v.cs.without_lower_right, v.cs.without_right_column);
    worst_eq = std::max(worst_eq, v.eq.residual);
    worst_id = std::max(worst_id, v.ids.worst());
    worst_cs = std::max(worst_cs, cs);
    passed += v.pass() ? 1 : 0;
    Json t;
    t["trial"] = k;
    t["seed"] = s;
    t["jumps"] = shape.jump_count;
    t["jordan"] = jordan;
    t["equivalence"] = v.eq.residual;
    t["identity"] = v.ids.worst();
    t["corner"] = cs;
    t["pass"] = v.pass();
    trials.push_back(std::move(t));
    csv += std::to_string(k) + "," + format_double(v.eq.residual) + "," + format_double(v.ids.worst()) + "," +
           format_double(cs) + "\n";
  }
  const bool all = passed == a.trials;
  Json agg;
  agg["trials"] = a.trials;
  agg["passed"] = passed;
  agg["equivalence"] = verdict_json(worst_eq, tol.equivalence, worst_eq <= tol.equivalence);
  agg["identity"] = verdict_json(worst_id, tol.identity, worst_id <= tol.identity);
  agg["corner"] = verdict_json(worst_cs, tol.corner, worst_cs <= tol.corner);
  agg["pass"] = all;
  r["aggregate"] = std::move(agg);
  r["trials"] = std::move(trials);
  r["verdict"] = all ? "pass" : "fail";
  if (!opt.plot_data.empty()) o.files.emplace_back(plot_path(opt, "verify_residuals.csv"), csv);

  o.summary = "ejof verify: " + std::to_string(passed) + "/" + std::to_string(a.trials) + " random instances pass\n" +
              line("worst equivalence residual", worst_eq, tol.equivalence, worst_eq <= tol.equivalence) +
              line("worst identity residual", worst_id, tol.identity, worst_id <= tol.identity) +
              line("worst corner sensitivity", worst_cs, tol.corner, worst_cs <= tol.corner) +
              "  verdict: " + (all ? "pass" : "fail") + "\n";
  o.exit_code = all ? kOk : kVerificationFailed;
  return o;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"three-level", "cancellation", "coherent-cancel", "universal"};
  return names;
}

namespace {

std::string scenario_list() {
  std::string out;
  for (const auto& n : scenario_names()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

Outcome scenario_three_level(const ScenarioArgs& a, const CommonOptions& opt, Json r) {
  const double tol = opt.tol.value_or(1e-11);
  const ThreeLevelParams p{a.delta, a.Gamma, a.gamma};
  auto [l, pert] = three_level_system(p);
  const EffectiveLindbladian closed = effective_lindbladian_closed(l, pert);
  const EquivalenceReport eq = verify_equivalence(l, pert);
  const Matrix f_eff = dfs_block(closed.f_effs.front(), closed.dfs);
  const Complex expected = three_level_effective_amplitude(p);
  Matrix target = Matrix::Zero(2, 2);
  target(0, 1) = expected;
  const double residual = frobenius(f_eff - target);
  const double bound = tol * std::max(1.0, std::abs(expected));
  const bool pass = residual <= bound && eq.pass;

  Json params;
  params["delta"] = a.delta;
  params["Gamma"] = a.Gamma;
  params["gamma"] = a.gamma;
  r["params"] = std::move(params);
  r["f_eff"] = matrix_json(f_eff);
  r["f_eff_01"] = complex_json(f_eff(0, 1));
  r["f_eff_norm"] = frobenius(f_eff);
  r["f_eff_expected_01"] = complex_json(expected);
  r["f_eff_match"] = verdict_json(residual, bound, residual <= bound);
  r["h_eff"] = matrix_json(dfs_block(closed.h_eff, closed.dfs));
  r["equivalence"] = equivalence_json(eq);
  r["verdict"] = pass ? "pass" : "fail";

  Outcome o;
  o.report = std::move(r);
  o.summary = "ejof scenario three-level: delta " + sci(a.delta) + ", Gamma " + sci(a.Gamma) + ", gamma " +
              sci(a.gamma) + "\n  F_eff(0,1) = " + sci(f_eff(0, 1).real()) + (f_eff(0, 1).imag() < 0 ? " - " : " + ") +
              sci(std::abs(f_eff(0, 1).imag())) + "i, |F_eff| = " + sci(frobenius(f_eff)) + "\n" +
              line("match to closed form", residual, bound, residual <= bound) +
              line("equivalence residual", eq.residual, eq.tolerance, eq.pass) +
              "  verdict: " + (pass ? "pass" : "fail") + "\n";
  o.exit_code = pass ? kOk : kVerificationFailed;
  return o;
}

Outcome scenario_cancellation(std::uint64_t seed, const CommonOptions& opt, Json r) {
  const double tol = opt.tol.value_or(1e-10);
  Problem prob;
  prob.seed = seed;
  prob.scenario = ScenarioSpec{"cancellation", nlohmann::json::object()};
  const System sys = materialize(prob);
  const CancellationReport c = cancellation_check(sys.lindbladian, sys.perturbation, tol);
  r["system"] = system_json(sys);
  r["cancellation"] = cancellation_json(c);
  const bool pass = c.preconditions_hold && c.cancelled;
  r["verdict"] = pass ? "L_eff = 0" : "not cancelled";

  Outcome o;
  o.report = std::move(r);
  const double bound = tol * std::max(c.perturbation_scale, kResidualFloor);
  o.summary = "ejof scenario cancellation: " + sys.description + "\n" +
              line("|L_eff| (general route)", c.general_norm, bound, c.general_norm <= bound) +
              "  preconditions: " + (c.preconditions_hold ? "hold" : "fail (" + failing_checks(c.preconditions) + ")") +
              "\n  verdict: " + (pass ? "L_eff = 0" : "not cancelled") + "\n";
  o.exit_code = pass ? kOk : kVerificationFailed;
  return o;
}

Outcome scenario_coherent(std::uint64_t seed, const CommonOptions& opt, Json r) {
  const double tol = opt.tol.value_or(1e-11);
  // Orthogonal surjective family with a random H_lr and DFS-preserving f.
  std::vector<Operator> jumps = random_orthogonal_family(2, {2, 2}, seed);
  const std::array<Index, 2> idx{0, 1};
  const DfsProjector dfs = DfsProjector::from_basis(6, idx);
  Rng rng(seed ^ 0xc0deULL);
  const Operator h = dfs.expand(Corner::kLowerRight, random_hermitian(rng, 4));
  const StructuredLindbladian l(h, std::move(jumps), dfs);
  Perturbation base = Perturbation::zero(6, 2);
  for (auto& f : base.fs) {
    const CorneredOperator c = four_corners(random_complex_matrix(rng, 6, 6), dfs);
    f = 0.05 * (c.ul + c.ur + c.lr);
  }
  const Perturbation driven = coherent_cancellation_drive(l, base);
  const EffectiveLindbladian closed = effective_lindbladian_closed(l, driven);
  const EquivalenceReport eq = verify_equivalence(l, driven);
  double worst = 0.0;
  Json fs = Json::array();
  for (const auto& f : closed.f_effs) {
    worst = std::max(worst, frobenius(f));
    fs.push_back(matrix_json(dfs_block(f, closed.dfs)));
  }
  const bool pass = worst <= tol && eq.pass;
  r["system"] = system_json(System{l, driven, "orthogonal jump family with H_lr and coherent drive"});
  r["drive"] = matrix_json(driven.v);
  r["f_eff"] = std::move(fs);
  r["f_eff_zero"] = verdict_json(worst, tol, worst <= tol);
  r["h_eff"] = matrix_json(dfs_block(closed.h_eff, closed.dfs));
  r["h_eff_norm"] = frobenius(closed.h_eff);
  r["equivalence"] = equivalence_json(eq);
  r["verdict"] = pass ? "F_eff = 0" : "F_eff nonzero";

  Outcome o;
  o.report = std::move(r);
  o.summary = "ejof scenario coherent-cancel: D = 6, d = 2, 2 orthogonal jumps, H_lr != 0\n" +
              line("max |F_eff|", worst, tol, worst <= tol) + "  |H_eff| = " + sci(frobenius(closed.h_eff)) +
              " (coherent part survives)\n" + line("equivalence residual", eq.residual, eq.tolerance, eq.pass) +
              "  verdict: " + (pass ? "F_eff = 0" : "F_eff nonzero") + "\n";
  o.exit_code = pass ? kOk : kVerificationFailed;
  return o;
}

Outcome scenario_universal(const ScenarioArgs& a, std::uint64_t seed, const CommonOptions& opt, Json r) {
  const double tol = opt.tol.value_or(1e-9);
  if (a.targets != "pauli" && a.targets != "random") {
    throw ValidationError("scenario universal: --targets must be pauli or random");
  }
  const StructuredLindbladian l = random_structured_lindbladian({2, 4, 3, true}, seed);
  Rng rng(seed ^ 0x7a6eULL);
  Operator target_h = 0.1 * random_hermitian(rng, 2);
  std::vector<Operator> targets;
  if (a.targets == "pauli") {
    targets = pauli_targets(0.1);
  } else {
    for (int i = 0; i < 3; ++i) targets.push_back(0.1 * random_complex_matrix(rng, 2, 2));
  }
  const UniversalReport u = universal_dissipation(l, target_h, targets, tol);
  Json t;
  t["kind"] = a.targets;
  t["hamiltonian"] = matrix_json(target_h);
  Json tj = Json::array();
  for (const auto& x : targets) tj.push_back(matrix_json(x));
  t["jumps"] = std::move(tj);
  r["targets"] = std::move(t);
  r["target_generator"] = matrix_json(u.target.matrix());
  r["achieved_generator"] = matrix_json(u.achieved.matrix());
  r["generator_match"] = verdict_json(u.residual, u.tolerance, u.pass);
  r["surjectivity_residual"] = u.surjectivity;
  r["orthogonality_residual"] = u.orthogonality;
  r["verdict"] = u.pass ? "pass" : "fail";

  Outcome o;
  o.report = std::move(r);
  o.summary = "ejof scenario universal: d = 2, 3 jumps, " + a.targets + " targets\n" +
              line("generator-match residual", u.residual, u.tolerance, u.pass) + "  verdict: " +
              (u.pass ? "pass" : "fail") + "\n";
  o.exit_code = u.pass ? kOk : kVerificationFailed;
  return o;
}

}  // namespace

Outcome cmd_scenario(const ScenarioArgs& a, const CommonOptions& opt) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), a.name) == names.end()) {
    throw ValidationError("unknown scenario \"" + a.name + "\"; valid names: " + scenario_list());
  }
  const std::uint64_t seed = opt.seed.value_or(0);
  std::string canonical = "scenario " + a.name + " --seed " + std::to_string(seed);
  if (a.name == "three-level") {
    canonical += " --delta " + format_double(a.delta) + " --Gamma " + format_double(a.Gamma) + " --gamma " +
                 format_double(a.gamma);
  }
  if (a.name == "universal") canonical += " --targets " + a.targets;
  if (opt.tol) canonical += " --tol " + format_double(*opt.tol);
  Json r = header("scenario", canonical, a.name == "three-level" ? std::nullopt : std::optional(seed));
  r["scenario"] = a.name;
  if (a.name == "three-level") return scenario_three_level(a, opt, std::move(r));
  if (a.name == "cancellation") return scenario_cancellation(seed, opt, std::move(r));
  if (a.name == "coherent-cancel") return scenario_coherent(seed, opt, std::move(r));
  return scenario_universal(a, seed, opt, std::move(r));
}

// ---------------------------------------------------------------------------

Outcome cmd_qec(const QecArgs& a, const CommonOptions& opt) {
  if (a.code != "repetition") throw ValidationError("unknown code \"" + a.code + "\"; valid codes: repetition");
  if (!(a.eps > 0.0) || !std::isfinite(a.eps)) throw ValidationError("qec: --eps must be positive");
  const double tol = opt.tol.value_or(1e-10);
  const std::uint64_t seed = opt.seed.value_or(0);
  const RecoveryChannel rc = repetition_code_recovery();
  Perturbation pert;
  if (a.miscal == "random") {
    pert = random_correctable_miscalibration(rc, a.eps, seed);
  } else if (a.miscal.size() == 1 && std::string("IXYZ").find(a.miscal[0]) != std::string::npos) {
    pert = pauli_miscalibration(a.miscal[0], a.eps);
  } else {
    throw ValidationError("qec: --miscal must be one of I, X, Y, Z, random");
  }
  const StructuredLindbladian l = recovery_lindbladian(rc);
  const RobustnessReport rep = robustness_check(rc, l, pert, tol);

  std::string canonical = "qec " + a.code + " --miscal " + a.miscal + " --eps " + format_double(a.eps) + " --seed " +
                          std::to_string(seed) + " --tol " + format_double(tol) + (a.obstruction ? " --obstruction" : "");
  Outcome o;
  Json& r = o.report;
  r = header("qec", canonical, seed);
  r["code"] = a.code;
  r["miscalibration"] = a.miscal;
  r["eps"] = a.eps;
  Json cond;
  cond["checks"] = checks_json(rep.conditions.checks);
  cond["pass"] = rep.conditions.pass;
  r["recovery_conditions"] = std::move(cond);
  Json cls = Json::array();
  for (const auto& e : rep.classification) {
    Json c;
    c["norms"] = {{"ul", e.norms[0]}, {"ur", e.norms[1]}, {"ll", e.norms[2]}, {"lr", e.norms[3]}};
    c["undetectable"] = e.undetectable;
    c["recovery"] = e.recovery;
    c["detectable"] = e.detectable;
    c["correctable"] = e.correctable;
    cls.push_back(std::move(c));
  }
  r["classification"] = std::move(cls);
  Json corr = verdict_json(rep.correctability.residual, rep.correctability.tolerance, rep.correctability.pass);
  corr["c"] = complex_json(rep.correctability.c);
  r["correctability"] = std::move(corr);
  r["hypotheses_hold"] = rep.hypotheses_hold;
  Json le;
  le["general_norm"] = rep.general_norm;
  le["closed_norm"] = rep.closed_norm;
  le["route_residual"] = rep.route_residual;
  le["h_eff_norm"] = rep.h_eff_norm;
  le["max_f_eff_norm"] = rep.max_f_eff_norm;
  le["cp_part_norm"] = rep.cp_part_norm;
  le["strength"] = rep.strength;
  le["bound"] = tol * std::max(rep.strength, kResidualFloor);
  le["tolerance"] = tol;
  le["generator"] = matrix_json(effective_lindbladian_general(l, pert).matrix());
  r["l_eff"] = std::move(le);
  const char* verdict = rep.robust ? "robust" : "not robust";
  r["verdict"] = verdict;

  bool ok = !rep.hypotheses_hold || rep.robust;
  std::string extra;
  if (a.obstruction) {
    Rng rng(seed ^ 0x0b57ULL);
    const Operator h = rc.code.expand(Corner::kLowerRight, random_hermitian(rng, rc.code.decay_dim()));
    const ObstructionReport ob = hamiltonian_obstruction_demo(rc, h, a.eps, seed, tol);
    Json cells = Json::array();
    for (const auto& c : ob.cells) {
      Json cj;
      cj["hamiltonian"] = c.hamiltonian;
      cj["detectable"] = c.detectable;
      cj["coherent_drive"] = c.coherent_drive;
      cj["norm"] = c.norm;
      cj["predicted_zero"] = c.predicted_zero;
      cj["matches"] = c.matches;
      cells.push_back(std::move(cj));
      extra += "    H " + std::string(c.hamiltonian ? "!= 0" : "= 0 ") + ", f_ll " +
               (c.detectable ? "!= 0" : "= 0 ") + ": |L_eff| = " + sci(c.norm) +
               (c.matches ? "" : "  (unexpected)") + "\n";
    }
    Json obj;
    obj["cells"] = std::move(cells);
    obj["strength"] = ob.strength;
    obj["tolerance"] = ob.tolerance;
    obj["pass"] = ob.pass;
    r["obstruction"] = std::move(obj);
    ok = ok && ob.pass;
    extra = "  hamiltonian obstruction table " + std::string(pass_word(ob.pass)) + ":\n" + extra;
  }

  const double bound = tol * std::max(rep.strength, kResidualFloor);
  const double norm = std::max(rep.general_norm, rep.closed_norm);
  o.summary = "ejof qec " + a.code + ": " + a.miscal + " miscalibration, eps " + sci(a.eps) + "\n" +
              "  recovery conditions " + pass_word(rep.conditions.pass) + ", correctability " +
              pass_word(rep.correctability.pass) + ", hypotheses " + (rep.hypotheses_hold ? "hold" : "do not hold") +
              "\n" + line("|L_eff|", norm, bound, norm <= bound) + extra + "  verdict: " + verdict + "\n";
  o.exit_code = ok ? kOk : kVerificationFailed;
  return o;
}

// ---------------------------------------------------------------------------

Outcome cmd_evolve(const std::string& problem_path, const EvolveArgs& a, const CommonOptions& opt) {
  const Problem prob = load_problem(problem_path);
  const System sys = materialize(prob);
  SweepConfig cfg = prob.sweep.value_or(SweepConfig{});
  if (!a.epsilons.empty()) cfg.epsilons = a.epsilons;
  if (!a.taus.empty()) cfg.taus = a.taus;
  if (!a.mode.empty()) {
    if (a.mode == "second-order") {
      cfg.mode = TimeScaling::kSecondOrder;
    } else if (a.mode == "first-order") {
      cfg.mode = TimeScaling::kFirstOrder;
    } else {
      throw ValidationError("evolve: --mode must be first-order or second-order");
    }
  }
  const double floor = opt.tol.value_or(1e-11);
  require_structure(validate_structure(sys.lindbladian, prob.tolerances.structure));
  const ErrorTable table = evolve_and_compare(sys.lindbladian, sys.perturbation, cfg);

  std::string canonical = prob.source + "\n--eps";
  for (double e : cfg.epsilons) canonical += " " + format_double(e);
  canonical += " --tau";
  for (double t : cfg.taus) canonical += " " + format_double(t);
  canonical += std::string(" --mode ") + time_scaling_name(cfg.mode) + " --tol " + format_double(floor);

  Outcome o;
  Json& r = o.report;
  r = header("evolve", canonical, prob.seed);
  r["system"] = system_json(sys);
  Json sweep;
  sweep["epsilons"] = cfg.epsilons;
  sweep["taus"] = cfg.taus;
  sweep["mode"] = time_scaling_name(cfg.mode);
  sweep["initial_states"] = cfg.initial_states.empty() ? "default" : "file";
  sweep["floor"] = floor;
  r["sweep"] = std::move(sweep);

  Json cells = Json::array();
  double trace_err = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& c : table.cells) {
    Json cj;
    cj["epsilon"] = c.epsilon;
    cj["tau"] = c.tau;
    cj["state_index"] = c.state_index;
    cj["trace_distance"] = c.trace_distance;
    cj["drift"] = c.drift;
    cj["trace_error"] = c.trace_error;
    cj["min_eigenvalue"] = c.min_eigenvalue;
    cells.push_back(std::move(cj));
    trace_err = std::max(trace_err, c.trace_error);
    min_eig = std::min(min_eig, c.min_eigenvalue);
  }
  r["error_table"] = std::move(cells);

  std::string fit_line;
  try {
    const ConvergenceFit fit = convergence_order(table, floor);
    Json fj;
    fj["epsilons"] = fit.epsilons;
    fj["max_errors"] = fit.max_errors;
    fj["monotone"] = fit.monotone;
    fj["at_floor"] = fit.at_floor;
    fj["slope"] = fit.slope ? Json(*fit.slope) : Json(nullptr);
    Json per = Json::array();
    for (const auto& s : fit.slope_per_tau) per.push_back(s ? Json(*s) : Json(nullptr));
    fj["slope_per_tau"] = std::move(per);
    fj["note"] = fit.note;
    r["convergence"] = std::move(fj);
    fit_line = fit.slope ? "  fitted log-log slope " + sci(*fit.slope) + (fit.monotone ? ", monotone" : "") + "\n"
                         : "  " + fit.note + "\n";
    fit_line += "  max errors:";
    for (std::size_t i = 0; i < fit.epsilons.size(); ++i) {
      fit_line += " " + sci(fit.max_errors[i]) + " @ eps " + sci(fit.epsilons[i]) + (i + 1 < fit.epsilons.size() ? "," : "");
    }
    fit_line += "\n";
  } catch (const ValidationError& e) {
    Json fj;
    fj["note"] = std::string("fit skipped: ") + e.what();
    r["convergence"] = std::move(fj);
    fit_line = std::string("  fit skipped: ") + e.what() + "\n";
  }
  const DriftAnalysis drift = drift_analysis(table, 0.5, floor);
  Json dj;
  dj["epsilons"] = drift.epsilons;
  dj["constants"] = drift.constants;
  dj["spread"] = drift.spread;
  dj["allowance"] = drift.allowance;
  dj["bounded"] = drift.bounded;
  r["drift"] = std::move(dj);

  const bool trace_ok = trace_err <= kTraceTol;
  const bool pos_ok = min_eig >= -kPositivityTol;
  Json sanity;
  sanity["trace"] = verdict_json(trace_err, kTraceTol, trace_ok);
  sanity["positivity"] = verdict_json(-min_eig, kPositivityTol, pos_ok);
  r["sanity"] = std::move(sanity);
  r["verdict"] = trace_ok && pos_ok ? "pass" : "fail";

  const std::string csv = error_table_csv(table);
  o.files.emplace_back(sibling_csv(opt.out), csv);
  if (!opt.plot_data.empty()) o.files.emplace_back(plot_path(opt, "evolve_errors.csv"), csv);

  o.summary = "ejof evolve: " + sys.description + ", " + std::to_string(table.cells.size()) + " cells, " +
              time_scaling_name(cfg.mode) + " time scaling\n" + fit_line +
              "  drift constant spread " + sci(drift.spread) + (drift.bounded ? " (bounded)" : " (growing)") + "\n" +
              line("trace error", trace_err, kTraceTol, trace_ok) +
              line("negativity", std::max(0.0, -min_eig), kPositivityTol, pos_ok);
  o.exit_code = trace_ok && pos_ok ? kOk : kVerificationFailed;
  return o;
}

// ---------------------------------------------------------------------------

int finish(const std::function<Outcome()>& body, const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    const auto start = std::chrono::steady_clock::now();
    o = body();
    if (opt.timing) {
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      o.report["timing"] = {{"elapsed_ms", ms.count()}};
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputInvalid;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInputInvalid;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kInputInvalid;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  try {
    write_file(opt.out, render(o.report));
    for (const auto& [path, text] : o.files) write_file(path, text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputInvalid;
  }
  out << o.summary;
  return o.exit_code;
}

}  // namespace ejof::cli
