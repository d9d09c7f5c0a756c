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

#include <cmath>

#include <gtest/gtest.h>

#include "ejof/dynamics.hpp"
#include "ejof/qec.hpp"
#include "ejof/scenarios.hpp"
#include "support/oracles.hpp"

namespace ejof {
namespace {

TEST(TraceDistance, KnownValues) {
  Operator a = Operator::Zero(2, 2);
  a(0, 0) = 1.0;
  Operator b = Operator::Zero(2, 2);
  b(1, 1) = 1.0;
  EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-15);
  const Operator plus = Operator::Constant(2, 2, 0.5);
  EXPECT_NEAR(trace_distance(a, plus), std::sqrt(0.5), 1e-15);
}

TEST(Sweep, RejectsBadConfig) {
  SweepConfig cfg;
  cfg.epsilons = {0.1, -0.1};
  EXPECT_THROW(check_sweep(cfg, 2), ValidationError);
  SweepConfig states;
  states.initial_states = {Operator::Identity(2, 2)};
  EXPECT_THROW(check_sweep(states, 2), ValidationError);
}

TEST(Evolve, ZeroPerturbationStaysPut) {
  const auto [l, unused] = three_level_system({1.0, 2.0, 0.0});
  const ErrorTable t = evolve_and_compare(l, Perturbation::zero(3, 1), {});
  for (const auto& c : t.cells) {
    EXPECT_LE(c.trace_distance, 1e-11);
    EXPECT_LE(c.drift, 1e-11);
  }
  EXPECT_TRUE(convergence_order(t).at_floor);
  EXPECT_TRUE(drift_analysis(t).bounded);
}

TEST(Evolve, OffResonantDecayRate) {
  // delta >> Gamma: the population of |1> decays at about gamma.
  const double gamma = 1.0;
  const auto [l, p] = three_level_system({100.0, 1.0, gamma});
  const double eps = 0.02;
  const double t = 1.0 / (eps * eps);
  const Perturbation scaled = p.scaled(eps);
  std::vector<Operator> jumps{l.jumps()[0] + scaled.fs[0]};
  const Matrix full = oracle::lindbladian_matrix(l.hamiltonian() + scaled.v, jumps);
  Operator rho = Operator::Zero(3, 3);
  rho(1, 1) = 1.0;
  const Superoperator flow(3, oracle::taylor_exp(full, t));
  const double population = flow.apply(rho)(1, 1).real();
  const double rate = -std::log(population) / t;
  EXPECT_NEAR(rate / (gamma * eps * eps), 1.0, 0.05);
}

TEST(Evolve, ConvergesAtResonance) {
  const auto [l, p] = three_level_system({2.0, 2.0, 1.0});
  const ErrorTable t = evolve_and_compare(l, p, {});
  ASSERT_EQ(t.cells.size(), 3u * 4u * 2u);
  for (const auto& c : t.cells) {
    EXPECT_LE(c.trace_error, 1e-10);
    EXPECT_GE(c.min_eigenvalue, -1e-9);
  }
  const ConvergenceFit fit = convergence_order(t);
  EXPECT_TRUE(fit.monotone);
  ASSERT_TRUE(fit.slope.has_value());
  EXPECT_GE(*fit.slope, 0.7);
}

TEST(Evolve, CancellationHasNoSecularDecay) {
  const auto [l, p] = three_level_system({0.0, 2.0, 1.0});
  const ErrorTable t = evolve_and_compare(l, p, {});
  const DriftAnalysis drift = drift_analysis(t);
  EXPECT_TRUE(drift.bounded) << drift.spread;
  for (const auto& c : t.cells) EXPECT_LE(c.drift, 0.1);
}

TEST(Evolve, DecayingScenarioFailsDriftBound) {
  const auto [l, p] = three_level_system({2.0, 2.0, 1.0});
  EXPECT_FALSE(drift_analysis(evolve_and_compare(l, p, {})).bounded);
}

TEST(Evolve, RepetitionCodeZMiscalibration) {
  const RecoveryChannel r = repetition_code_recovery();
  const ErrorTable t = evolve_and_compare(recovery_lindbladian(r), pauli_miscalibration('Z', 1.0), {});
  // L_eff = 0 here; what remains is beyond second order and shrinks
  // faster than eps.
  const ConvergenceFit fit = convergence_order(t);
  EXPECT_TRUE(fit.monotone);
  ASSERT_TRUE(fit.slope.has_value());
  EXPECT_GE(*fit.slope, 1.5);
  EXPECT_TRUE(drift_analysis(t).bounded);
}

TEST(Convergence, NeedsGeometricLadder) {
  ErrorTable t;
  for (double e : {0.04, 0.03, 0.01}) t.cells.push_back({e, 1.0, 0, 1e-3, 0.0, 0.0, 0.0});
  EXPECT_THROW(convergence_order(t), ValidationError);
  ErrorTable two;
  for (double e : {0.04, 0.02}) two.cells.push_back({e, 1.0, 0, 1e-3, 0.0, 0.0, 0.0});
  EXPECT_THROW(convergence_order(two), ValidationError);
}

TEST(Convergence, FlagsNonMonotoneData) {
  ErrorTable t;
  const std::vector<double> errs{1e-3, 4e-3, 1e-4};
  const std::vector<double> eps{0.04, 0.02, 0.01};
  for (std::size_t i = 0; i < 3; ++i) t.cells.push_back({eps[i], 1.0, 0, errs[i], 0.0, 0.0, 0.0});
  const ConvergenceFit fit = convergence_order(t);
  EXPECT_FALSE(fit.monotone);
  EXPECT_FALSE(fit.slope.has_value());
}

TEST(Convergence, RecoversKnownSlope) {
  ErrorTable t;
  for (double e : {0.04, 0.02, 0.01}) {
    for (double tau : {1.0, 2.0}) t.cells.push_back({e, tau, 0, tau * 3.0 * e * e, 0.0, 0.0, 0.0});
  }
  const ConvergenceFit fit = convergence_order(t);
  ASSERT_TRUE(fit.slope.has_value());
  EXPECT_NEAR(*fit.slope, 2.0, 1e-12);
  ASSERT_EQ(fit.slope_per_tau.size(), 2u);
  EXPECT_NEAR(fit.slope_per_tau[1].value(), 2.0, 1e-12);
}

}  // namespace
}  // namespace ejof
