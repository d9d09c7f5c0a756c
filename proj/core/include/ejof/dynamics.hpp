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

// Dynamical validation of the effective generator: the full perturbed
// Lindbladian is exponentiated, projected onto the DFS with P_inf and
// compared with exp(t L_eff) over a ladder of perturbation scales.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ejof/effective.hpp"

namespace ejof {

/// Physical time t = tau / eps^2 (second order) or tau / eps (first order).
enum class TimeScaling { kFirstOrder, kSecondOrder };

const char* time_scaling_name(TimeScaling s);

struct SweepConfig {
  std::vector<double> epsilons{0.04, 0.02, 0.01};
  std::vector<double> taus{0.5, 1.0, 2.0, 5.0};
  /// d x d density matrices in the DFS basis; empty means
  /// default_initial_states().
  std::vector<Operator> initial_states;
  TimeScaling mode = TimeScaling::kSecondOrder;
};

/// |d-1><d-1| and the uniform superposition.
std::vector<Operator> default_initial_states(Index d);

/// Throws ValidationError on nonpositive eps, negative tau, or initial
/// states that are not unit-trace positive semidefinite d x d matrices.
void check_sweep(const SweepConfig& cfg, Index d);

double trace_distance(const Operator& a, const Operator& b);

struct ErrorCell {
  double epsilon = 0.0;
  double tau = 0.0;
  std::size_t state_index = 0;
  double trace_distance = 0.0;  // projected full vs effective
  double drift = 0.0;           // projected full vs initial state
  double trace_error = 0.0;     // worst |tr - 1| of the two evolutions
  double min_eigenvalue = 0.0;  // smallest eigenvalue of the two evolutions
};

struct ErrorTable {
  TimeScaling mode = TimeScaling::kSecondOrder;
  /// Ordered by (epsilon index, tau index, state index).
  std::vector<ErrorCell> cells;
};

/// For each (eps, tau, rho0): P_inf exp(t L(eps)) rho0 against
/// exp(t L_eff(eps)) rho0, where L(eps) has H + eps V, F_l + eps f_l.
ErrorTable evolve_and_compare(const StructuredLindbladian& l, const Perturbation& pert, const SweepConfig& cfg);

struct ConvergenceFit {
  std::vector<double> epsilons;
  /// Max over tau and states, per epsilon.
  std::vector<double> max_errors;
  bool monotone = false;
  /// All errors at or below the floor; no fit attempted.
  bool at_floor = false;
  std::optional<double> slope;
  /// Log-log slope per tau (same order as the sweep), when fittable.
  std::vector<std::optional<double>> slope_per_tau;
  std::string note;
};

/// Requires at least three epsilons in geometric progression.
ConvergenceFit convergence_order(const ErrorTable& table, double floor = 1e-11);

struct DriftAnalysis {
  std::vector<double> epsilons;
  /// C(eps) = max over tau and states of drift / (eps (1 + tau)).
  std::vector<double> constants;
  /// max C(eps) / C(largest eps).
  double spread = 0.0;
  double allowance = 0.0;
  bool bounded = false;
};

/// Drift of the projected full evolution away from the initial state is
/// bounded by C eps (1 + tau) with C not growing by more than `allowance`
/// (relative) as eps shrinks. Drifts at or below `floor` count as zero.
DriftAnalysis drift_analysis(const ErrorTable& table, double allowance = 0.5, double floor = 1e-11);

}  // namespace ejof
