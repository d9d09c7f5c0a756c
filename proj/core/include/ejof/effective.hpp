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

// effective.hpp - effective generator inside the DFS to second order in a
// perturbation {V, f_l} of a structured Lindbladian {H_lr, (F_l)_ur}.
//
// Two independent routes are provided:
//
//   general:  P (O1 + O2) P - P O1 L^D O1 P, built from D^2 x D^2 matrices
//             with the Drazin pseudoinverse;
//   closed:   -i[H_eff, .] + sum_l D[F_eff_l] + E_eff(.) - 1/2 {E_eff^(I), .}
//             with
//               H_eff   = 1/2 (V_ul - K_eff K^-1 K_eff) + h.c.
//               F_eff_l = (f_l)_ul - F_l K^-1 K_eff
//               E_eff   = -sum_{l,l'} F_l' K^-1( (f_l)_ll (.) (f_l)_ll^dag ) F_l'^dag
//             where K^-1( ) is the Kamiltonian superoperator inverse.
//
// DFS-block superoperators act on d x d operators written in the DFS basis
// of the projector (DfsProjector::dfs_basis()).

#pragma once

#include <vector>

#include "ejof/lindblad.hpp"

namespace ejof {

/// H -> H + V, F_l -> F_l + f_l.
struct Perturbation {
  Operator v;
  /// One entry per unperturbed jump; zero matrices for unperturbed jumps.
  std::vector<Operator> fs;

  static Perturbation zero(Index dim, std::size_t jump_count);
  Perturbation scaled(double s) const;
};

/// Throws on a non-Hermitian V or a jump-count/dimension mismatch.
void check_perturbation(const StructuredLindbladian& l, const Perturbation& pert, double tol = kDefaultTol);

struct PerturbationSuperops {
  Superoperator first_order;   // O1 = V + K_eff + F superoperators
  Superoperator second_order;  // O2 = sum_l D[f_l]
};

PerturbationSuperops perturbation_superops(const StructuredLindbladian& l, const Perturbation& pert);

/// Compresses a full-space superoperator to the DFS block, W^dag S W with
/// W = DfsProjector::corner_embedding(kUpperLeft).
Superoperator restrict_to_dfs(const Superoperator& full, const DfsProjector& dfs);

/// General route; returns the d^2 x d^2 DFS-block generator.
Superoperator effective_lindbladian_general(const StructuredLindbladian& l, const Perturbation& pert);

/// The two pieces T1 = P O P and T2 = -P O1 L^D O1 P of the general route,
/// both restricted to the DFS block.
struct GeneralRouteTerms {
  Superoperator first;
  Superoperator second;
  Superoperator total() const { return first + second; }
};

GeneralRouteTerms effective_lindbladian_general_terms(const StructuredLindbladian& l,
                                                      const Perturbation& pert);

/// K_eff = V_of - (i/2) sum_l (F_l^dag (f_l)_ul + (f_l)_ul^dag F_l).
Operator effective_kamiltonian(const StructuredLindbladian& l, const Perturbation& pert);

struct EffectiveLindbladian {
  DfsProjector dfs;
  /// Full-dimension operators supported on the DFS block.
  Operator h_eff;
  std::vector<Operator> f_effs;
  /// E_eff as a d^2 x d^2 map on the DFS block.
  Superoperator cp_map;
  /// E_eff^(I) = sum_l (f_l)_ll^dag (f_l)_ll, full dimension.
  Operator cp_adjoint_identity;
  /// Assembled d^2 x d^2 generator.
  Superoperator generator;
};

/// Closed-form route. Throws NumericalFailure if K is singular on the
/// decaying block.
EffectiveLindbladian effective_lindbladian_closed(const StructuredLindbladian& l, const Perturbation& pert);

/// Assembles -i[H_eff, .] + sum D[F_eff] + E_eff - 1/2 {E_eff^(I), .} on
/// the DFS block.
Superoperator effective_to_superop(const EffectiveLindbladian& e);

/// Kraus operators (d x d, DFS basis) of a CP map from its Choi matrix.
std::vector<Matrix> kraus_operators(const Superoperator& cp_map, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Reports

struct EquivalenceReport {
  double residual = 0.0;  // relative Frobenius
  double general_norm = 0.0;
  double closed_norm = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

EquivalenceReport verify_equivalence(const StructuredLindbladian& l, const Perturbation& pert,
                                     double tol = 1e-9);

struct IdentityReport {
  double cp_adjoint_identity = 0.0;    // E_eff^(I) = sum f_ll^dag f_ll
  double off_diagonal_inverse = 0.0;   // K_of^-1(sigma) = i[K^-1, sigma]*
  double kamiltonian_inverse = 0.0;    // sum K^-dag F^dag F K^-1 = -i(K^-1 - K^-dag)
  double effective_jump_norm = 0.0;    // sum F_eff^dag F_eff - f_ul^dag f_ul = -i(K_eff K^-1 K_eff - h.c.)
  double tolerance = 0.0;
  bool pass = false;
  double worst() const;
};

/// Residuals are relative to max(||lhs||, ||rhs||, 1).
IdentityReport identity_suite(const StructuredLindbladian& l, const Perturbation& pert, double tol = 1e-11);

struct CornerSensitivityReport {
  /// Change of the general-route generator when V_lr and f_lr are zeroed,
  /// relative to max(||L_eff||, s^2) with s the perturbation norm.
  double without_lower_right = 0.0;
  /// Relative change when, in addition, every (f_l)_ur is zeroed.
  double without_right_column = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

CornerSensitivityReport corner_sensitivity(const StructuredLindbladian& l, const Perturbation& pert,
                                           double tol = 1e-10);

}  // namespace ejof
