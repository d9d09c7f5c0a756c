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

// Constructive scenarios: the three-level system, surjective and orthogonal
// jump families, dissipative self-interference, coherent cancellation drives
// and universal dissipation inside the DFS.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ejof/effective.hpp"

namespace ejof {

// ---------------------------------------------------------------------------
// Three-level system

struct ThreeLevelParams {
  double delta = 0.0;  // energy of |e>
  double Gamma = 1.0;  // decay rate |e> -> |0>
  double gamma = 0.0;  // weak direct rate |1> -> |0>
};

/// Basis (|0>, |1>, |e>); H = delta |e><e|, F = sqrt(Gamma) |0><e|,
/// f = sqrt(gamma) |0><1|, DFS = span{|0>, |1>}.
std::pair<StructuredLindbladian, Perturbation> three_level_system(const ThreeLevelParams& p);

/// f = sqrt(gamma) |0><psi| for a normalized psi in span{|0>, |1>}.
Perturbation generalized_three_level(const Vector& psi, double gamma);

/// sqrt(gamma) delta / (delta - i Gamma/2), the |0><1| entry of F_eff.
Complex three_level_effective_amplitude(const ThreeLevelParams& p);

// ---------------------------------------------------------------------------
// Jump families

/// Pseudo-inverse of a Hermitian matrix; eigenvalues below
/// rel_tol * max|eigenvalue| are treated as zero.
Matrix hermitian_pseudo_inverse(const Matrix& a, double rel_tol = 1e-12);

/// ||F (F^dag F)^+ F^dag - I_ul||_F, i.e. how far F is from being surjective
/// onto the DFS.
double surjectivity_residual(const Operator& f, const DfsProjector& dfs);

/// max over pairs l != l' of ||F_l F_l'^dag||_F / (||F_l|| ||F_l'||).
double orthogonality_residual(const std::vector<Operator>& jumps);

/// F = F_ur with i.i.d. complex normal entries from an N-dimensional
/// decaying space onto a d-dimensional DFS, using the first d basis states
/// as the DFS. Throws DimensionMismatch if N < d.
Operator random_surjective_jump(Index d, Index n, std::uint64_t seed);

/// Jumps F_l on disjoint consecutive blocks of the decaying space, one per
/// entry of `blocks`. Decaying dimension is the sum of the blocks unless
/// `decay_dim` is larger.
std::vector<Operator> random_orthogonal_family(Index d, const std::vector<Index>& blocks, std::uint64_t seed,
                                               Index decay_dim = 0);

// ---------------------------------------------------------------------------
// Cancellation

struct CancellationReport {
  std::vector<Check> preconditions;
  bool preconditions_hold = false;
  double max_effective_jump_norm = 0.0;
  double general_norm = 0.0;
  double closed_norm = 0.0;
  /// ||V||^2 + sum ||f_l||^2
  double perturbation_scale = 0.0;
  double tolerance = 0.0;
  /// True when the general-route L_eff vanishes within tolerance * scale.
  bool cancelled = false;
};

/// Dissipative self-interference for an orthogonal family with H = 0 and
/// perturbations that never map out of the DFS.
CancellationReport cancellation_check(const StructuredLindbladian& l, const Perturbation& pert, double tol = 1e-10);

struct CoherentDriveOptions {
  /// Also add M^dag H M on the DFS block so that H_eff vanishes together
  /// with F_eff, where M = sum_l (F_l^dag F_l)^+ F_l^dag (f_l)_ul.
  bool cancel_hamiltonian = false;
};

/// V = (i/2) sum_l (F_l^dag f_l - f_l^dag F_l) + V~ with
/// V~_ll = K M and V~_ur = (K M)^dag; the jump perturbations are kept.
/// Throws ValidationError if some (f_l)_ll is nonzero and NumericalFailure
/// if K is singular.
Perturbation coherent_cancellation_drive(const StructuredLindbladian& l, const Perturbation& pert,
                                         const CoherentDriveOptions& options = {});

struct UniversalReport {
  Perturbation perturbation;
  Superoperator target;    // d^2 x d^2
  Superoperator achieved;  // general route
  double residual = 0.0;   // relative Frobenius
  double surjectivity = 0.0;
  double orthogonality = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Builds f_l = target_l on the DFS block and V = target_H +
/// (i/2) sum (F^dag f - f^dag F). Targets are d x d in the DFS basis.
/// Throws ValidationError if there are fewer unperturbed jumps than targets.
UniversalReport universal_dissipation(const StructuredLindbladian& l, const Operator& target_h,
                                      const std::vector<Operator>& target_jumps, double tol = 1e-9);

/// Scaled Pauli targets {sigma_-, sigma_z / 2, sigma_+} for a qubit DFS.
std::vector<Operator> pauli_targets(double scale);

}  // namespace ejof
