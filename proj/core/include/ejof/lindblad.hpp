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

// lindblad.hpp - Lindbladian assembly, structural validation, the Drazin
// pseudoinverse, asymptotic projections and Kamiltonian algebra.

#pragma once

#include <string>
#include <vector>

#include "ejof/operator_core.hpp"

namespace ejof {

/// L(X) = -i[H, X] + sum_l D[F_l](X). Throws ValidationError if H is not
/// Hermitian.
Superoperator assemble_lindbladian(const Operator& hamiltonian, const std::vector<Operator>& jumps,
                                   double tol = kDefaultTol);

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct StructureReport {
  std::vector<Check> checks;
  /// Multiplicity of the (numerically) zero eigenvalue of the generator.
  Index steady_multiplicity = 0;
  Index expected_multiplicity = 0;

  bool pass() const;
  const Check* find(const std::string& name) const;
};

/// A Lindbladian {H, F_l} with a declared DFS.
///
/// The structural assumptions H = H_lr and F_l = (F_l)_ur are checked by
/// validate_structure(); construction only enforces Hermiticity and shapes
/// unless `strict` is set.
class StructuredLindbladian {
 public:
  StructuredLindbladian(Operator hamiltonian, std::vector<Operator> jumps, DfsProjector dfs,
                        bool strict = false, double tol = kDefaultTol);

  const Operator& hamiltonian() const { return hamiltonian_; }
  const std::vector<Operator>& jumps() const { return jumps_; }
  const DfsProjector& dfs() const { return dfs_; }
  const Superoperator& generator() const { return generator_; }
  Index dim() const { return dfs_.dim(); }

 private:
  Operator hamiltonian_;
  std::vector<Operator> jumps_;
  DfsProjector dfs_;
  Superoperator generator_;
};

StructureReport validate_structure(const StructuredLindbladian& l, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Drazin pseudoinverse and asymptotic projection

struct DrazinOptions {
  /// |lambda| < zero_threshold * ||S||_2 counts as a zero eigenvalue.
  double zero_threshold = 1e-8;
  /// Warn when the smallest nonzero |lambda| is below gap_factor times the
  /// absolute zero threshold.
  double gap_factor = 100.0;
};

struct DrazinResult {
  Superoperator inverse;
  /// Spectral projector onto the zero-eigenvalue subspace, I - S S^D.
  Superoperator kernel_projector;
  Index kernel_dim = 0;
  double zero_threshold = 0.0;  // absolute
  double smallest_nonzero = 0.0;
  /// Frobenius norm of the zero-cluster block of the Schur factor.
  double nilpotent_residual = 0.0;
  std::vector<std::string> warnings;
};

/// Drazin pseudoinverse S^D via an ordered Schur decomposition: the
/// near-zero eigenvalues are moved to the leading block and S is inverted on
/// the complement. Throws NumericalFailure if the zero eigenvalue is not
/// semisimple.
DrazinResult drazin(const Superoperator& s, const DrazinOptions& options = {});

Superoperator drazin_inverse(const Superoperator& s, const DrazinOptions& options = {});

/// P_inf = I - L L^D.
Superoperator asymptotic_projection(const Superoperator& l, const DrazinOptions& options = {});

/// P_inf(X) = P X P - sum_l F_l K_lr^{-1}(Q X Q) F_l^dagger, using the
/// Kamiltonian superoperator inverted on the decaying block.
Superoperator asymptotic_projection_analytic(const StructuredLindbladian& l);

/// Smallest |Re lambda| over the nonzero eigenvalues of the generator.
double slowest_decay_rate(const Superoperator& l, const DrazinOptions& options = {});

// ---------------------------------------------------------------------------
// Kamiltonians

/// K = H - (i/2) sum_l F_l^dagger F_l, tagged with the DFS it refers to.
class Kamiltonian {
 public:
  Kamiltonian(Operator k, DfsProjector dfs) : matrix_(std::move(k)), dfs_(std::move(dfs)) {}

  const Operator& matrix() const { return matrix_; }
  const DfsProjector& dfs() const { return dfs_; }
  /// The decaying-block compression Q K Q (N x N).
  Matrix block() const { return dfs_.compress(Corner::kLowerRight, matrix_); }

 private:
  Operator matrix_;
  DfsProjector dfs_;
};

Kamiltonian kamiltonian(const StructuredLindbladian& l);

/// Operator inverse of K on the decaying block, zero-padded. Throws
/// NumericalFailure naming the smallest eigenvalue when the block is
/// singular.
Operator kamiltonian_inverse(const Kamiltonian& k);

/// The superoperator K(X) = -i(K X - X K^dagger) on the full space.
Superoperator ksuper(const Kamiltonian& k);

/// K(.) restricted to the decaying block, as an N^2 x N^2 matrix on
/// vec(Q X Q) in the decaying basis.
Matrix ksuper_decay_block(const Kamiltonian& k);

/// Solve K(rho) = sigma for rho. sigma must have no DFS (ul) component. The
/// decaying block is solved as a dense (N^2) linear system and the
/// off-diagonal corners as their own linear systems, so no eigendecomposition
/// of K is involved. Throws NumericalFailure on a singular system.
Operator ksuper_inverse_apply(const Kamiltonian& k, const Operator& sigma);

// ---------------------------------------------------------------------------
// Exponentials

Superoperator superop_exp(const Superoperator& s, double t);

/// exp(t S) applied to rho. Requires t >= 0.
Operator matrix_exp_apply(const Superoperator& s, double t, const Operator& rho);

}  // namespace ejof
