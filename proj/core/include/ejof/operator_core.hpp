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

// operator_core.hpp - dense operator algebra on a Hilbert space split into a
// decoherence-free subspace (DFS) and its decaying complement.
//
// Conventions used everywhere in the library:
//   * operators are dense complex D x D matrices (hbar = 1);
//   * vectorization is column stacking, vec(A X B) = (B^T (x) A) vec(X);
//   * superoperators are D^2 x D^2 matrices acting on vec(X).

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ejof {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Relative Frobenius tolerance for structural checks.
inline constexpr double kDefaultTol = 1e-10;

/// Denominator floor for relative residuals.
inline constexpr double kResidualFloor = 1e-14;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Singular systems, non-semisimple kernels and similar failures of the
/// numerical preconditions.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input violates a declared structural assumption.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Small helpers

void require_square(const Matrix& m, const char* what);
void require_same_dim(const Matrix& a, const Matrix& b, const char* what);

double frobenius(const Matrix& m);

/// Hilbert-Schmidt inner product tr(X^dagger Y).
Complex hs_inner(const Operator& x, const Operator& y);

/// ||a - b||_F / max(||a||_F, ||b||_F, floor).
double relative_residual(const Matrix& a, const Matrix& b, double floor = kResidualFloor);

bool is_hermitian(const Operator& o, double tol = kDefaultTol);
bool is_projector(const Operator& p, double tol = kDefaultTol);

/// The generalized commutator [A, X]* = A X - X A^dagger.
Operator star_commutator(const Operator& a, const Operator& x);

Operator matrix_unit(Index rows, Index cols, Index i, Index j);

// ---------------------------------------------------------------------------
// Vectorization

Vector vectorize(const Operator& x);

/// Inverse of vectorize. Throws DimensionMismatch when the length is not a
/// perfect square.
Operator devectorize(const Vector& v);

// ---------------------------------------------------------------------------
// Superoperators

class Superoperator {
 public:
  Superoperator() = default;
  /// Zero superoperator on a Hilbert space of dimension `hilbert_dim`.
  explicit Superoperator(Index hilbert_dim);
  Superoperator(Index hilbert_dim, Matrix matrix);

  static Superoperator identity(Index hilbert_dim);

  Index hilbert_dim() const { return hilbert_dim_; }
  const Matrix& matrix() const { return matrix_; }

  Operator apply(const Operator& x) const;

  /// Hilbert-Schmidt adjoint; for E(.) = sum_i A_i (.) B_i^dagger this is
  /// E^double-dagger(.) = sum_i A_i^dagger (.) B_i.
  Superoperator adjoint() const;

  Superoperator& operator+=(const Superoperator& rhs);
  Superoperator& operator-=(const Superoperator& rhs);
  Superoperator& operator*=(Complex s);

  friend Superoperator operator+(Superoperator lhs, const Superoperator& rhs) { return lhs += rhs; }
  friend Superoperator operator-(Superoperator lhs, const Superoperator& rhs) { return lhs -= rhs; }
  friend Superoperator operator*(Complex s, Superoperator rhs) { return rhs *= s; }
  friend Superoperator operator*(Superoperator lhs, Complex s) { return lhs *= s; }
  /// Composition: (lhs * rhs)(X) = lhs(rhs(X)).
  friend Superoperator operator*(const Superoperator& lhs, const Superoperator& rhs);

 private:
  Index hilbert_dim_ = 0;
  Matrix matrix_;
};

/// X -> A X B.
Superoperator sandwich_superop(const Operator& a, const Operator& b);

/// D[F](X) = F X F^dagger - 1/2 {F^dagger F, X}.
Superoperator dissipator(const Operator& f);

/// X -> A X - X A^dagger.
Superoperator star_commutator_superop(const Operator& a);

Superoperator adjoint_superop(const Superoperator& s);

// ---------------------------------------------------------------------------
// DFS projector and four-corners decomposition

enum class Corner { kUpperLeft, kUpperRight, kLowerLeft, kLowerRight };

const char* corner_name(Corner c);

/// Orthogonal projector onto the DFS together with orthonormal bases of the
/// DFS and of the decaying complement.
///
/// Invariants: P^2 = P = P^dagger, tr P = d, (I - P) P = 0.
class DfsProjector {
 public:
  /// Projector onto span{e_i : i in indices}. Bases are the selected unit
  /// vectors in index order, so compressed blocks are plain sub-blocks.
  static DfsProjector from_basis(Index dim, std::span<const Index> indices);

  /// Projector given as a full matrix; bases come from its eigenvectors.
  /// Throws ValidationError if the matrix is not a Hermitian projector.
  static DfsProjector from_matrix(const Operator& p, double tol = kDefaultTol);

  Index dim() const { return dfs_basis_.rows(); }
  Index dfs_dim() const { return dfs_basis_.cols(); }
  Index decay_dim() const { return decay_basis_.cols(); }

  /// P (the DFS identity I_ul).
  const Operator& dfs_identity() const { return ul_; }
  /// Q = I - P (the decaying-space identity I_lr).
  const Operator& decay_identity() const { return lr_; }

  /// D x d isometry whose columns span the DFS.
  const Matrix& dfs_basis() const { return dfs_basis_; }
  /// D x N isometry whose columns span the decaying space.
  const Matrix& decay_basis() const { return decay_basis_; }

  /// The isometry for a corner's row space and column space.
  const Matrix& row_basis(Corner c) const;
  const Matrix& col_basis(Corner c) const;

  /// Compress a full operator to the given corner's block.
  Matrix compress(Corner c, const Operator& o) const;
  /// Embed a corner block back into a full zero-padded operator.
  Operator expand(Corner c, const Matrix& block) const;

  /// D^2 x (rows * cols) isometry mapping vec(block) to vec(expand(block)).
  Matrix corner_embedding(Corner c) const;

 private:
  DfsProjector(Matrix dfs_basis, Matrix decay_basis);

  Matrix dfs_basis_;
  Matrix decay_basis_;
  Operator ul_;
  Operator lr_;
};

struct CorneredOperator {
  Operator ul;  // P O P
  Operator ur;  // P O Q, lowering into the DFS
  Operator ll;  // Q O P, raising out of the DFS
  Operator lr;  // Q O Q

  Operator off_diagonal() const { return ur + ll; }
  Operator diagonal() const { return ul + lr; }
  Operator sum() const { return ul + ur + ll + lr; }
  const Operator& get(Corner c) const;
};

CorneredOperator four_corners(const Operator& o, const DfsProjector& p);

/// Superoperator X -> R X C for the corner's projectors (R, C in {P, Q}).
Superoperator corner_projection(Corner c, const DfsProjector& p);

}  // namespace ejof
