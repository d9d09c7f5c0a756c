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

#include "ejof/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace ejof {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionMismatch(os.str());
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.rows() << " vs " << b.rows() << ")";
    throw DimensionMismatch(os.str());
  }
}

double frobenius(const Matrix& m) { return m.norm(); }

Complex hs_inner(const Operator& x, const Operator& y) { return (x.adjoint() * y).trace(); }

double relative_residual(const Matrix& a, const Matrix& b, double floor) {
  const double scale = std::max({a.norm(), b.norm(), floor});
  return (a - b).norm() / scale;
}

bool is_hermitian(const Operator& o, double tol) {
  if (o.rows() != o.cols()) return false;
  return (o - o.adjoint()).norm() <= tol * std::max(1.0, o.norm());
}

bool is_projector(const Operator& p, double tol) {
  return is_hermitian(p, tol) && (p * p - p).norm() <= tol * std::max(1.0, p.norm());
}

Operator star_commutator(const Operator& a, const Operator& x) {
  require_same_dim(a, x, "star_commutator");
  return a * x - x * a.adjoint();
}

Operator matrix_unit(Index rows, Index cols, Index i, Index j) {
  Operator e = Operator::Zero(rows, cols);
  e(i, j) = 1.0;
  return e;
}

Vector vectorize(const Operator& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Operator devectorize(const Vector& v) {
  const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) {
    throw DimensionMismatch("devectorize: length " + std::to_string(v.size()) +
                            " is not a perfect square");
  }
  return Eigen::Map<const Operator>(v.data(), n, n);
}

// ---------------------------------------------------------------------------

Superoperator::Superoperator(Index hilbert_dim)
    : hilbert_dim_(hilbert_dim),
      matrix_(Matrix::Zero(hilbert_dim * hilbert_dim, hilbert_dim * hilbert_dim)) {}

Superoperator::Superoperator(Index hilbert_dim, Matrix matrix)
    : hilbert_dim_(hilbert_dim), matrix_(std::move(matrix)) {
  const Index n = hilbert_dim * hilbert_dim;
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DimensionMismatch("Superoperator: matrix is not D^2 x D^2 for D = " +
                            std::to_string(hilbert_dim));
  }
}

Superoperator Superoperator::identity(Index hilbert_dim) {
  const Index n = hilbert_dim * hilbert_dim;
  return Superoperator(hilbert_dim, Matrix::Identity(n, n));
}

Operator Superoperator::apply(const Operator& x) const {
  if (x.rows() != hilbert_dim_ || x.cols() != hilbert_dim_) {
    throw DimensionMismatch("Superoperator::apply: operator dimension " + std::to_string(x.rows()) +
                            " does not match " + std::to_string(hilbert_dim_));
  }
  return devectorize(matrix_ * vectorize(x));
}

Superoperator Superoperator::adjoint() const { return Superoperator(hilbert_dim_, matrix_.adjoint()); }

Superoperator& Superoperator::operator+=(const Superoperator& rhs) {
  if (rhs.hilbert_dim_ != hilbert_dim_) throw DimensionMismatch("Superoperator +: dimension mismatch");
  matrix_ += rhs.matrix_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& rhs) {
  if (rhs.hilbert_dim_ != hilbert_dim_) throw DimensionMismatch("Superoperator -: dimension mismatch");
  matrix_ -= rhs.matrix_;
  return *this;
}

Superoperator& Superoperator::operator*=(Complex s) {
  matrix_ *= s;
  return *this;
}

Superoperator operator*(const Superoperator& lhs, const Superoperator& rhs) {
  if (lhs.hilbert_dim() != rhs.hilbert_dim()) {
    throw DimensionMismatch("Superoperator composition: dimension mismatch");
  }
  return Superoperator(lhs.hilbert_dim(), lhs.matrix() * rhs.matrix());
}

Superoperator sandwich_superop(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "sandwich_superop");
  return Superoperator(a.rows(), Eigen::kroneckerProduct(b.transpose(), a).eval());
}

Superoperator dissipator(const Operator& f) {
  require_square(f, "dissipator");
  const Operator id = Operator::Identity(f.rows(), f.cols());
  const Operator ff = f.adjoint() * f;
  return sandwich_superop(f, f.adjoint()) - 0.5 * sandwich_superop(ff, id) -
         0.5 * sandwich_superop(id, ff);
}

Superoperator star_commutator_superop(const Operator& a) {
  require_square(a, "star_commutator_superop");
  const Operator id = Operator::Identity(a.rows(), a.cols());
  return sandwich_superop(a, id) - sandwich_superop(id, a.adjoint());
}

Superoperator adjoint_superop(const Superoperator& s) { return s.adjoint(); }

// ---------------------------------------------------------------------------

const char* corner_name(Corner c) {
  switch (c) {
    case Corner::kUpperLeft: return "ul";
    case Corner::kUpperRight: return "ur";
    case Corner::kLowerLeft: return "ll";
    case Corner::kLowerRight: return "lr";
  }
  return "?";
}

DfsProjector::DfsProjector(Matrix dfs_basis, Matrix decay_basis)
    : dfs_basis_(std::move(dfs_basis)), decay_basis_(std::move(decay_basis)) {
  ul_ = dfs_basis_ * dfs_basis_.adjoint();
  lr_ = decay_basis_ * decay_basis_.adjoint();
}

DfsProjector DfsProjector::from_basis(Index dim, std::span<const Index> indices) {
  if (dim <= 0) throw DimensionMismatch("DfsProjector: dimension must be positive");
  std::vector<bool> in_dfs(static_cast<std::size_t>(dim), false);
  for (Index i : indices) {
    if (i < 0 || i >= dim) {
      throw DimensionMismatch("DfsProjector: basis index " + std::to_string(i) + " out of range");
    }
    if (in_dfs[static_cast<std::size_t>(i)]) {
      throw ValidationError("DfsProjector: duplicate basis index " + std::to_string(i));
    }
    in_dfs[static_cast<std::size_t>(i)] = true;
  }
  const auto d = static_cast<Index>(indices.size());
  Matrix dfs = Matrix::Zero(dim, d);
  Matrix decay = Matrix::Zero(dim, dim - d);
  for (Index k = 0; k < d; ++k) dfs(indices[static_cast<std::size_t>(k)], k) = 1.0;
  Index col = 0;
  for (Index i = 0; i < dim; ++i) {
    if (!in_dfs[static_cast<std::size_t>(i)]) decay(i, col++) = 1.0;
  }
  return DfsProjector(std::move(dfs), std::move(decay));
}

DfsProjector DfsProjector::from_matrix(const Operator& p, double tol) {
  require_square(p, "DfsProjector");
  if (!is_projector(p, tol)) {
    throw ValidationError("DfsProjector: matrix is not a Hermitian projector");
  }
  // Coordinate-aligned projectors keep unit-vector bases so that compressed
  // blocks stay readable.
  const Operator diag = p.diagonal().asDiagonal();
  if ((p - diag).norm() <= tol) {
    std::vector<Index> idx;
    for (Index i = 0; i < p.rows(); ++i) {
      if (std::abs(p(i, i) - 1.0) <= tol) {
        idx.push_back(i);
      } else if (std::abs(p(i, i)) > tol) {
        throw ValidationError("DfsProjector: diagonal entry is neither 0 nor 1");
      }
    }
    return from_basis(p.rows(), idx);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const Index n = p.rows();
  Index d = 0;
  for (Index i = 0; i < n; ++i) d += ev(i) > 0.5 ? 1 : 0;
  // Eigenvalues come sorted ascending: the last d columns span the DFS.
  Matrix dfs = es.eigenvectors().rightCols(d);
  Matrix decay = es.eigenvectors().leftCols(n - d);
  return DfsProjector(std::move(dfs), std::move(decay));
}

const Matrix& DfsProjector::row_basis(Corner c) const {
  return (c == Corner::kUpperLeft || c == Corner::kUpperRight) ? dfs_basis_ : decay_basis_;
}

const Matrix& DfsProjector::col_basis(Corner c) const {
  return (c == Corner::kUpperLeft || c == Corner::kLowerLeft) ? dfs_basis_ : decay_basis_;
}

Matrix DfsProjector::compress(Corner c, const Operator& o) const {
  if (o.rows() != dim() || o.cols() != dim()) {
    throw DimensionMismatch("DfsProjector::compress: dimension mismatch");
  }
  return row_basis(c).adjoint() * o * col_basis(c);
}

Operator DfsProjector::expand(Corner c, const Matrix& block) const {
  if (block.rows() != row_basis(c).cols() || block.cols() != col_basis(c).cols()) {
    throw DimensionMismatch(std::string("DfsProjector::expand: block shape does not match corner ") +
                            corner_name(c));
  }
  return row_basis(c) * block * col_basis(c).adjoint();
}

Matrix DfsProjector::corner_embedding(Corner c) const {
  return Eigen::kroneckerProduct(col_basis(c).conjugate(), row_basis(c)).eval();
}

const Operator& CorneredOperator::get(Corner c) const {
  switch (c) {
    case Corner::kUpperLeft: return ul;
    case Corner::kUpperRight: return ur;
    case Corner::kLowerLeft: return ll;
    case Corner::kLowerRight: return lr;
  }
  return ul;
}

CorneredOperator four_corners(const Operator& o, const DfsProjector& p) {
  require_square(o, "four_corners");
  if (o.rows() != p.dim()) {
    throw DimensionMismatch("four_corners: operator dimension " + std::to_string(o.rows()) +
                            " does not match projector dimension " + std::to_string(p.dim()));
  }
  const Operator& pp = p.dfs_identity();
  const Operator& qq = p.decay_identity();
  return CorneredOperator{pp * o * pp, pp * o * qq, qq * o * pp, qq * o * qq};
}

Superoperator corner_projection(Corner c, const DfsProjector& p) {
  const Operator& row = (c == Corner::kUpperLeft || c == Corner::kUpperRight) ? p.dfs_identity()
                                                                                : p.decay_identity();
  const Operator& col = (c == Corner::kUpperLeft || c == Corner::kLowerLeft) ? p.dfs_identity()
                                                                               : p.decay_identity();
  return sandwich_superop(row, col);
}

}  // namespace ejof
