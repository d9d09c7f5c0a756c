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

#include "ejof/channel.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace ejof {
namespace {

double hermitian_min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

Matrix choi_matrix(const Superoperator& s) {
  const Index d = s.hilbert_dim();
  Matrix c(d * d, d * d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      const Operator out = s.apply(matrix_unit(d, d, i, j));
      c.block(i * d, j * d, d, d) = out;
    }
  }
  return c;
}

double choi_min_eigenvalue(const Superoperator& s) { return hermitian_min_eigenvalue(choi_matrix(s)); }

double trace_preservation_defect(const Superoperator& s, bool generator) {
  const Index d = s.hilbert_dim();
  const Operator id = Operator::Identity(d, d);
  const Operator back = s.adjoint().apply(id);
  return frobenius(generator ? back : Operator(back - id));
}

double conditional_cp_min_eigenvalue(const Superoperator& generator) {
  const Index d = generator.hilbert_dim();
  Vector omega = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) omega(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  // Columns 1.. of the Householder Q span the complement of omega.
  const Matrix column = omega;
  Eigen::HouseholderQR<Matrix> qr(column);
  const Matrix full = qr.householderQ();
  const Matrix complement = full.rightCols(d * d - 1);
  const Matrix c = choi_matrix(generator);
  return hermitian_min_eigenvalue(complement.adjoint() * c * complement);
}

}  // namespace ejof
