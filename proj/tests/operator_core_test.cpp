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

#include <array>

#include <gtest/gtest.h>

#include "ejof/operator_core.hpp"
#include "ejof/random.hpp"
#include "support/oracles.hpp"

namespace ejof {
namespace {

TEST(Vectorization, SandwichMatchesDirectProduct) {
  Rng rng(1);
  const Matrix a = random_complex_matrix(rng, 4, 4);
  const Matrix b = random_complex_matrix(rng, 4, 4);
  const Matrix x = random_complex_matrix(rng, 4, 4);
  const Operator direct = a * x * b;
  EXPECT_LT(frobenius(sandwich_superop(a, b).apply(x) - direct), 1e-12);
  EXPECT_LT(frobenius(devectorize(vectorize(x)) - x), 1e-15);
}

TEST(Vectorization, ColumnStacking) {
  Operator x(2, 2);
  x << 1.0, 2.0, 3.0, 4.0;
  const Vector v = vectorize(x);
  EXPECT_EQ(v(1), Complex(3.0, 0.0));
  EXPECT_EQ(v(2), Complex(2.0, 0.0));
}

TEST(Superoperator, DissipatorMatchesDirectFormula) {
  Rng rng(2);
  const Matrix f = random_complex_matrix(rng, 3, 3);
  const Matrix x = random_complex_matrix(rng, 3, 3);
  const Operator zero = Operator::Zero(3, 3);
  EXPECT_LT(frobenius(dissipator(f).apply(x) - oracle::apply_lindbladian(zero, {f}, x)), 1e-12);
}

TEST(Superoperator, AdjointIsHilbertSchmidtAdjoint) {
  Rng rng(3);
  const Superoperator s(3, random_complex_matrix(rng, 9, 9));
  const Matrix x = random_complex_matrix(rng, 3, 3);
  const Matrix y = random_complex_matrix(rng, 3, 3);
  const Complex lhs = hs_inner(y, s.apply(x));
  const Complex rhs = hs_inner(s.adjoint().apply(y), x);
  EXPECT_LT(std::abs(lhs - rhs), 1e-11);
}

TEST(Superoperator, CompositionOrder) {
  Rng rng(4);
  const Superoperator a(2, random_complex_matrix(rng, 4, 4));
  const Superoperator b(2, random_complex_matrix(rng, 4, 4));
  const Matrix x = random_complex_matrix(rng, 2, 2);
  EXPECT_LT(frobenius((a * b).apply(x) - a.apply(b.apply(x))), 1e-12);
}

TEST(Superoperator, RejectsNonSquareDimension) {
  EXPECT_THROW(devectorize(Vector::Zero(5)), DimensionMismatch);
  EXPECT_THROW(Superoperator(2, Matrix::Zero(3, 3)), DimensionMismatch);
}

TEST(DfsProjector, FourCornersRecombine) {
  Rng rng(5);
  const std::array<Index, 2> idx{1, 3};
  const DfsProjector p = DfsProjector::from_basis(5, idx);
  const Matrix o = random_complex_matrix(rng, 5, 5);
  const CorneredOperator c = four_corners(o, p);
  EXPECT_LT(frobenius(c.sum() - o), 1e-13);
  EXPECT_LT(frobenius(c.ur - p.dfs_identity() * o * p.decay_identity()), 1e-13);
  EXPECT_LT(frobenius(c.ll - p.decay_identity() * o * p.dfs_identity()), 1e-13);
  EXPECT_EQ(p.dfs_dim(), 2);
  EXPECT_EQ(p.decay_dim(), 3);
}

TEST(DfsProjector, FromMatrixMatchesBasisProjector) {
  Rng rng(6);
  const Matrix u = random_unitary(rng, 4);
  const Operator proj = u.leftCols(2) * u.leftCols(2).adjoint();
  const DfsProjector p = DfsProjector::from_matrix(proj);
  EXPECT_LT(frobenius(p.dfs_identity() - proj), 1e-12);
  EXPECT_LT(frobenius(p.dfs_identity() + p.decay_identity() - Matrix::Identity(4, 4)), 1e-12);
  const Matrix o = random_complex_matrix(rng, 4, 4);
  for (Corner c : {Corner::kUpperLeft, Corner::kUpperRight, Corner::kLowerLeft, Corner::kLowerRight}) {
    EXPECT_LT(frobenius(p.expand(c, p.compress(c, o)) - four_corners(o, p).get(c)), 1e-12) << corner_name(c);
  }
}

TEST(DfsProjector, RejectsNonProjector) {
  Operator m = Operator::Identity(3, 3);
  m(0, 0) = 0.5;
  EXPECT_THROW(DfsProjector::from_matrix(m), ValidationError);
}

TEST(DfsProjector, CornerEmbeddingIsIsometry) {
  Rng rng(7);
  const std::array<Index, 2> idx{0, 2};
  const DfsProjector p = DfsProjector::from_basis(4, idx);
  for (Corner c : {Corner::kUpperLeft, Corner::kUpperRight, Corner::kLowerLeft, Corner::kLowerRight}) {
    const Matrix w = p.corner_embedding(c);
    EXPECT_LT(frobenius(w.adjoint() * w - Matrix::Identity(w.cols(), w.cols())), 1e-13);
    const Matrix o = random_complex_matrix(rng, 4, 4);
    const Vector back = w.adjoint() * vectorize(o);
    const Matrix block = p.compress(c, o);
    EXPECT_LT((back - Eigen::Map<const Vector>(block.data(), block.size())).norm(), 1e-13);
  }
}

TEST(CornerProjection, IsIdempotentAndSumsToIdentity) {
  const std::array<Index, 1> idx{0};
  const DfsProjector p = DfsProjector::from_basis(3, idx);
  Superoperator total(3);
  for (Corner c : {Corner::kUpperLeft, Corner::kUpperRight, Corner::kLowerLeft, Corner::kLowerRight}) {
    const Superoperator s = corner_projection(c, p);
    EXPECT_LT(frobenius((s * s).matrix() - s.matrix()), 1e-14);
    total += s;
  }
  EXPECT_LT(frobenius(total.matrix() - Matrix::Identity(9, 9)), 1e-14);
}

TEST(StarCommutator, MatchesDefinition) {
  Rng rng(8);
  const Matrix a = random_complex_matrix(rng, 3, 3);
  const Matrix x = random_complex_matrix(rng, 3, 3);
  EXPECT_LT(frobenius(star_commutator(a, x) - (a * x - x * a.adjoint())), 1e-13);
  EXPECT_LT(frobenius(star_commutator_superop(a).apply(x) - star_commutator(a, x)), 1e-12);
}

}  // namespace
}  // namespace ejof
