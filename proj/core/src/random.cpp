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

#include "ejof/random.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/QR>

namespace ejof {
namespace {

constexpr int kMaxAttempts = 8;

DfsProjector leading_dfs(Index dim, Index d) {
  std::vector<Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), Index{0});
  return DfsProjector::from_basis(dim, idx);
}

}  // namespace

Matrix random_complex_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Operator random_hermitian(Rng& rng, Index dim) {
  const Matrix g = random_complex_matrix(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

Matrix random_unitary(Rng& rng, Index dim) {
  const Matrix g = random_complex_matrix(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

StructuredLindbladian random_structured_lindbladian(const InstanceShape& shape, std::uint64_t seed) {
  const Index d = shape.dfs_dim;
  const Index n = shape.decay_dim;
  const Index dim = d + n;
  if (d < 1 || n < 1 || shape.jump_count < 1) {
    throw DimensionMismatch("random_structured_lindbladian: need d >= 1, N >= 1 and at least one jump");
  }
  const DfsProjector dfs = leading_dfs(dim, d);
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Operator h = Operator::Zero(dim, dim);
    if (shape.hamiltonian) h.bottomRightCorner(n, n) = random_hermitian(rng, n);
    std::vector<Operator> jumps;
    for (Index l = 0; l < shape.jump_count; ++l) {
      Operator f = Operator::Zero(dim, dim);
      f.topRightCorner(d, n) = random_complex_matrix(rng, d, n);
      jumps.push_back(std::move(f));
    }
    StructuredLindbladian lind(std::move(h), std::move(jumps), dfs);
    if (validate_structure(lind).pass()) return lind;
  }
  throw ValidationError("random_structured_lindbladian: no instance with a unique DFS after 8 draws");
}

StructuredLindbladian jordan_structured_lindbladian(const InstanceShape& shape, std::uint64_t seed) {
  const Index d = shape.dfs_dim;
  const Index n = shape.decay_dim;
  const Index dim = d + n;
  if (d < 1 || n < 2) {
    throw DimensionMismatch("jordan_structured_lindbladian: need d >= 1 and N >= 2");
  }
  const Index rest = n - 2;
  Index jump_count = std::max<Index>(1, shape.jump_count);
  if (rest == 0) jump_count = 1;
  if (rest > 0 && d == 1) jump_count = std::max<Index>(2, jump_count);

  const DfsProjector dfs = leading_dfs(dim, d);
  std::uniform_real_distribution<double> rate(0.5, 2.0);
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double gamma = rate(rng);
    const double omega = gamma / 4.0;
    const Index a = d;      // decaying state carrying the strong decay
    const Index b = d + 1;  // its coherent partner

    Operator h = Operator::Zero(dim, dim);
    h(a, b) = omega;
    h(b, a) = omega;
    if (rest > 0) h.bottomRightCorner(rest, rest) = random_hermitian(rng, rest);

    std::vector<Operator> jumps;
    Operator first = Operator::Zero(dim, dim);
    first(0, a) = std::sqrt(gamma);
    if (rest > 0 && d >= 2) first.block(1, d + 2, 1, rest) = random_complex_matrix(rng, 1, rest);
    jumps.push_back(std::move(first));
    for (Index l = 1; l < jump_count; ++l) {
      Operator f = Operator::Zero(dim, dim);
      f.block(0, d + 2, d, rest) = random_complex_matrix(rng, d, rest);
      jumps.push_back(std::move(f));
    }

    Matrix w = Matrix::Zero(dim, dim);
    w.topLeftCorner(d, d) = random_unitary(rng, d);
    w.bottomRightCorner(n, n) = random_unitary(rng, n);
    Operator hr = w * h * w.adjoint();
    hr = 0.5 * (hr + hr.adjoint());
    for (auto& f : jumps) f = w * f * w.adjoint();

    StructuredLindbladian lind(std::move(hr), std::move(jumps), dfs);
    if (validate_structure(lind).pass()) return lind;
  }
  throw ValidationError("jordan_structured_lindbladian: no instance with a unique DFS after 8 draws");
}

Perturbation random_perturbation(const StructuredLindbladian& l, std::uint64_t seed, double scale) {
  Rng rng(seed);
  const Index dim = l.dim();
  Perturbation p{scale * random_hermitian(rng, dim), {}};
  for (std::size_t i = 0; i < l.jumps().size(); ++i) p.fs.push_back(scale * random_complex_matrix(rng, dim, dim));
  return p;
}

}  // namespace ejof
