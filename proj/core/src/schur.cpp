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

#include "ejof/schur.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace ejof {
namespace {

struct Givens {
  double c = 1.0;
  Complex s{0.0, 0.0};
};

// Rotation with [c s; -conj(s) c] [f; g] = [r; 0].
Givens make_givens(Complex f, Complex g) {
  const double af = std::abs(f);
  const double ag = std::abs(g);
  if (ag == 0.0) return {};
  if (af == 0.0) return {0.0, std::conj(g) / ag};
  const double norm = std::hypot(af, ag);
  return {af / norm, (f / af) * std::conj(g) / norm};
}

// x <- c x + s y,  y <- c y - conj(s) x.
template <typename X, typename Y>
void rotate(X&& x, Y&& y, double c, Complex s) {
  for (Index i = 0; i < x.size(); ++i) {
    const Complex xi = x(i);
    const Complex yi = y(i);
    x(i) = c * xi + s * yi;
    y(i) = c * yi - std::conj(s) * xi;
  }
}

}  // namespace

ComplexSchurForm complex_schur(const Matrix& a) {
  require_square(a, "complex_schur");
  Eigen::ComplexSchur<Matrix> schur(a, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw NumericalFailure("complex_schur: QR iteration did not converge");
  return {schur.matrixU(), schur.matrixT()};
}

void swap_schur_diagonal(ComplexSchurForm& form, Index k) {
  Matrix& t = form.triangular;
  const Index n = t.rows();
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  const Givens g = make_givens(t(k, k + 1), t22 - t11);

  if (k + 2 < n) {
    rotate(t.row(k).tail(n - k - 2).transpose(), t.row(k + 1).tail(n - k - 2).transpose(), g.c, g.s);
  }
  rotate(t.col(k).head(k), t.col(k + 1).head(k), g.c, std::conj(g.s));
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
  rotate(form.unitary.col(k), form.unitary.col(k + 1), g.c, std::conj(g.s));
}

Index reorder_schur(ComplexSchurForm& form, const std::function<bool(Complex)>& select) {
  const Index n = form.triangular.rows();
  Index placed = 0;
  for (Index j = 0; j < n; ++j) {
    if (!select(form.triangular(j, j))) continue;
    for (Index k = j - 1; k >= placed; --k) swap_schur_diagonal(form, k);
    ++placed;
  }
  return placed;
}

}  // namespace ejof
