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

// Reference computations that share no code path with the library beyond
// the basic operator types. Slow and simple on purpose.

#pragma once

#include <cstdint>
#include <vector>

#include "ejof/effective.hpp"

namespace ejof::oracle {

/// -i[H, X] + sum (F X F^dag - 1/2 F^dag F X - 1/2 X F^dag F), entrywise.
Operator apply_lindbladian(const Operator& h, const std::vector<Operator>& jumps, const Operator& x);

/// Superoperator matrix built column by column from apply_lindbladian.
Matrix lindbladian_matrix(const Operator& h, const std::vector<Operator>& jumps);

/// Spectral projector onto the `count` eigenvalues of smallest modulus,
/// from a full eigendecomposition (assumes diagonalizable).
Matrix spectral_projector(const Matrix& s, Index count);

/// Drazin inverse via (S + P0)^-1 - P0 with P0 the zero-eigenvalue spectral
/// projector; valid when zero is semisimple.
Matrix drazin_from_projector(const Matrix& s, const Matrix& p0);

/// Bloch effective operator of the `d^2` slow eigenvalues of
/// L + h O1 + h^2 O2 on the DFS block, then the symmetric differences
/// [A(h) - A(-h)] / 2h + [A(h) + A(-h)] / 2h^2, which equals the
/// second-order effective generator up to O(h^2).
Matrix kato_effective_generator(const StructuredLindbladian& l, const Perturbation& pert, double h);

/// Choi matrix C(i d + a, j d + b) = <a| S(|i><j|) |b>.
Matrix choi_matrix(const Superoperator& s);

/// exp(t S) by a Taylor series with repeated squaring, independent of
/// Eigen's matrix functions.
Matrix taylor_exp(const Matrix& s, double t);

}  // namespace ejof::oracle
