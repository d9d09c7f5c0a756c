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

#pragma once

#include <functional>

#include "ejof/operator_core.hpp"

namespace ejof {

/// A = U T U^dagger with T upper triangular and U unitary.
struct ComplexSchurForm {
  Matrix unitary;
  Matrix triangular;
};

ComplexSchurForm complex_schur(const Matrix& a);

/// Swap the adjacent diagonal entries k and k+1 of the triangular factor
/// with a single Givens rotation, updating the unitary factor.
void swap_schur_diagonal(ComplexSchurForm& form, Index k);

/// Stable reordering so that every eigenvalue satisfying `select` comes
/// first on the diagonal. Returns how many were selected.
Index reorder_schur(ComplexSchurForm& form, const std::function<bool(Complex)>& select);

}  // namespace ejof
