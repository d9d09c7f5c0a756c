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

// Choi-matrix tests for maps and generators.

#pragma once

#include "ejof/operator_core.hpp"

namespace ejof {

/// C = sum_{ij} |i><j| (x) S(|i><j|), a d^2 x d^2 matrix.
Matrix choi_matrix(const Superoperator& s);

/// Smallest eigenvalue of the Hermitian part of the Choi matrix.
double choi_min_eigenvalue(const Superoperator& s);

/// ||S^dag(I) - I||_F for a map, or ||S^dag(I)||_F when `generator` is set.
double trace_preservation_defect(const Superoperator& s, bool generator);

/// Smallest eigenvalue of Q C Q on the complement of the maximally
/// entangled vector. A Hermiticity-preserving generator is a Lindbladian
/// iff this is nonnegative and it preserves the trace.
double conditional_cp_min_eigenvalue(const Superoperator& generator);

}  // namespace ejof
