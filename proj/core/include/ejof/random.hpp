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

// Seeded generators for random structured instances. Every generator takes
// its seed explicitly and owns its engine, so calls are reentrant.

#pragma once

#include <cstdint>
#include <random>

#include "ejof/effective.hpp"

namespace ejof {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
Matrix random_complex_matrix(Rng& rng, Index rows, Index cols);
Operator random_hermitian(Rng& rng, Index dim);
/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix random_unitary(Rng& rng, Index dim);

struct InstanceShape {
  Index dfs_dim = 2;
  Index decay_dim = 2;
  Index jump_count = 1;
  /// Draw a random Hermitian H_lr; with false, H = 0.
  bool hamiltonian = true;
};

/// Structured Lindbladian with DFS = span{e_0 .. e_{d-1}}, random Hermitian
/// H_lr and random lowering jumps F_l = (F_l)_ur. Redraws (at most 8 times)
/// until the steady subspace is exactly the DFS; throws ValidationError
/// otherwise.
StructuredLindbladian random_structured_lindbladian(const InstanceShape& shape, std::uint64_t seed);

/// Structured Lindbladian whose Kamiltonian has a 2x2 Jordan block on the
/// decaying space (an exceptional point of -i Gamma/2 |a><a| + Omega
/// (|a><b| + h.c.) at Omega = Gamma/4), hidden by random unitary rotations
/// of the DFS and decaying bases. Requires decay_dim >= 2.
StructuredLindbladian jordan_structured_lindbladian(const InstanceShape& shape, std::uint64_t seed);

/// Random Hermitian V and jump perturbations f_l with all four corners
/// populated, scaled by `scale`.
Perturbation random_perturbation(const StructuredLindbladian& l, std::uint64_t seed, double scale = 1.0);

}  // namespace ejof
