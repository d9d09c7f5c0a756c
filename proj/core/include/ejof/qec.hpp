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

// Continuous error correction: a recovery channel R applied at unit rate,
// with its non-identity Kraus operators as jumps, and the leading-order
// effect of miscalibrated Kraus operators on the codespace.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ejof/effective.hpp"

namespace ejof {

struct RecoveryChannel {
  /// Jumps F_l (the Kraus operators other than the codespace identity).
  std::vector<Operator> kraus;
  /// R0, the Kraus operator acting as the identity on the codespace.
  Operator identity_kraus;
  DfsProjector code;
  /// Pairwise orthogonal projectors onto the syndrome subspaces.
  std::vector<Operator> syndrome_supports;

  /// R(X) = R0 X R0^dag + sum_l F_l X F_l^dag.
  Operator apply(const Operator& x) const;
};

/// Pauli `p` (one of I, X, Y, Z) on qubit `qubit` (1-based, leftmost is
/// qubit 1) of an n-qubit register; basis index = sum_k b_k 2^(n-k).
Operator pauli_on_qubit(char p, int qubit, int qubits = 3);

/// Three-qubit bit-flip code: codespace span{|000>, |111>}, jumps
/// F_l = P X^l. Every basis state is within one flip of a codeword, so the
/// six syndrome states make up the whole decaying space.
RecoveryChannel repetition_code_recovery();

/// A two-step local variant: syndrome-2 errors are first relayed to the
/// syndrome-1 sector by X^1 X^2 before being corrected. The relay jump acts
/// within the decaying space, so the corollary hypotheses fail.
RecoveryChannel relay_recovery_toy();

/// Lindbladian with the recovery jumps and Hamiltonian `h` (zero if empty).
StructuredLindbladian recovery_lindbladian(const RecoveryChannel& r, const Operator& h = Operator());

struct RecoveryConditionsReport {
  std::vector<Check> checks;
  bool pass = false;
};

/// Each jump lowers (F = F_ur) and is surjective onto the codespace, the
/// jumps are pairwise orthogonal, sum F^dag F = I_lr and the full channel
/// is trace preserving.
RecoveryConditionsReport check_recovery_conditions(const RecoveryChannel& r, double tol = 1e-10);

struct MiscalibrationEntry {
  CorneredOperator corners;
  std::array<double, 4> norms{};  // ul, ur, ll, lr
  bool undetectable = false;      // f_ul
  bool recovery = false;          // f_ur
  bool detectable = false;        // f_ll
  bool correctable = false;       // f_lr
};

MiscalibrationEntry classify_miscalibration(const Operator& f, const RecoveryChannel& r, double tol = 1e-12);

struct CorrectabilityVerdict {
  /// Least-squares fit of R(E(rho)) = c rho over the codespace matrix units.
  Complex c{0.0, 0.0};
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// E(.) = sum_l f_l (.) f_l^dag with f_l the raising (ll) pieces.
CorrectabilityVerdict correctability_check(const std::vector<Operator>& f_ll, const RecoveryChannel& r,
                                           double tol = 1e-9);

struct RobustnessReport {
  RecoveryConditionsReport conditions;
  CorrectabilityVerdict correctability;
  std::vector<MiscalibrationEntry> classification;
  bool hypotheses_hold = false;
  double general_norm = 0.0;
  double closed_norm = 0.0;
  double route_residual = 0.0;
  double h_eff_norm = 0.0;
  double max_f_eff_norm = 0.0;
  /// ||E_eff - 1/2 {E_eff^(I), .}|| on the codespace.
  double cp_part_norm = 0.0;
  /// Largest spectral norm among V and the f_l, squared.
  double strength = 0.0;
  double tolerance = 0.0;
  /// Both routes vanish within tolerance * strength.
  bool robust = false;
};

/// L_eff by both routes plus the three pieces the corollary sets to zero.
/// Computed regardless of whether the hypotheses hold.
RobustnessReport robustness_check(const RecoveryChannel& r, const StructuredLindbladian& l, const Perturbation& pert,
                                  double tol = 1e-10);

/// f_l = eps * Pauli_p on qubit l, for each of the three jumps.
Perturbation pauli_miscalibration(char p, double eps);

/// f_l = eps (a_l X^l P + random ul, ur and lr pieces): detectable errors
/// the code corrects plus undetectable, recovery and correctable noise.
Perturbation random_correctable_miscalibration(const RecoveryChannel& r, double eps, std::uint64_t seed);

struct ObstructionCell {
  bool hamiltonian = false;
  bool detectable = false;
  bool coherent_drive = false;
  double norm = 0.0;
  bool predicted_zero = false;
  bool matches = false;
};

struct ObstructionReport {
  std::vector<ObstructionCell> cells;  // (H, f_ll) in order 00, 01, 10, 11
  double strength = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// ||L_eff|| for {H = 0, H = h} x {f_ll = 0, f_ll correctable}. Cells with
/// H != 0 use the coherent cancellation drive built from the f_ll-free
/// part of the miscalibration. Only the cell with both H and f_ll nonzero
/// is predicted to survive.
ObstructionReport hamiltonian_obstruction_demo(const RecoveryChannel& r, const Operator& h, double eps,
                                               std::uint64_t seed, double tol = 1e-10);

}  // namespace ejof
