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

#include "ejof/qec.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "ejof/random.hpp"
#include "ejof/scenarios.hpp"

namespace ejof {
namespace {

// Ratio ||L_eff|| / strength above which a cell counts as nonzero.
constexpr double kNonzeroRatio = 1e-4;

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double strength_of(const Perturbation& p) {
  double s = spectral_norm(p.v);
  for (const auto& f : p.fs) s = std::max(s, spectral_norm(f));
  return s * s;
}

Matrix single_qubit(char p) {
  Matrix m = Matrix::Zero(2, 2);
  switch (p) {
    case 'I':
      m = Matrix::Identity(2, 2);
      break;
    case 'X':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = Complex(0.0, -1.0);
      m(1, 0) = Complex(0.0, 1.0);
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw ValidationError(std::string("unknown Pauli '") + p + "', expected one of I, X, Y, Z");
  }
  return m;
}

DfsProjector repetition_codespace() {
  const std::array<Index, 2> idx{0, 7};
  return DfsProjector::from_basis(8, idx);
}

std::vector<Operator> syndrome_projectors(const DfsProjector& code) {
  std::vector<Operator> out;
  for (int q = 1; q <= 3; ++q) {
    const Operator x = pauli_on_qubit('X', q);
    out.push_back(x * code.dfs_identity() * x);
  }
  return out;
}

}  // namespace

Operator RecoveryChannel::apply(const Operator& x) const {
  Operator out = identity_kraus * x * identity_kraus.adjoint();
  for (const auto& f : kraus) out += f * x * f.adjoint();
  return out;
}

Operator pauli_on_qubit(char p, int qubit, int qubits) {
  if (qubit < 1 || qubit > qubits) throw DimensionMismatch("pauli_on_qubit: qubit index out of range");
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 1; k <= qubits; ++k) {
    const Matrix factor = single_qubit(k == qubit ? p : 'I');
    out = Eigen::kroneckerProduct(out, factor).eval();
  }
  return out;
}

RecoveryChannel repetition_code_recovery() {
  RecoveryChannel r{{}, Operator(), repetition_codespace(), {}};
  r.identity_kraus = r.code.dfs_identity();
  for (int q = 1; q <= 3; ++q) r.kraus.push_back(r.code.dfs_identity() * pauli_on_qubit('X', q));
  r.syndrome_supports = syndrome_projectors(r.code);
  return r;
}

RecoveryChannel relay_recovery_toy() {
  RecoveryChannel r = repetition_code_recovery();
  r.kraus[1] = pauli_on_qubit('X', 1) * pauli_on_qubit('X', 2) * r.syndrome_supports[1];
  return r;
}

StructuredLindbladian recovery_lindbladian(const RecoveryChannel& r, const Operator& h) {
  const Index dim = r.code.dim();
  Operator ham = h.size() == 0 ? Operator(Operator::Zero(dim, dim)) : h;
  return StructuredLindbladian(std::move(ham), r.kraus, r.code);
}

RecoveryConditionsReport check_recovery_conditions(const RecoveryChannel& r, double tol) {
  RecoveryConditionsReport rep;
  auto add = [&rep](std::string name, double residual, double limit) {
    rep.checks.push_back(Check{std::move(name), residual, limit, residual <= limit});
  };
  const Index dim = r.code.dim();
  Operator sum = Operator::Zero(dim, dim);
  for (std::size_t i = 0; i < r.kraus.size(); ++i) {
    const Operator& f = r.kraus[i];
    const CorneredOperator c = four_corners(f, r.code);
    add("jump_" + std::to_string(i) + "_lowers", frobenius(f - c.ur), tol * std::max(1.0, frobenius(f)));
    add("jump_" + std::to_string(i) + "_surjective", surjectivity_residual(f, r.code), tol);
    sum += f.adjoint() * f;
  }
  add("jumps_orthogonal", orthogonality_residual(r.kraus), tol);
  add("decay_completeness", frobenius(sum - r.code.decay_identity()), tol);
  const Operator channel = r.identity_kraus.adjoint() * r.identity_kraus + sum;
  add("channel_completeness", frobenius(channel - Operator::Identity(dim, dim)), tol);
  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.pass; });
  return rep;
}

MiscalibrationEntry classify_miscalibration(const Operator& f, const RecoveryChannel& r, double tol) {
  require_same_dim(f, r.code.dfs_identity(), "classify_miscalibration");
  MiscalibrationEntry e;
  e.corners = four_corners(f, r.code);
  e.norms = {frobenius(e.corners.ul), frobenius(e.corners.ur), frobenius(e.corners.ll), frobenius(e.corners.lr)};
  e.undetectable = e.norms[0] > tol;
  e.recovery = e.norms[1] > tol;
  e.detectable = e.norms[2] > tol;
  e.correctable = e.norms[3] > tol;
  return e;
}

CorrectabilityVerdict correctability_check(const std::vector<Operator>& f_ll, const RecoveryChannel& r, double tol) {
  const DfsProjector& code = r.code;
  const Index d = code.dfs_dim();
  std::vector<Operator> raising;
  for (const auto& f : f_ll) raising.push_back(four_corners(f, code).ll);

  std::vector<Operator> inputs;
  std::vector<Operator> outputs;
  Complex num{0.0, 0.0};
  double den = 0.0;
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      const Operator x = code.expand(Corner::kUpperLeft, matrix_unit(d, d, i, j));
      Operator e = Operator::Zero(code.dim(), code.dim());
      for (const auto& f : raising) e += f * x * f.adjoint();
      const Operator y = r.apply(e);
      num += hs_inner(x, y);
      den += x.squaredNorm();
      inputs.push_back(x);
      outputs.push_back(y);
    }
  }
  CorrectabilityVerdict v;
  v.tolerance = tol;
  v.c = num / den;
  double err = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    err += (outputs[k] - v.c * inputs[k]).squaredNorm();
    scale += outputs[k].squaredNorm();
  }
  v.residual = std::sqrt(err) / std::max(std::sqrt(scale), kResidualFloor);
  v.pass = v.residual <= tol;
  return v;
}

RobustnessReport robustness_check(const RecoveryChannel& r, const StructuredLindbladian& l, const Perturbation& pert,
                                  double tol) {
  check_perturbation(l, pert);
  RobustnessReport rep;
  rep.tolerance = tol;
  rep.conditions = check_recovery_conditions(r);
  for (const auto& f : pert.fs) rep.classification.push_back(classify_miscalibration(f, r));
  rep.correctability = correctability_check(pert.fs, r);
  rep.hypotheses_hold = rep.conditions.pass && rep.correctability.pass &&
                        frobenius(l.hamiltonian()) <= kDefaultTol && frobenius(pert.v) <= kDefaultTol;

  const Superoperator general = effective_lindbladian_general(l, pert);
  const EffectiveLindbladian closed = effective_lindbladian_closed(l, pert);
  rep.general_norm = frobenius(general.matrix());
  rep.closed_norm = frobenius(closed.generator.matrix());
  rep.route_residual = relative_residual(general.matrix(), closed.generator.matrix());
  rep.h_eff_norm = frobenius(closed.h_eff);
  for (const auto& fe : closed.f_effs) rep.max_f_eff_norm = std::max(rep.max_f_eff_norm, frobenius(fe));

  const DfsProjector& code = l.dfs();
  const Index d = code.dfs_dim();
  const Matrix a = code.compress(Corner::kUpperLeft, closed.cp_adjoint_identity);
  const Matrix id = Matrix::Identity(d, d);
  const Superoperator cp_part = closed.cp_map - 0.5 * (sandwich_superop(a, id) + sandwich_superop(id, a));
  rep.cp_part_norm = frobenius(cp_part.matrix());

  rep.strength = strength_of(pert);
  rep.robust = std::max(rep.general_norm, rep.closed_norm) <= tol * std::max(rep.strength, kResidualFloor);
  return rep;
}

Perturbation pauli_miscalibration(char p, double eps) {
  Perturbation out{Operator::Zero(8, 8), {}};
  for (int q = 1; q <= 3; ++q) out.fs.push_back(eps * pauli_on_qubit(p, q));
  return out;
}

Perturbation random_correctable_miscalibration(const RecoveryChannel& r, double eps, std::uint64_t seed) {
  if (r.kraus.size() != 3 || r.code.dim() != 8) {
    throw DimensionMismatch("random_correctable_miscalibration: expects the three-qubit code");
  }
  Rng rng(seed);
  const Index dim = r.code.dim();
  Perturbation out{Operator::Zero(dim, dim), {}};
  for (int q = 1; q <= 3; ++q) {
    const Complex a = random_complex_matrix(rng, 1, 1)(0, 0);
    const CorneredOperator g = four_corners(random_complex_matrix(rng, dim, dim), r.code);
    const Operator flip = pauli_on_qubit('X', q) * r.code.dfs_identity();
    out.fs.push_back(eps * (a * flip + g.ul + g.ur + g.lr));
  }
  return out;
}

ObstructionReport hamiltonian_obstruction_demo(const RecoveryChannel& r, const Operator& h, double eps,
                                               std::uint64_t seed, double tol) {
  const Perturbation base = random_correctable_miscalibration(r, eps, seed);
  Perturbation no_ll = base;
  for (auto& f : no_ll.fs) f -= four_corners(f, r.code).ll;

  ObstructionReport rep;
  rep.tolerance = tol;
  rep.strength = strength_of(base);
  const double scale = std::max(rep.strength, kResidualFloor);
  for (int cell = 0; cell < 4; ++cell) {
    ObstructionCell c;
    c.hamiltonian = (cell & 2) != 0;
    c.detectable = (cell & 1) != 0;
    const StructuredLindbladian l = recovery_lindbladian(r, c.hamiltonian ? h : Operator());
    Perturbation p = c.detectable ? base : no_ll;
    if (c.hamiltonian) {
      p.v = coherent_cancellation_drive(l, no_ll, {.cancel_hamiltonian = true}).v;
      c.coherent_drive = true;
    }
    c.norm = frobenius(effective_lindbladian_general(l, p).matrix());
    c.predicted_zero = !(c.hamiltonian && c.detectable);
    c.matches = c.predicted_zero ? c.norm <= tol * scale : c.norm > kNonzeroRatio * scale;
    rep.cells.push_back(c);
  }
  rep.pass = std::all_of(rep.cells.begin(), rep.cells.end(), [](const ObstructionCell& c) { return c.matches; });
  return rep;
}

}  // namespace ejof
