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

#include "ejof/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "ejof/random.hpp"

namespace ejof {
namespace {

constexpr int kMaxDraws = 8;
constexpr double kSurjectivityTol = 1e-10;

DfsProjector leading_dfs(Index dim, Index d) {
  std::vector<Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), Index{0});
  return DfsProjector::from_basis(dim, idx);
}

double perturbation_scale(const Perturbation& p) {
  double s = p.v.squaredNorm();
  for (const auto& f : p.fs) s += f.squaredNorm();
  return s;
}

}  // namespace

std::pair<StructuredLindbladian, Perturbation> three_level_system(const ThreeLevelParams& p) {
  if (!(p.Gamma > 0.0) || !(p.gamma >= 0.0)) {
    throw ValidationError("three_level_system: need Gamma > 0 and gamma >= 0");
  }
  Operator h = Operator::Zero(3, 3);
  h(2, 2) = p.delta;
  Operator f_big = Operator::Zero(3, 3);
  f_big(0, 2) = std::sqrt(p.Gamma);
  const std::array<Index, 2> dfs_idx{0, 1};
  StructuredLindbladian l(std::move(h), {f_big}, DfsProjector::from_basis(3, dfs_idx));
  Vector one = Vector::Zero(2);
  one(1) = 1.0;
  return {std::move(l), generalized_three_level(one, p.gamma)};
}

Perturbation generalized_three_level(const Vector& psi, double gamma) {
  if (psi.size() != 2) throw DimensionMismatch("generalized_three_level: psi must be a DFS 2-vector");
  if (std::abs(psi.norm() - 1.0) > 1e-12) throw ValidationError("generalized_three_level: psi must be normalized");
  Operator f = Operator::Zero(3, 3);
  f.block(0, 0, 1, 2) = std::sqrt(gamma) * psi.adjoint();
  return Perturbation{Operator::Zero(3, 3), {f}};
}

Complex three_level_effective_amplitude(const ThreeLevelParams& p) {
  return std::sqrt(p.gamma) * p.delta / Complex(p.delta, -p.Gamma / 2.0);
}

Matrix hermitian_pseudo_inverse(const Matrix& a, double rel_tol) {
  require_square(a, "hermitian_pseudo_inverse");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()));
  const Eigen::VectorXd& w = es.eigenvalues();
  const double cut = rel_tol * (w.size() ? w.cwiseAbs().maxCoeff() : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    if (std::abs(w(i)) > cut) inv(i) = 1.0 / w(i);
  }
  const Matrix& u = es.eigenvectors();
  return u * inv.asDiagonal() * u.adjoint();
}

double surjectivity_residual(const Operator& f, const DfsProjector& dfs) {
  const Matrix fur = dfs.compress(Corner::kUpperRight, f);
  const Matrix proj = fur * hermitian_pseudo_inverse(fur.adjoint() * fur) * fur.adjoint();
  return frobenius(proj - Matrix::Identity(dfs.dfs_dim(), dfs.dfs_dim()));
}

double orthogonality_residual(const std::vector<Operator>& jumps) {
  double worst = 0.0;
  for (std::size_t a = 0; a < jumps.size(); ++a) {
    for (std::size_t b = 0; b < jumps.size(); ++b) {
      if (a == b) continue;
      const double scale = frobenius(jumps[a]) * frobenius(jumps[b]);
      if (scale == 0.0) continue;
      worst = std::max(worst, frobenius(jumps[a] * jumps[b].adjoint()) / scale);
    }
  }
  return worst;
}

Operator random_surjective_jump(Index d, Index n, std::uint64_t seed) {
  if (d < 1) throw DimensionMismatch("random_surjective_jump: DFS dimension must be positive");
  if (n < d) throw DimensionMismatch("random_surjective_jump: need N >= d for a surjective jump");
  return random_orthogonal_family(d, {n}, seed).front();
}

std::vector<Operator> random_orthogonal_family(Index d, const std::vector<Index>& blocks, std::uint64_t seed,
                                               Index decay_dim) {
  if (d < 1) throw DimensionMismatch("random_orthogonal_family: DFS dimension must be positive");
  const Index total = std::accumulate(blocks.begin(), blocks.end(), Index{0});
  for (Index nb : blocks) {
    if (nb < d) throw DimensionMismatch("random_orthogonal_family: every block needs N_l >= d");
  }
  if (decay_dim > 0 && total > decay_dim) {
    throw DimensionMismatch("random_orthogonal_family: blocks exceed the decaying dimension");
  }
  const Index n = std::max(total, decay_dim);
  const Index dim = d + n;
  const DfsProjector dfs = leading_dfs(dim, d);
  Rng rng(seed);
  std::vector<Operator> family;
  Index offset = d;
  for (Index nb : blocks) {
    Operator f;
    int draw = 0;
    for (; draw < kMaxDraws; ++draw) {
      f = Operator::Zero(dim, dim);
      f.block(0, offset, d, nb) = random_complex_matrix(rng, d, nb);
      if (surjectivity_residual(f, dfs) <= kSurjectivityTol) break;
    }
    if (draw == kMaxDraws) throw NumericalFailure("random_orthogonal_family: no surjective draw after 8 attempts");
    family.push_back(std::move(f));
    offset += nb;
  }
  return family;
}

CancellationReport cancellation_check(const StructuredLindbladian& l, const Perturbation& pert, double tol) {
  check_perturbation(l, pert);
  const DfsProjector& dfs = l.dfs();
  CancellationReport r;
  r.tolerance = tol;
  r.perturbation_scale = perturbation_scale(pert);

  auto add = [&r](std::string name, double residual, double limit) {
    r.preconditions.push_back(Check{std::move(name), residual, limit, residual <= limit});
  };
  add("hamiltonian_zero", frobenius(l.hamiltonian()), tol);
  add("no_drive", frobenius(pert.v), tol);
  for (std::size_t i = 0; i < l.jumps().size(); ++i) {
    add("jump_" + std::to_string(i) + "_surjective", surjectivity_residual(l.jumps()[i], dfs), kSurjectivityTol);
  }
  add("jumps_orthogonal", orthogonality_residual(l.jumps()), tol);
  for (std::size_t i = 0; i < pert.fs.size(); ++i) {
    const double fll = frobenius(four_corners(pert.fs[i], dfs).ll);
    add("perturbation_" + std::to_string(i) + "_stays_in_dfs", fll, tol * std::max(1.0, frobenius(pert.fs[i])));
  }
  r.preconditions_hold = std::all_of(r.preconditions.begin(), r.preconditions.end(),
                                     [](const Check& c) { return c.pass; });

  const Superoperator general = effective_lindbladian_general(l, pert);
  r.general_norm = frobenius(general.matrix());
  try {
    const EffectiveLindbladian closed = effective_lindbladian_closed(l, pert);
    r.closed_norm = frobenius(closed.generator.matrix());
    for (const auto& fe : closed.f_effs) r.max_effective_jump_norm = std::max(r.max_effective_jump_norm, frobenius(fe));
  } catch (const NumericalFailure&) {
    r.closed_norm = std::numeric_limits<double>::quiet_NaN();
    r.max_effective_jump_norm = std::numeric_limits<double>::quiet_NaN();
  }
  r.cancelled = r.general_norm <= tol * std::max(r.perturbation_scale, kResidualFloor);
  return r;
}

Perturbation coherent_cancellation_drive(const StructuredLindbladian& l, const Perturbation& pert,
                                         const CoherentDriveOptions& options) {
  check_perturbation(l, pert);
  const DfsProjector& dfs = l.dfs();
  const Index dim = l.dim();
  Operator m = Operator::Zero(dim, dim);
  Operator interference = Operator::Zero(dim, dim);
  for (std::size_t i = 0; i < pert.fs.size(); ++i) {
    const Operator& f = pert.fs[i];
    const Operator& big = l.jumps()[i];
    const CorneredOperator c = four_corners(f, dfs);
    if (frobenius(c.ll) > kDefaultTol * std::max(1.0, frobenius(f))) {
      throw ValidationError("coherent_cancellation_drive: perturbation " + std::to_string(i) +
                            " maps out of the DFS (nonzero ll corner)");
    }
    m += hermitian_pseudo_inverse(big.adjoint() * big) * big.adjoint() * c.ul;
    interference += big.adjoint() * f - f.adjoint() * big;
  }
  const Kamiltonian k = kamiltonian(l);
  kamiltonian_inverse(k);  // throws on a singular K

  const Operator km = k.matrix() * m;
  Operator v = Complex(0.0, 0.5) * interference + km + km.adjoint();
  if (options.cancel_hamiltonian) v += m.adjoint() * l.hamiltonian() * m;

  if (!is_hermitian(v, 1e-12)) {
    throw NumericalFailure("coherent_cancellation_drive: constructed drive is not Hermitian");
  }
  return Perturbation{0.5 * (v + v.adjoint()), pert.fs};
}

UniversalReport universal_dissipation(const StructuredLindbladian& l, const Operator& target_h,
                                      const std::vector<Operator>& target_jumps, double tol) {
  const DfsProjector& dfs = l.dfs();
  const Index d = dfs.dfs_dim();
  if (target_jumps.size() > l.jumps().size()) {
    throw ValidationError("universal_dissipation: " + std::to_string(target_jumps.size()) + " targets need as many "
                          "unperturbed jumps, have " + std::to_string(l.jumps().size()));
  }
  if (target_h.rows() != d || target_h.cols() != d) {
    throw DimensionMismatch("universal_dissipation: target Hamiltonian must be d x d");
  }
  for (const auto& t : target_jumps) {
    if (t.rows() != d || t.cols() != d) throw DimensionMismatch("universal_dissipation: target jumps must be d x d");
  }
  if (!is_hermitian(target_h)) throw ValidationError("universal_dissipation: target Hamiltonian is not Hermitian");

  UniversalReport r;
  r.tolerance = tol;
  Perturbation p = Perturbation::zero(l.dim(), l.jumps().size());
  for (std::size_t i = 0; i < target_jumps.size(); ++i) p.fs[i] = dfs.expand(Corner::kUpperLeft, target_jumps[i]);
  Operator interference = Operator::Zero(l.dim(), l.dim());
  for (std::size_t i = 0; i < p.fs.size(); ++i) {
    const Operator& big = l.jumps()[i];
    interference += big.adjoint() * p.fs[i] - p.fs[i].adjoint() * big;
  }
  p.v = dfs.expand(Corner::kUpperLeft, target_h) + Complex(0.0, 0.5) * interference;
  p.v = 0.5 * (p.v + p.v.adjoint());

  r.target = assemble_lindbladian(target_h, target_jumps);
  r.achieved = effective_lindbladian_general(l, p);
  r.residual = relative_residual(r.achieved.matrix(), r.target.matrix());
  r.surjectivity = 0.0;
  for (const auto& big : l.jumps()) r.surjectivity = std::max(r.surjectivity, surjectivity_residual(big, dfs));
  r.orthogonality = orthogonality_residual(l.jumps());
  r.pass = r.residual <= tol;
  r.perturbation = std::move(p);
  return r;
}

std::vector<Operator> pauli_targets(double scale) {
  Operator lower = Operator::Zero(2, 2);
  lower(0, 1) = scale;
  Operator z = Operator::Zero(2, 2);
  z(0, 0) = 0.5 * scale;
  z(1, 1) = -0.5 * scale;
  return {lower, z, Operator(lower.adjoint())};
}

}  // namespace ejof
