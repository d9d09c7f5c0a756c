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

#include "ejof/effective.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ejof {
namespace {

double identity_residual(const Matrix& lhs, const Matrix& rhs) {
  const double scale = std::max({lhs.norm(), rhs.norm(), 1.0});
  return (lhs - rhs).norm() / scale;
}

double perturbation_norm(const Perturbation& pert) {
  double s = pert.v.norm();
  for (const auto& f : pert.fs) s += f.norm();
  return s;
}

}  // namespace

Perturbation Perturbation::zero(Index dim, std::size_t jump_count) {
  return Perturbation{Operator::Zero(dim, dim), std::vector<Operator>(jump_count, Operator::Zero(dim, dim))};
}

Perturbation Perturbation::scaled(double s) const {
  Perturbation out{s * v, {}};
  out.fs.reserve(fs.size());
  for (const auto& f : fs) out.fs.push_back(s * f);
  return out;
}

void check_perturbation(const StructuredLindbladian& l, const Perturbation& pert, double tol) {
  require_same_dim(l.hamiltonian(), pert.v, "perturbation V");
  if (!is_hermitian(pert.v, tol)) throw ValidationError("perturbation: V is not Hermitian");
  if (pert.fs.size() != l.jumps().size()) {
    throw DimensionMismatch("perturbation: " + std::to_string(pert.fs.size()) +
                            " jump perturbations for " + std::to_string(l.jumps().size()) +
                            " unperturbed jumps (pad with zeros)");
  }
  for (const auto& f : pert.fs) require_same_dim(l.hamiltonian(), f, "perturbation f");
}

Operator effective_kamiltonian(const StructuredLindbladian& l, const Perturbation& pert) {
  check_perturbation(l, pert);
  const DfsProjector& dfs = l.dfs();
  Operator keff = four_corners(pert.v, dfs).off_diagonal();
  for (std::size_t i = 0; i < pert.fs.size(); ++i) {
    const Operator& big = l.jumps()[i];
    const Operator f_ul = four_corners(pert.fs[i], dfs).ul;
    keff -= 0.5 * kI * (big.adjoint() * f_ul + f_ul.adjoint() * big);
  }
  return keff;
}

PerturbationSuperops perturbation_superops(const StructuredLindbladian& l, const Perturbation& pert) {
  check_perturbation(l, pert);
  const DfsProjector& dfs = l.dfs();
  const Index dim = l.dim();
  const CorneredOperator vc = four_corners(pert.v, dfs);

  Operator shifted = vc.diagonal();
  Superoperator jump_cross(dim);
  Superoperator second(dim);
  for (std::size_t i = 0; i < pert.fs.size(); ++i) {
    const Operator& big = l.jumps()[i];
    const Operator& f = pert.fs[i];
    const Operator f_ur = four_corners(f, dfs).ur;
    shifted -= 0.5 * kI * (f_ur.adjoint() * big + big.adjoint() * f_ur);
    jump_cross += sandwich_superop(big, f.adjoint()) + sandwich_superop(f, big.adjoint());
    second += dissipator(f);
  }
  const Superoperator v_super = -kI * star_commutator_superop(shifted);
  const Superoperator keff_super = -kI * star_commutator_superop(effective_kamiltonian(l, pert));
  return {v_super + keff_super + jump_cross, second};
}

Superoperator restrict_to_dfs(const Superoperator& full, const DfsProjector& dfs) {
  const Matrix w = dfs.corner_embedding(Corner::kUpperLeft);
  return Superoperator(dfs.dfs_dim(), w.adjoint() * full.matrix() * w);
}

GeneralRouteTerms effective_lindbladian_general_terms(const StructuredLindbladian& l,
                                                      const Perturbation& pert) {
  const PerturbationSuperops ops = perturbation_superops(l, pert);
  const Superoperator& gen = l.generator();
  const Superoperator ld = drazin_inverse(gen);
  const Superoperator pinf = Superoperator::identity(l.dim()) - gen * ld;
  const Superoperator t1 = pinf * (ops.first_order + ops.second_order) * pinf;
  const Superoperator t2 = -1.0 * (pinf * ops.first_order * ld * ops.first_order * pinf);
  return {restrict_to_dfs(t1, l.dfs()), restrict_to_dfs(t2, l.dfs())};
}

Superoperator effective_lindbladian_general(const StructuredLindbladian& l, const Perturbation& pert) {
  return effective_lindbladian_general_terms(l, pert).total();
}

EffectiveLindbladian effective_lindbladian_closed(const StructuredLindbladian& l, const Perturbation& pert) {
  check_perturbation(l, pert);
  const DfsProjector& dfs = l.dfs();
  const Index dim = l.dim();
  const Index d = dfs.dfs_dim();
  const Kamiltonian k = kamiltonian(l);
  const Operator k_inv = kamiltonian_inverse(k);
  const Operator keff = effective_kamiltonian(l, pert);

  EffectiveLindbladian out{dfs, {}, {}, Superoperator(d), Operator::Zero(dim, dim), Superoperator(d)};

  const Operator half = 0.5 * (four_corners(pert.v, dfs).ul - keff * k_inv * keff);
  out.h_eff = half + half.adjoint();

  std::vector<Operator> f_ll;
  for (std::size_t i = 0; i < pert.fs.size(); ++i) {
    const CorneredOperator fc = four_corners(pert.fs[i], dfs);
    out.f_effs.push_back(fc.ul - l.jumps()[i] * k_inv * keff);
    out.cp_adjoint_identity += fc.ll.adjoint() * fc.ll;
    f_ll.push_back(fc.ll);
  }

  // E_eff column by column on the DFS matrix-unit basis.
  Matrix cp = Matrix::Zero(d * d, d * d);
  for (Index b = 0; b < d; ++b) {
    for (Index a = 0; a < d; ++a) {
      const Operator x = dfs.expand(Corner::kUpperLeft, matrix_unit(d, d, a, b));
      Operator sigma = Operator::Zero(dim, dim);
      for (const auto& g : f_ll) sigma += g * x * g.adjoint();
      if (sigma.norm() == 0.0) continue;
      const Operator rho = ksuper_inverse_apply(k, sigma);
      Operator y = Operator::Zero(dim, dim);
      for (const auto& big : l.jumps()) y -= big * rho * big.adjoint();
      cp.col(a + b * d) = vectorize(dfs.compress(Corner::kUpperLeft, y));
    }
  }
  out.cp_map = Superoperator(d, std::move(cp));
  out.generator = effective_to_superop(out);
  return out;
}

Superoperator effective_to_superop(const EffectiveLindbladian& e) {
  const DfsProjector& dfs = e.dfs;
  const Index d = dfs.dfs_dim();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix h = dfs.compress(Corner::kUpperLeft, e.h_eff);
  Superoperator gen = -kI * star_commutator_superop(h);
  for (const auto& f : e.f_effs) gen += dissipator(dfs.compress(Corner::kUpperLeft, f));
  if (e.cp_map.hilbert_dim() == d) gen += e.cp_map;
  const Matrix anti = dfs.compress(Corner::kUpperLeft, e.cp_adjoint_identity);
  gen -= 0.5 * (sandwich_superop(anti, id) + sandwich_superop(id, anti));
  return gen;
}

std::vector<Matrix> kraus_operators(const Superoperator& cp_map, double tol) {
  const Index d = cp_map.hilbert_dim();
  Matrix choi(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const Vector col = cp_map.matrix().col(i + j * d);
      for (Index a = 0; a < d; ++a) {
        for (Index b = 0; b < d; ++b) choi(i * d + a, j * d + b) = col(a + b * d);
      }
    }
  }
  const Matrix herm = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  std::vector<Matrix> kraus;
  const double scale = std::max(1.0, herm.norm());
  for (Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda <= tol * scale) break;
    const Vector v = std::sqrt(lambda) * es.eigenvectors().col(k);
    kraus.emplace_back(Eigen::Map<const Matrix>(v.data(), d, d));
  }
  return kraus;
}

// ---------------------------------------------------------------------------

EquivalenceReport verify_equivalence(const StructuredLindbladian& l, const Perturbation& pert, double tol) {
  const Superoperator general = effective_lindbladian_general(l, pert);
  const Superoperator closed = effective_lindbladian_closed(l, pert).generator;
  EquivalenceReport r;
  r.general_norm = general.matrix().norm();
  r.closed_norm = closed.matrix().norm();
  r.residual = (general.matrix() - closed.matrix()).norm() / std::max(r.general_norm, kResidualFloor);
  r.tolerance = tol;
  r.pass = r.residual <= tol;
  return r;
}

double IdentityReport::worst() const {
  return std::max({cp_adjoint_identity, off_diagonal_inverse, kamiltonian_inverse, effective_jump_norm});
}

IdentityReport identity_suite(const StructuredLindbladian& l, const Perturbation& pert, double tol) {
  const DfsProjector& dfs = l.dfs();
  const Index d = dfs.dfs_dim();
  const Index n = dfs.decay_dim();
  const Kamiltonian k = kamiltonian(l);
  const Operator k_inv = kamiltonian_inverse(k);
  const Operator keff = effective_kamiltonian(l, pert);
  const EffectiveLindbladian eff = effective_lindbladian_closed(l, pert);
  IdentityReport r;

  const Matrix from_map = devectorize(eff.cp_map.adjoint().matrix() * vectorize(Matrix::Identity(d, d)));
  r.cp_adjoint_identity = identity_residual(from_map, dfs.compress(Corner::kUpperLeft, eff.cp_adjoint_identity));

  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Operator ur = dfs.expand(Corner::kUpperRight, matrix_unit(d, n, i, j));
      const Operator ll = dfs.expand(Corner::kLowerLeft, matrix_unit(n, d, j, i));
      for (const Operator& sigma : {ur, ll}) {
        const Operator solved = ksuper_inverse_apply(k, sigma);
        const Operator formula = kI * star_commutator(k_inv, sigma);
        r.off_diagonal_inverse = std::max(r.off_diagonal_inverse, identity_residual(solved, formula));
      }
    }
  }

  Operator lhs = Operator::Zero(l.dim(), l.dim());
  for (const auto& f : l.jumps()) lhs += k_inv.adjoint() * f.adjoint() * f * k_inv;
  r.kamiltonian_inverse = identity_residual(lhs, -kI * (k_inv - k_inv.adjoint()));

  Operator jumps = Operator::Zero(l.dim(), l.dim());
  for (std::size_t i = 0; i < pert.fs.size(); ++i) {
    const Operator f_ul = four_corners(pert.fs[i], dfs).ul;
    jumps += eff.f_effs[i].adjoint() * eff.f_effs[i] - f_ul.adjoint() * f_ul;
  }
  const Operator kk = keff * k_inv * keff;
  r.effective_jump_norm = identity_residual(jumps, -kI * (kk - kk.adjoint()));

  r.tolerance = tol;
  r.pass = r.worst() <= tol;
  return r;
}

CornerSensitivityReport corner_sensitivity(const StructuredLindbladian& l, const Perturbation& pert, double tol) {
  const DfsProjector& dfs = l.dfs();
  const Superoperator base = effective_lindbladian_general(l, pert);

  Perturbation no_lr = pert;
  no_lr.v -= four_corners(pert.v, dfs).lr;
  for (auto& f : no_lr.fs) f -= four_corners(f, dfs).lr;
  Perturbation no_right = no_lr;
  for (auto& f : no_right.fs) f -= four_corners(f, dfs).ur;

  const Superoperator a = effective_lindbladian_general(l, no_lr);
  const Superoperator b = effective_lindbladian_general(l, no_right);
  const double s = perturbation_norm(pert);
  const double scale = std::max({base.matrix().norm(), s * s, kResidualFloor});

  CornerSensitivityReport r;
  r.without_lower_right = (a.matrix() - base.matrix()).norm() / scale;
  r.without_right_column = (b.matrix() - base.matrix()).norm() / scale;
  r.tolerance = tol;
  r.pass = r.without_lower_right <= tol && r.without_right_column <= tol;
  return r;
}

}  // namespace ejof
