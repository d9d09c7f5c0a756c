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

#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "ejof/lindblad.hpp"
#include "ejof/random.hpp"
#include "ejof/schur.hpp"
#include "support/oracles.hpp"

namespace ejof {
namespace {

DfsProjector first_two(Index dim) {
  const std::array<Index, 2> idx{0, 1};
  return DfsProjector::from_basis(dim, idx);
}

TEST(Assemble, MatchesEntrywiseOracle) {
  Rng rng(11);
  const Operator h = random_hermitian(rng, 4);
  const std::vector<Operator> jumps{random_complex_matrix(rng, 4, 4), random_complex_matrix(rng, 4, 4)};
  const Superoperator l = assemble_lindbladian(h, jumps);
  EXPECT_LT(frobenius(l.matrix() - oracle::lindbladian_matrix(h, jumps)), 1e-11);
}

TEST(Assemble, RejectsNonHermitianHamiltonian) {
  Rng rng(12);
  EXPECT_THROW(assemble_lindbladian(random_complex_matrix(rng, 3, 3), {}), ValidationError);
}

TEST(Assemble, TracePreserving) {
  const StructuredLindbladian l = random_structured_lindbladian({2, 3, 2, true}, 13);
  // vec(I)^dag L = 0
  const Vector id = vectorize(Operator::Identity(5, 5));
  EXPECT_LT((id.adjoint() * l.generator().matrix()).norm(), 1e-11);
}

TEST(Structure, RandomInstancePasses) {
  const StructuredLindbladian l = random_structured_lindbladian({2, 4, 1, true}, 14);
  const StructureReport r = validate_structure(l);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.steady_multiplicity, 4);
  EXPECT_EQ(r.expected_multiplicity, 4);
}

TEST(Structure, DetectsHamiltonianOnDfs) {
  Operator h = Operator::Zero(3, 3);
  h(0, 0) = 1.0;
  Operator f = Operator::Zero(3, 3);
  f(0, 2) = 1.0;
  const StructuredLindbladian l(h, {f}, first_two(3));
  const StructureReport r = validate_structure(l);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.find("hamiltonian_acts_on_decaying_block")->pass);
}

TEST(Structure, DetectsRaisingJump) {
  Operator f = Operator::Zero(3, 3);
  f(0, 2) = 1.0;
  f(2, 1) = 0.3;
  const StructuredLindbladian l(Operator::Zero(3, 3), {f}, first_two(3));
  const StructureReport r = validate_structure(l);
  EXPECT_FALSE(r.find("jump_0_maps_decay_into_dfs")->pass);
  EXPECT_FALSE(r.pass());
}

TEST(Structure, DetectsExtraSteadyStates) {
  // Two decaying states but only one decays.
  Operator f = Operator::Zero(4, 4);
  f(0, 2) = 1.0;
  const StructuredLindbladian l(Operator::Zero(4, 4), {f}, first_two(4));
  const StructureReport r = validate_structure(l);
  EXPECT_FALSE(r.find("unique_steady_subspace")->pass);
  EXPECT_GT(r.steady_multiplicity, r.expected_multiplicity);
}

TEST(Structure, StrictConstructionThrows) {
  Operator h = Operator::Zero(3, 3);
  h(0, 0) = 1.0;
  Operator f = Operator::Zero(3, 3);
  f(0, 2) = 1.0;
  EXPECT_THROW(StructuredLindbladian(h, {f}, first_two(3), true), ValidationError);
}

TEST(Schur, ReorderKeepsFactorization) {
  Rng rng(15);
  const Matrix a = random_complex_matrix(rng, 6, 6);
  ComplexSchurForm form = complex_schur(a);
  const Eigen::VectorXcd before = form.triangular.diagonal();
  const Complex a3 = before(3);
  const Complex a5 = before(5);
  const Index moved = reorder_schur(form, [&](Complex z) { return z == a3 || z == a5; });
  EXPECT_EQ(moved, 2);
  EXPECT_LT(frobenius(form.unitary * form.triangular * form.unitary.adjoint() - a), 1e-12);
  EXPECT_LT(frobenius(form.unitary.adjoint() * form.unitary - Matrix::Identity(6, 6)), 1e-13);
  EXPECT_LT(frobenius(Matrix(form.triangular.triangularView<Eigen::StrictlyLower>())), 1e-14);
  const Complex t0 = form.triangular(0, 0);
  const Complex t1 = form.triangular(1, 1);
  EXPECT_LT(std::min(std::abs(t0 - a3), std::abs(t0 - a5)), 1e-12);
  EXPECT_LT(std::min(std::abs(t1 - a3), std::abs(t1 - a5)), 1e-12);
  EXPECT_GT(std::abs(t0 - t1), 1e-6);
}

TEST(Drazin, DefiningEquations) {
  const StructuredLindbladian l = random_structured_lindbladian({2, 3, 2, true}, 16);
  const Matrix s = l.generator().matrix();
  const DrazinResult r = drazin(l.generator());
  const Matrix& x = r.inverse.matrix();
  const double scale = frobenius(x);
  EXPECT_LT(frobenius(x * s * x - x) / scale, 1e-10);
  EXPECT_LT(frobenius(s * x - x * s) / scale, 1e-10);
  EXPECT_LT(frobenius(s * s * x - s) / frobenius(s), 1e-10);
  EXPECT_EQ(r.kernel_dim, 4);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Drazin, MatchesProjectorOracle) {
  for (std::uint64_t seed : {17u, 18u, 19u}) {
    const StructuredLindbladian l = random_structured_lindbladian({2, 4, 2, true}, seed);
    const Matrix s = l.generator().matrix();
    const Matrix p0 = oracle::spectral_projector(s, 4);
    EXPECT_LT(relative_residual(drazin_inverse(l.generator()).matrix(), oracle::drazin_from_projector(s, p0)), 1e-9);
  }
}

TEST(Drazin, JordanKamiltonian) {
  const StructuredLindbladian l = jordan_structured_lindbladian({2, 3, 2, true}, 20);
  const Matrix s = l.generator().matrix();
  const Matrix p_inf = oracle::taylor_exp(s, 40.0 / slowest_decay_rate(l.generator()));
  const Matrix expected = oracle::drazin_from_projector(s, p_inf);
  EXPECT_LT(relative_residual(drazin_inverse(l.generator()).matrix(), expected), 1e-8);
}

TEST(Drazin, NonSemisimpleZeroThrows) {
  Matrix n = Matrix::Zero(4, 4);
  n(0, 1) = 1.0;
  n(2, 2) = -1.0;
  n(3, 3) = -2.0;
  EXPECT_THROW(drazin(Superoperator(2, n)), NumericalFailure);
}

TEST(Drazin, InvertibleInputGivesInverse) {
  Rng rng(21);
  const Matrix a = random_complex_matrix(rng, 4, 4) + 5.0 * Matrix::Identity(4, 4);
  const DrazinResult r = drazin(Superoperator(2, a));
  EXPECT_EQ(r.kernel_dim, 0);
  EXPECT_LT(relative_residual(r.inverse.matrix(), a.inverse()), 1e-12);
}

TEST(AsymptoticProjection, ThreeRoutesAgree) {
  for (std::uint64_t seed : {22u, 23u}) {
    const StructuredLindbladian l = random_structured_lindbladian({2, 3, 2, true}, seed);
    const Matrix drazin_route = asymptotic_projection(l.generator()).matrix();
    const Matrix analytic = asymptotic_projection_analytic(l).matrix();
    const Matrix long_time = oracle::taylor_exp(l.generator().matrix(), 40.0 / slowest_decay_rate(l.generator()));
    EXPECT_LT(frobenius(drazin_route - analytic), 1e-8);
    EXPECT_LT(frobenius(drazin_route - long_time), 1e-8);
    EXPECT_LT(frobenius(analytic * analytic - analytic), 1e-10);
  }
}

TEST(AsymptoticProjection, OutputIsSteadyAndTracePreserving) {
  Rng rng(24);
  const StructuredLindbladian l = random_structured_lindbladian({2, 3, 1, true}, 25);
  const Superoperator p = asymptotic_projection_analytic(l);
  const Matrix g = random_complex_matrix(rng, 5, 5);
  const Operator rho = g * g.adjoint() / (g * g.adjoint()).trace();
  const Operator out = p.apply(rho);
  EXPECT_LT(frobenius(l.generator().apply(out)), 1e-11);
  EXPECT_LT(std::abs(out.trace() - 1.0), 1e-12);
  EXPECT_LT(frobenius(out - l.dfs().dfs_identity() * out * l.dfs().dfs_identity()), 1e-12);
}

TEST(Kamiltonian, SingularBlockThrows) {
  Operator f = Operator::Zero(4, 4);
  f(0, 2) = 1.0;
  const StructuredLindbladian l(Operator::Zero(4, 4), {f}, first_two(4));
  EXPECT_THROW(kamiltonian_inverse(kamiltonian(l)), NumericalFailure);
}

TEST(Kamiltonian, SuperInverseSolvesEachCorner) {
  Rng rng(26);
  const StructuredLindbladian l = random_structured_lindbladian({2, 3, 2, true}, 27);
  const Kamiltonian k = kamiltonian(l);
  const Superoperator ks = ksuper(k);
  const Matrix g = random_complex_matrix(rng, 5, 5);
  const Operator sigma = g - four_corners(g, l.dfs()).ul;
  const Operator rho = ksuper_inverse_apply(k, sigma);
  EXPECT_LT(frobenius(ks.apply(rho) - sigma) / frobenius(sigma), 1e-12);
  EXPECT_THROW(ksuper_inverse_apply(k, Operator::Identity(5, 5)), ValidationError);
}

TEST(Kamiltonian, MatchesDefinition) {
  const StructuredLindbladian l = random_structured_lindbladian({2, 2, 2, true}, 28);
  Operator expected = l.hamiltonian();
  for (const auto& f : l.jumps()) expected -= Complex(0.0, 0.5) * f.adjoint() * f;
  EXPECT_LT(frobenius(kamiltonian(l).matrix() - expected), 1e-14);
}

TEST(Exponential, AgreesWithTaylorOracle) {
  const StructuredLindbladian l = random_structured_lindbladian({1, 2, 1, true}, 29);
  const Matrix ours = superop_exp(l.generator(), 0.7).matrix();
  EXPECT_LT(relative_residual(ours, oracle::taylor_exp(l.generator().matrix(), 0.7)), 1e-12);
  EXPECT_THROW(superop_exp(l.generator(), -1.0), std::invalid_argument);
}

}  // namespace
}  // namespace ejof
