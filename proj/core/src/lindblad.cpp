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

#include "ejof/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "ejof/schur.hpp"

namespace ejof {
namespace {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Vector eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues();
}

Check make_check(std::string name, double residual, double tolerance) {
  return Check{std::move(name), residual, tolerance, residual <= tolerance};
}

// Solve A x = b with LU and refuse near-singular systems.
Vector solve_checked(const Matrix& a, const Vector& b, const char* what) {
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream os;
    os << what << ": singular linear system (rcond = " << rcond << ")";
    throw NumericalFailure(os.str());
  }
  return lu.solve(b);
}

}  // namespace

Superoperator assemble_lindbladian(const Operator& hamiltonian, const std::vector<Operator>& jumps,
                                   double tol) {
  require_square(hamiltonian, "assemble_lindbladian");
  if (!is_hermitian(hamiltonian, tol)) {
    throw ValidationError("assemble_lindbladian: Hamiltonian is not Hermitian");
  }
  Superoperator l = -kI * star_commutator_superop(hamiltonian);
  for (const auto& f : jumps) {
    require_same_dim(hamiltonian, f, "assemble_lindbladian");
    l += dissipator(f);
  }
  return l;
}

bool StructureReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* StructureReport::find(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

StructuredLindbladian::StructuredLindbladian(Operator hamiltonian, std::vector<Operator> jumps,
                                             DfsProjector dfs, bool strict, double tol)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)), dfs_(std::move(dfs)) {
  if (hamiltonian_.rows() != dfs_.dim()) {
    throw DimensionMismatch("StructuredLindbladian: Hamiltonian dimension " +
                            std::to_string(hamiltonian_.rows()) + " does not match DFS projector " +
                            std::to_string(dfs_.dim()));
  }
  generator_ = assemble_lindbladian(hamiltonian_, jumps_, tol);
  if (strict) {
    const StructureReport report = validate_structure(*this, tol);
    for (const auto& c : report.checks) {
      if (!c.pass) {
        throw ValidationError("StructuredLindbladian: structural check '" + c.name +
                              "' failed (residual " + std::to_string(c.residual) + ")");
      }
    }
  }
}

StructureReport validate_structure(const StructuredLindbladian& l, double tol) {
  StructureReport report;
  const DfsProjector& dfs = l.dfs();
  const Operator& h = l.hamiltonian();

  report.checks.push_back(make_check("hamiltonian_hermitian", (h - h.adjoint()).norm(),
                                     tol * std::max(1.0, h.norm())));
  const CorneredOperator hc = four_corners(h, dfs);
  report.checks.push_back(make_check("hamiltonian_acts_on_decaying_block", (h - hc.lr).norm(),
                                     tol * std::max(1.0, h.norm())));
  for (std::size_t i = 0; i < l.jumps().size(); ++i) {
    const Operator& f = l.jumps()[i];
    const CorneredOperator fc = four_corners(f, dfs);
    report.checks.push_back(make_check("jump_" + std::to_string(i) + "_maps_decay_into_dfs",
                                       (f - fc.ur).norm(), tol * std::max(1.0, f.norm())));
  }

  const Superoperator& gen = l.generator();
  const double gen_norm = std::max(1.0, gen.matrix().norm());
  double steady = 0.0;
  const Index d = dfs.dfs_dim();
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const Operator e = dfs.expand(Corner::kUpperLeft, matrix_unit(d, d, i, j));
      steady = std::max(steady, gen.apply(e).norm());
    }
  }
  report.checks.push_back(make_check("dfs_is_steady", steady, tol * gen_norm));

  const DrazinOptions opts;
  const double thr = opts.zero_threshold * spectral_norm(gen.matrix());
  const Vector ev = eigenvalues(gen.matrix());
  Index zeros = 0;
  for (Index i = 0; i < ev.size(); ++i) zeros += (std::abs(ev(i)) <= thr) ? 1 : 0;
  report.steady_multiplicity = zeros;
  report.expected_multiplicity = d * d;
  report.checks.push_back(make_check("unique_steady_subspace",
                                     static_cast<double>(std::abs(zeros - d * d)), 0.0));
  return report;
}

// ---------------------------------------------------------------------------

DrazinResult drazin(const Superoperator& s, const DrazinOptions& options) {
  const Matrix& a = s.matrix();
  const Index n = a.rows();
  const Index hdim = s.hilbert_dim();
  DrazinResult result;
  const double norm2 = spectral_norm(a);
  result.zero_threshold = options.zero_threshold * norm2;

  if (norm2 == 0.0) {
    result.inverse = Superoperator(hdim);
    result.kernel_projector = Superoperator::identity(hdim);
    result.kernel_dim = n;
    result.smallest_nonzero = std::numeric_limits<double>::infinity();
    return result;
  }

  ComplexSchurForm form = complex_schur(a);
  const double thr = result.zero_threshold;
  const Index k = reorder_schur(form, [thr](Complex z) { return std::abs(z) < thr; });
  const Index m = n - k;
  const Matrix& t = form.triangular;
  const Matrix& u = form.unitary;

  result.kernel_dim = k;
  result.nilpotent_residual = t.topLeftCorner(k, k).norm();
  if (result.nilpotent_residual > thr) {
    std::ostringstream os;
    os << "drazin: zero eigenvalue is not semisimple (nilpotent block of norm "
       << result.nilpotent_residual << " exceeds threshold " << thr << ")";
    throw NumericalFailure(os.str());
  }

  result.smallest_nonzero = std::numeric_limits<double>::infinity();
  for (Index j = k; j < n; ++j) result.smallest_nonzero = std::min(result.smallest_nonzero, std::abs(t(j, j)));
  if (m > 0 && result.smallest_nonzero < options.gap_factor * thr) {
    std::ostringstream os;
    os << "ill-conditioned spectral separation: smallest nonzero |lambda| = " << result.smallest_nonzero
       << " is within a factor " << options.gap_factor << " of the zero threshold " << thr;
    result.warnings.push_back(os.str());
  }

  // With T = [[0, X], [0, B]] and B invertible, T^D = [[0, X B^-2], [0, B^-1]].
  const Matrix b_inv = t.bottomRightCorner(m, m).triangularView<Eigen::Upper>().solve(Matrix::Identity(m, m));
  const Matrix x_binv = t.topRightCorner(k, m) * b_inv;
  Matrix td = Matrix::Zero(n, n);
  td.topRightCorner(k, m) = x_binv * b_inv;
  td.bottomRightCorner(m, m) = b_inv;
  Matrix p0 = Matrix::Zero(n, n);
  p0.topLeftCorner(k, k).setIdentity();
  p0.topRightCorner(k, m) = -x_binv;

  result.inverse = Superoperator(hdim, u * td * u.adjoint());
  result.kernel_projector = Superoperator(hdim, u * p0 * u.adjoint());
  return result;
}

Superoperator drazin_inverse(const Superoperator& s, const DrazinOptions& options) {
  return drazin(s, options).inverse;
}

Superoperator asymptotic_projection(const Superoperator& l, const DrazinOptions& options) {
  const Superoperator ld = drazin_inverse(l, options);
  return Superoperator::identity(l.hilbert_dim()) - l * ld;
}

Superoperator asymptotic_projection_analytic(const StructuredLindbladian& l) {
  const DfsProjector& dfs = l.dfs();
  Superoperator p = corner_projection(Corner::kUpperLeft, dfs);
  if (dfs.decay_dim() == 0) return p;

  const Kamiltonian k = kamiltonian(l);
  const Matrix block = ksuper_decay_block(k);
  Eigen::PartialPivLU<Matrix> lu(block);
  if (!(lu.rcond() > 1e-14)) {
    throw NumericalFailure("asymptotic_projection_analytic: Kamiltonian superoperator is singular on the "
                           "decaying block");
  }
  const Matrix w = dfs.corner_embedding(Corner::kLowerRight);
  const Superoperator k_inv(dfs.dim(), w * lu.inverse() * w.adjoint());
  Superoperator recycle(dfs.dim());
  for (const auto& f : l.jumps()) recycle += sandwich_superop(f, f.adjoint());
  return p - recycle * k_inv;
}

double slowest_decay_rate(const Superoperator& l, const DrazinOptions& options) {
  const double thr = options.zero_threshold * spectral_norm(l.matrix());
  const Vector ev = eigenvalues(l.matrix());
  double rate = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) >= thr) rate = std::min(rate, std::abs(ev(i).real()));
  }
  return rate;
}

// ---------------------------------------------------------------------------

Kamiltonian kamiltonian(const StructuredLindbladian& l) {
  Operator k = l.hamiltonian();
  for (const auto& f : l.jumps()) k -= 0.5 * kI * (f.adjoint() * f);
  return Kamiltonian(std::move(k), l.dfs());
}

Operator kamiltonian_inverse(const Kamiltonian& k) {
  const Matrix block = k.block();
  const Index n = block.rows();
  if (n == 0) return Operator::Zero(k.dfs().dim(), k.dfs().dim());
  const Vector ev = eigenvalues(block);
  Index smallest = 0;
  for (Index i = 1; i < n; ++i) {
    if (std::abs(ev(i)) < std::abs(ev(smallest))) smallest = i;
  }
  if (std::abs(ev(smallest)) <= 1e-12 * std::max(1.0, block.norm())) {
    std::ostringstream os;
    os << "kamiltonian_inverse: K is singular on the decaying block (eigenvalue " << ev(smallest)
       << " vanishes)";
    throw NumericalFailure(os.str());
  }
  return k.dfs().expand(Corner::kLowerRight, block.partialPivLu().inverse());
}

Superoperator ksuper(const Kamiltonian& k) { return -kI * star_commutator_superop(k.matrix()); }

Matrix ksuper_decay_block(const Kamiltonian& k) {
  const Matrix block = k.block();
  const Matrix id = Matrix::Identity(block.rows(), block.cols());
  return -kI * (Eigen::kroneckerProduct(id, block).eval() -
                Eigen::kroneckerProduct(block.conjugate(), id).eval());
}

Operator ksuper_inverse_apply(const Kamiltonian& k, const Operator& sigma) {
  const DfsProjector& dfs = k.dfs();
  const CorneredOperator sc = four_corners(sigma, dfs);
  if (sc.ul.norm() > kDefaultTol * std::max(1.0, sigma.norm())) {
    throw ValidationError("ksuper_inverse_apply: sigma has a DFS component, where K(.) vanishes");
  }
  Operator rho = Operator::Zero(dfs.dim(), dfs.dim());

  const Matrix lr = dfs.compress(Corner::kLowerRight, sigma);
  if (lr.size() > 0 && lr.norm() > 0.0) {
    const Vector x = solve_checked(ksuper_decay_block(k), vectorize(lr), "ksuper_inverse_apply");
    rho += dfs.expand(Corner::kLowerRight, Eigen::Map<const Matrix>(x.data(), lr.rows(), lr.cols()));
  }

  const Matrix full = ksuper(k).matrix();
  for (Corner c : {Corner::kUpperRight, Corner::kLowerLeft}) {
    const Matrix block = dfs.compress(c, sigma);
    if (block.size() == 0 || block.norm() == 0.0) continue;
    const Matrix w = dfs.corner_embedding(c);
    const Vector x = solve_checked(w.adjoint() * full * w, vectorize(block), "ksuper_inverse_apply");
    rho += dfs.expand(c, Eigen::Map<const Matrix>(x.data(), block.rows(), block.cols()));
  }
  return rho;
}

// ---------------------------------------------------------------------------

Superoperator superop_exp(const Superoperator& s, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("superop_exp: time must be nonnegative");
  const Matrix scaled = t * s.matrix();
  return Superoperator(s.hilbert_dim(), scaled.exp());
}

Operator matrix_exp_apply(const Superoperator& s, double t, const Operator& rho) {
  return superop_exp(s, t).apply(rho);
}

}  // namespace ejof
