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

#include "ejof/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>

namespace ejof {
namespace {

Eigen::VectorXd hermitian_eigenvalues(const Operator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double physical_time(TimeScaling mode, double eps, double tau) {
  return mode == TimeScaling::kSecondOrder ? tau / (eps * eps) : tau / eps;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

bool non_increasing(const std::vector<double>& v, double floor) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] > floor) return false;
  }
  return true;
}

}  // namespace

const char* time_scaling_name(TimeScaling s) {
  return s == TimeScaling::kSecondOrder ? "second-order" : "first-order";
}

std::vector<Operator> default_initial_states(Index d) {
  Operator last = Operator::Zero(d, d);
  last(d - 1, d - 1) = 1.0;
  const Operator plus = Operator::Constant(d, d, Complex(1.0 / static_cast<double>(d), 0.0));
  return {last, plus};
}

void check_sweep(const SweepConfig& cfg, Index d) {
  if (cfg.epsilons.empty() || cfg.taus.empty()) throw ValidationError("sweep: need at least one epsilon and one tau");
  for (double e : cfg.epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ValidationError("sweep: epsilons must be positive");
  }
  for (double t : cfg.taus) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("sweep: taus must be nonnegative");
  }
  for (std::size_t i = 0; i < cfg.initial_states.size(); ++i) {
    const Operator& rho = cfg.initial_states[i];
    const std::string where = "sweep: initial state " + std::to_string(i);
    if (rho.rows() != d || rho.cols() != d) throw ValidationError(where + " is not d x d");
    if (!is_hermitian(rho, 1e-10)) throw ValidationError(where + " is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-10) throw ValidationError(where + " does not have unit trace");
    if (hermitian_eigenvalues(rho).minCoeff() < -1e-10) throw ValidationError(where + " is not positive");
  }
}

double trace_distance(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "trace_distance");
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

ErrorTable evolve_and_compare(const StructuredLindbladian& l, const Perturbation& pert, const SweepConfig& cfg) {
  check_perturbation(l, pert);
  const DfsProjector& dfs = l.dfs();
  const Index d = dfs.dfs_dim();
  check_sweep(cfg, d);
  const std::vector<Operator> states = cfg.initial_states.empty() ? default_initial_states(d) : cfg.initial_states;

  const Superoperator p_inf = asymptotic_projection_analytic(l);
  ErrorTable table;
  table.mode = cfg.mode;
  for (double eps : cfg.epsilons) {
    const Perturbation scaled = pert.scaled(eps);
    std::vector<Operator> jumps = l.jumps();
    for (std::size_t i = 0; i < jumps.size(); ++i) jumps[i] += scaled.fs[i];
    const Superoperator full = assemble_lindbladian(l.hamiltonian() + scaled.v, jumps);
    const Superoperator eff = effective_lindbladian_general(l, scaled);
    for (double tau : cfg.taus) {
      const double t = physical_time(cfg.mode, eps, tau);
      const Superoperator full_flow = p_inf * superop_exp(full, t);
      const Superoperator eff_flow = superop_exp(eff, t);
      for (std::size_t s = 0; s < states.size(); ++s) {
        const Operator rho_full = dfs.compress(Corner::kUpperLeft,
                                               full_flow.apply(dfs.expand(Corner::kUpperLeft, states[s])));
        const Operator rho_eff = eff_flow.apply(states[s]);
        ErrorCell c;
        c.epsilon = eps;
        c.tau = tau;
        c.state_index = s;
        c.trace_distance = trace_distance(rho_full, rho_eff);
        c.drift = trace_distance(rho_full, states[s]);
        c.trace_error = std::max(std::abs(rho_full.trace() - 1.0), std::abs(rho_eff.trace() - 1.0));
        c.min_eigenvalue = std::min(hermitian_eigenvalues(rho_full).minCoeff(), hermitian_eigenvalues(rho_eff).minCoeff());
        table.cells.push_back(c);
      }
    }
  }
  return table;
}

ConvergenceFit convergence_order(const ErrorTable& table, double floor) {
  ConvergenceFit fit;
  std::map<double, std::size_t> eps_index;
  std::vector<double> taus;
  for (const auto& c : table.cells) {
    if (eps_index.emplace(c.epsilon, fit.epsilons.size()).second) {
      fit.epsilons.push_back(c.epsilon);
      fit.max_errors.push_back(0.0);
    }
    if (std::find(taus.begin(), taus.end(), c.tau) == taus.end()) taus.push_back(c.tau);
  }
  if (fit.epsilons.size() < 3) throw ValidationError("convergence_order: need at least three epsilons");
  const double ratio = fit.epsilons[1] / fit.epsilons[0];
  for (std::size_t i = 1; i < fit.epsilons.size(); ++i) {
    if (std::abs(fit.epsilons[i] / fit.epsilons[i - 1] - ratio) > 1e-9 * std::abs(ratio) || ratio == 1.0) {
      throw ValidationError("convergence_order: epsilons must form a geometric progression");
    }
  }
  std::vector<std::vector<double>> per_tau(taus.size(), std::vector<double>(fit.epsilons.size(), 0.0));
  for (const auto& c : table.cells) {
    const std::size_t e = eps_index.at(c.epsilon);
    const std::size_t t = static_cast<std::size_t>(std::find(taus.begin(), taus.end(), c.tau) - taus.begin());
    fit.max_errors[e] = std::max(fit.max_errors[e], c.trace_distance);
    per_tau[t][e] = std::max(per_tau[t][e], c.trace_distance);
  }

  // Order by decreasing epsilon so "monotone" means the error shrinks with eps.
  std::vector<std::size_t> order(fit.epsilons.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit.epsilons[a] > fit.epsilons[b]; });
  auto reorder = [&order](const std::vector<double>& v) {
    std::vector<double> out;
    for (std::size_t i : order) out.push_back(v[i]);
    return out;
  };
  fit.epsilons = reorder(fit.epsilons);
  fit.max_errors = reorder(fit.max_errors);

  fit.at_floor = std::all_of(fit.max_errors.begin(), fit.max_errors.end(), [floor](double e) { return e <= floor; });
  fit.monotone = non_increasing(fit.max_errors, floor);
  if (fit.at_floor) {
    fit.note = "all errors at numerical floor; fit skipped";
  } else if (!fit.monotone) {
    fit.note = "error does not decrease with epsilon; fit skipped";
  } else {
    fit.slope = loglog_slope(fit.epsilons, fit.max_errors);
    if (!fit.slope) fit.note = "errors at floor for some epsilon; fit skipped";
  }
  for (const auto& row : per_tau) {
    const std::vector<double> errs = reorder(row);
    const bool fittable = non_increasing(errs, floor) && *std::min_element(errs.begin(), errs.end()) > floor;
    fit.slope_per_tau.push_back(fittable ? loglog_slope(fit.epsilons, errs) : std::nullopt);
  }
  return fit;
}

DriftAnalysis drift_analysis(const ErrorTable& table, double allowance, double floor) {
  DriftAnalysis out;
  out.allowance = allowance;
  std::map<double, double, std::greater<>> worst;
  for (const auto& c : table.cells) {
    double& w = worst[c.epsilon];
    const double drift = c.drift <= floor ? 0.0 : c.drift;
    w = std::max(w, drift / (c.epsilon * (1.0 + c.tau)));
  }
  for (const auto& [eps, cst] : worst) {
    out.epsilons.push_back(eps);
    out.constants.push_back(cst);
  }
  if (out.constants.empty()) return out;
  const double ref = out.constants.front();
  const double top = *std::max_element(out.constants.begin(), out.constants.end());
  out.spread = ref > 0.0 ? top / ref : (top > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  out.bounded = out.spread <= 1.0 + allowance;
  return out;
}

}  // namespace ejof
