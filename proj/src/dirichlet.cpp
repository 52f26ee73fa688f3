#include "fraceig/dirichlet.hpp"

#include "inner_solve.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "fraceig/kernels.hpp"
#include "fraceig/minimize.hpp"
#include "fraceig/nonlocal.hpp"

namespace fraceig {

DirichletSolution solve_dirichlet(const DirichletProblem& prob, const SolverConfig& cfg) {
  cfg.validate();
  const GridDomain& dom = *prob.host;
  if (prob.f.size() != dom.omega_count()) throw InvalidInput("f must have one value per Omega cell");
  for (double x : prob.f)
    if (!std::isfinite(x)) throw InvalidInput("f must be finite");

  const KernelOperator op(prob.host, prob.params, cfg.threads);
  const double vol = op.cell_volume();
  const double p = prob.params.p();

  std::vector<double> rhs(op.size());
  std::vector<double> div;
  if (prob.F) {
    require_same_host(dom, prob.F->host());
    div = nonlocal_divergence(*prob.F, prob.params, cfg.threads);
  }
  const auto omega = dom.omega_cells();
  for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = vol * (prob.f[k] + (div.empty() ? 0.0 : div[omega[k]]));
  const double rhs_norm = std::sqrt(std::inner_product(rhs.begin(), rhs.end(), rhs.begin(), 0.0));

  if (rhs_norm == 0.0) return {GridFunction::zeros(prob.host), 0.0, 0};

  // A is (p-1)-homogeneous, so solve A(v) = rhs / c^{p-1} with c chosen to
  // make v of order one and return w = c v. Without this the solution of a
  // p near 1 problem sits far below 1 (it scales like the data^{1/(p-1)}).
  std::vector<double> ones(op.size(), 1.0), a1(op.size());
  op.apply(ones, a1);
  const double a1_norm = std::sqrt(std::inner_product(a1.begin(), a1.end(), a1.begin(), 0.0));
  const double c = std::pow(rhs_norm / a1_norm, 1.0 / (p - 1.0));
  const double cp = rhs_norm / a1_norm;
  std::vector<double> b(rhs.size());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = rhs[k] / cp;
  const double b_norm = a1_norm;

  const Objective objective = [&](std::span<const double> x, std::span<double> grad) {
    const double e = op.energy_apply(x, grad);
    double lin = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      lin += b[i] * x[i];
      grad[i] -= b[i];
    }
    return e / p - lin;
  };
  // Zero is a kink of the energy for p < 2; start from the data instead.
  std::vector<double> v(op.size(), 0.0);
  if (p < 2.0) {
    double bmax = 0.0;
    for (double x : b) bmax = std::max(bmax, std::abs(x));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = b[k] / bmax;
  }
  const auto result = detail::minimize_energy(op, objective, v, cfg.inner_tol * b_norm, cfg.max_iter_inner);
  const double residual = result.grad_norm / b_norm;
  const double floor = p < 2.0 ? op.rounding_floor(v) / b_norm : 0.0;
  const bool noisy = residual > cfg.tol && p < 2.0 && (residual <= 4.0 * floor || result.stalled);
  if (residual > cfg.tol && !noisy) throw NonConvergence("Dirichlet solve did not reach the residual tolerance");
  for (auto& x : v) x *= c;
  return {GridFunction::from_free(prob.host, v), residual, result.iterations, noisy};
}

ComparisonReport comparison_check(const DomainPtr& host, std::span<const double> f1, std::span<const double> f2,
                                  const FracParams& params, const SolverConfig& cfg, double gap_tol) {
  if (f1.size() != f2.size()) throw InvalidInput("data sizes differ");
  for (std::size_t i = 0; i < f1.size(); ++i)
    if (f1[i] > f2[i]) throw InvalidInput("comparison precondition violated: f1 > f2 at some cell");
  auto s1 = solve_dirichlet({host, params, {f1.begin(), f1.end()}, std::nullopt}, cfg);
  auto s2 = solve_dirichlet({host, params, {f2.begin(), f2.end()}, std::nullopt}, cfg);
  double gap = -std::numeric_limits<double>::infinity();
  for (auto i : host->omega_cells()) gap = std::max(gap, s1.w[i] - s2.w[i]);
  return {gap, gap <= gap_tol, std::move(s1.w), std::move(s2.w)};
}

MonotonicityCertificate monotonicity_certificate(const GridFunction& u, const GridFunction& v,
                                                 const FracParams& params, int threads) {
  require_same_host(u.host(), v.host());
  const KernelOperator op(u.host_ptr(), params, threads);
  const double p = params.p();
  const GridFunction diff = u - v;
  const GridFunction au = apply_operator(u, op);
  const GridFunction av = apply_operator(v, op);
  double pairing = 0.0;
  for (auto i : u.host().omega_cells()) pairing += diff[i] * (au[i] - av[i]);

  MonotonicityCertificate cert{pairing, 0.0, false};
  if (p >= 2.0) {
    cert.bound = std::pow(2.0, 2.0 - p) * gagliardo_energy(diff, op);
    cert.holds = pairing >= cert.bound * (1.0 - 1e-12);
    return cert;
  }

  // Pairwise check over every ordered active pair with at least one end in Omega.
  const GridDomain& dom = u.host();
  auto phi = [p](double z) { return std::copysign(std::pow(std::abs(z), p - 1.0), z); };
  double worst = std::numeric_limits<double>::infinity();
  std::size_t checked = 0, bad = 0;
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (i == j || (!dom.in_omega(i) && !dom.in_omega(j))) continue;
      const double xi = u[i] - u[j];
      const double eta = v[i] - v[j];
      if (xi == 0.0 && eta == 0.0) continue;
      const double lhs = (p - 1.0) * (xi - eta) * (xi - eta) *
                         std::pow(std::pow(std::abs(xi), p) + std::pow(std::abs(eta), p), (p - 2.0) / p);
      const double rhs = (phi(xi) - phi(eta)) * (xi - eta);
      ++checked;
      const double margin = rhs > 0.0 ? (rhs - lhs) / rhs : (lhs == 0.0 ? 0.0 : -1.0);
      worst = std::min(worst, margin);
      if (margin < -1e-12) ++bad;
    }
  cert.pairs_checked = checked;
  cert.pair_violations = bad;
  cert.worst_pair_margin = checked ? worst : 0.0;
  cert.holds = pairing >= 0.0 && bad == 0;
  return cert;
}

}  // namespace fraceig
