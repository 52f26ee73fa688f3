#include "fraceig/eigenpair.hpp"

#include "inner_solve.hpp"

#include <cmath>
#include <numeric>

#include "fraceig/minimize.hpp"
#include "fraceig/nonlocal.hpp"

namespace fraceig {

namespace {

double norm2(std::span<const double> v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

// |u|^{p-2} u
double phi(double x, double p) { return p == 2.0 ? x : std::copysign(std::pow(std::abs(x), p - 1.0), x); }

void normalize_abs(std::vector<double>& u, const KernelOperator& op) {
  for (auto& x : u) x = std::abs(x);
  const double norm = std::pow(op.lp_norm_p(u), 1.0 / op.params().p());
  if (!(norm > 0.0)) throw NonConvergence("inverse iteration collapsed to the zero function");
  for (auto& x : u) x /= norm;
}

double rounding_level(const KernelOperator& op, std::span<const double> u, double lambda) {
  if (op.params().p() >= 2.0) return 0.0;
  double den = 0.0;
  for (double x : u) {
    const double r = lambda * op.cell_volume() * phi(x, op.params().p());
    den += r * r;
  }
  return den > 0.0 ? op.rounding_floor(u) / std::sqrt(den) : 0.0;
}

}  // namespace

double eigen_residual(const KernelOperator& op, std::span<const double> u, double lambda) {
  const double p = op.params().p();
  std::vector<double> g(u.size());
  op.apply(u, g);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double rhs = lambda * op.cell_volume() * phi(u[i], p);
    num += (g[i] - rhs) * (g[i] - rhs);
    den += rhs * rhs;
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

Eigenpair first_eigenpair(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg) {
  return first_eigenpair(GridFunction::indicator(dom), params, cfg);
}

Eigenpair first_eigenpair(const GridFunction& start, const FracParams& params, const SolverConfig& cfg) {
  cfg.validate();
  const KernelOperator op(start.host_ptr(), params, cfg.threads);
  const double p = params.p();
  const double vol = op.cell_volume();

  std::vector<double> u = start.free_values();
  normalize_abs(u, op);
  double lambda = op.energy(u);
  std::vector<TraceEntry> trace{{lambda, eigen_residual(op, u, lambda)}};

  std::vector<double> b(u.size()), g(u.size());
  const Objective objective = [&](std::span<const double> w, std::span<double> grad) {
    const double e = op.energy_apply(w, grad);
    double lin = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      lin += b[i] * w[i];
      grad[i] -= b[i];
    }
    return e / p - lin;
  };

  constexpr int stagnation_window = 10;
  double best_res = trace.front().residual;
  int best_at = 0;

  for (int n = 1; n <= cfg.max_iter_outer; ++n) {
    for (std::size_t i = 0; i < u.size(); ++i) b[i] = lambda * vol * phi(u[i], p);
    std::vector<double> w = u;
    detail::minimize_energy(op, objective, w, cfg.inner_tol * norm2(b), cfg.max_iter_inner);
    normalize_abs(w, op);
    const double lambda_new = op.energy(w);
    const double res = eigen_residual(op, w, lambda_new);
    trace.push_back({lambda_new, res});
    if (res < 0.5 * best_res) {
      best_res = res;
      best_at = n;
    }
    const bool held = std::abs(lambda_new - lambda) <= cfg.tol * lambda_new;
    u.swap(w);
    lambda = lambda_new;
    if (!held) continue;

    bool noisy = false;
    if (res > cfg.tol) {
      if (p >= 2.0) continue;
      noisy = res <= 4.0 * rounding_level(op, u, lambda) || n - best_at >= stagnation_window;
      if (!noisy) continue;
    }
    Eigenpair out{lambda, GridFunction::from_free(start.host_ptr(), u), std::move(trace), n, res};
    out.noise_limited = noisy;
    return out;
  }
  throw EigenNonConvergence("first eigenpair did not converge within max_iter_outer", std::move(trace));
}

ClarksonSides clarkson_gap(const GridFunction& u, const GridFunction& v, const FracParams& params, int threads) {
  require_same_host(u.host(), v.host());
  const KernelOperator op(u.host_ptr(), params, threads);
  const double eu = gagliardo_energy(u, op);
  const double ev = gagliardo_energy(v, op);
  const double ediff = gagliardo_energy((u - v) * 0.5, op);
  const double esum = gagliardo_energy((u + v) * 0.5, op);
  const double p = params.p();
  if (p >= 2.0) return {ediff + esum, 0.5 * (eu + ev)};
  const double e = 1.0 / (p - 1.0);
  return {std::pow(ediff, e) + std::pow(esum, e), std::pow(0.5 * (eu + ev), e)};
}

double seminorm_distance(const GridFunction& u, const GridFunction& v, const FracParams& params, int threads) {
  require_same_host(u.host(), v.host());
  return std::pow(gagliardo_energy(u - v, params, threads), 1.0 / params.p());
}

}  // namespace fraceig
