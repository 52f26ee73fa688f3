#include "fraceig/minimize.hpp"

#include <cmath>
#include <deque>
#include <numeric>

namespace fraceig {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Pair {
  std::vector<double> s, y;
  double rho;
};

void two_loop(const std::deque<Pair>& mem, std::span<const double> g, std::vector<double>& d) {
  d.assign(g.begin(), g.end());
  std::vector<double> alpha(mem.size());
  for (std::size_t k = mem.size(); k-- > 0;) {
    alpha[k] = mem[k].rho * dot(mem[k].s, d);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= alpha[k] * mem[k].y[i];
  }
  if (!mem.empty()) {
    const auto& last = mem.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (auto& v : d) v *= gamma;
  }
  for (std::size_t k = 0; k < mem.size(); ++k) {
    const double beta = mem[k].rho * dot(mem[k].y, d);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += (alpha[k] - beta) * mem[k].s[i];
  }
  for (auto& v : d) v = -v;
}

}  // namespace

MinimizeResult lbfgs(const Objective& f, std::vector<double>& x, const MinimizeOptions& opts) {
  const std::size_t n = x.size();
  std::vector<double> g(n), g_new(n), x_new(n), d;
  MinimizeResult res;
  res.value = f(x, g);
  res.grad_norm = std::sqrt(dot(g, g));
  std::deque<Pair> mem;
  constexpr double c1 = 1e-4;
  constexpr double noise = 1e-13;

  for (int it = 0; it < opts.max_iter; ++it) {
    if (res.grad_norm <= opts.gtol) {
      res.converged = true;
      return res;
    }
    res.iterations = it + 1;
    two_loop(mem, g, d);
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      mem.clear();
      two_loop(mem, g, d);
      slope = dot(g, d);
    }
    double alpha = mem.empty() ? 1.0 / res.grad_norm : 1.0;
    const bool first = mem.empty();

    bool accepted = false;
    double f_new = 0.0;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + alpha * d[i];
      f_new = f(x_new, g_new);
      const double tol_f = noise * std::max(std::abs(res.value), std::abs(f_new));
      if (f_new <= res.value + c1 * alpha * slope) {
        accepted = true;
      } else if (f_new - res.value <= tol_f && std::abs(dot(g_new, d)) < std::abs(slope)) {
        accepted = true;
      }
      if (accepted) break;
      alpha *= 0.5;
    }
    if (accepted && first) {
      // Without curvature history the initial scale is a guess; grow it while
      // the objective keeps dropping.
      std::vector<double> x_try(n), g_try(n);
      for (int grow = 0; grow < 60; ++grow) {
        const double a2 = 2.0 * alpha;
        for (std::size_t i = 0; i < n; ++i) x_try[i] = x[i] + a2 * d[i];
        const double f_try = f(x_try, g_try);
        if (!(f_try < f_new && f_try <= res.value + c1 * a2 * slope)) break;
        alpha = a2;
        f_new = f_try;
        x_new.swap(x_try);
        g_new.swap(g_try);
      }
    }
    if (!accepted) {
      if (mem.empty()) return res;  // stalled on a steepest-descent step
      mem.clear();
      continue;
    }

    Pair pr{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pr.s[i] = x_new[i] - x[i];
      pr.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(pr.s, pr.y);
    if (sy > 1e-300 && sy > 1e-14 * std::sqrt(dot(pr.s, pr.s) * dot(pr.y, pr.y))) {
      pr.rho = 1.0 / sy;
      mem.push_back(std::move(pr));
      if (static_cast<int>(mem.size()) > opts.memory) mem.pop_front();
    }
    x.swap(x_new);
    g.swap(g_new);
    res.value = f_new;
    res.grad_norm = std::sqrt(dot(g, g));
  }
  res.converged = res.grad_norm <= opts.gtol;
  return res;
}

}  // namespace fraceig

#include <Eigen/Dense>

namespace fraceig {

MinimizeResult newton(const Objective& f, const HessianFn& hess, const NoiseFloorFn& floor, std::vector<double>& x,
                      const MinimizeOptions& opts) {
  const auto n = static_cast<Eigen::Index>(x.size());
  std::vector<double> g(x.size()), g_new(x.size()), x_new(x.size()), h;
  MinimizeResult res;
  res.value = f(x, g);
  res.grad_norm = std::sqrt(dot(g, g));
  constexpr double c1 = 1e-4;
  constexpr double noise = 1e-13;

  // Twenty steps that neither halve the gradient nor lower the objective
  // beyond rounding mean the iteration is resolving noise.
  constexpr int stall_window = 20;
  double mark = res.grad_norm;
  double mark_value = res.value;
  int mark_it = 0;

  for (int it = 0; it < opts.max_iter; ++it) {
    if (res.grad_norm <= opts.gtol || res.grad_norm <= 2.0 * floor(x)) {
      res.converged = true;
      return res;
    }
    if (res.grad_norm < 0.5 * mark || mark_value - res.value > 1e-12 * std::abs(res.value)) {
      mark = std::min(mark, res.grad_norm);
      mark_value = res.value;
      mark_it = it;
    } else if (it - mark_it >= stall_window) {
      res.converged = res.grad_norm <= 10.0 * floor(x);
      res.stalled = true;
      return res;
    }
    res.iterations = it + 1;
    hess(x, h);
    Eigen::Map<const Eigen::MatrixXd> hm(h.data(), n, n);
    Eigen::Map<const Eigen::VectorXd> gv(g.data(), n);
    Eigen::VectorXd d;
    Eigen::LLT<Eigen::MatrixXd> llt(hm);
    if (llt.info() == Eigen::Success) {
      d = -llt.solve(gv);
    } else {
      const double shift = 1e-12 * hm.diagonal().cwiseAbs().maxCoeff();
      Eigen::LLT<Eigen::MatrixXd> shifted(hm + shift * Eigen::MatrixXd::Identity(n, n));
      d = shifted.info() == Eigen::Success ? Eigen::VectorXd(-shifted.solve(gv)) : Eigen::VectorXd(-gv);
    }
    double slope = gv.dot(d);
    if (!(slope < 0.0)) {
      d = -gv;
      slope = -gv.squaredNorm();
    }

    double alpha = 1.0;
    bool accepted = false;
    double f_new = 0.0;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < x.size(); ++i) x_new[i] = x[i] + alpha * d(static_cast<Eigen::Index>(i));
      f_new = f(x_new, g_new);
      const double tol_f = noise * std::max(std::abs(res.value), std::abs(f_new));
      double new_slope = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) new_slope += g_new[i] * d(static_cast<Eigen::Index>(i));
      if (f_new <= res.value + c1 * alpha * slope ||
          (f_new - res.value <= tol_f && std::abs(new_slope) < std::abs(slope))) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      res.stalled = true;
      return res;
    }
    x.swap(x_new);
    g.swap(g_new);
    res.value = f_new;
    res.grad_norm = std::sqrt(dot(g, g));
  }
  res.converged = res.grad_norm <= opts.gtol || res.grad_norm <= 2.0 * floor(x);
  return res;
}

}  // namespace fraceig
