// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fraceig/asymptotics.hpp"
#include "fraceig/dirichlet.hpp"
#include "fraceig/eigenpair.hpp"
#include "fraceig/nonlocal.hpp"

using namespace fraceig;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::mt19937_64 rng(42);

DomainPtr interval(double h) { return build_domain({1, h, Shape::interval(0, 1)}, 4.0); }
DomainPtr two_intervals(double h) {
  return build_domain({1, h, Shape::union_of({Shape::interval(0, 1), Shape::interval(2, 3)})}, 4.0);
}
DomainPtr square(double h) { return build_domain({2, h, Shape::box({0, 0}, {1, 1})}, 4.0); }

GridFunction random_u(const DomainPtr& d, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<double> v(d->omega_count());
  for (auto& x : v) x = U(rng);
  return GridFunction::from_free(d, v);
}

PairFunction random_pair(const DomainPtr& d) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> v(d->size() * d->size());
  for (auto& x : v) x = U(rng);
  return {d, std::move(v)};
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Eigenvalues from every criterion, for the Poincare lower bound.
struct Computed {
  DomainPtr dom;
  FracParams params;
  double lambda;
};
std::vector<Computed> computed;

Eigenpair solve(const DomainPtr& d, const FracParams& par, const SolverConfig& cfg = {}) {
  auto e = first_eigenpair(d, par, cfg);
  computed.push_back({d, par, e.lambda});
  return e;
}

Outcome c1_oracle() {
  auto d = interval(1.0 / 64);
  double worst_l = 0.0, worst_u = 0.0;
  for (double s : {0.3, 0.5, 0.7}) {
    const FracParams par(s, 2.0);
    const auto e = solve(d, par);
    const auto o = p2_oracle(d, par);
    worst_l = std::max(worst_l, std::abs(e.lambda - o.lambda) / o.lambda);
    double sign_dot = 0.0;
    for (auto i : d->omega_cells()) sign_dot += e.eigenfunction[i] * o.eigenfunction[i];
    const auto aligned = sign_dot >= 0 ? o.eigenfunction : o.eigenfunction * -1.0;
    worst_u = std::max(worst_u, lp_norm(e.eigenfunction - aligned, 2.0));
  }
  return {worst_l <= 1e-6 && worst_u <= 1e-4, "max rel lambda err " + num(worst_l) + ", max L2 eigenfunction err " +
                                                   num(worst_u)};
}

Outcome c2_scaling() {
  auto d = interval(1.0 / 32);
  double worst = 0.0;
  const std::pair<double, double> sp[] = {{0.25, 2.0}, {0.5, 1.5}, {0.5, 3.0}, {0.75, 2.0}};
  for (auto [s, p] : sp) {
    const FracParams par(s, p);
    const double base = solve(d, par).lambda;
    for (double c : {2.0, 3.0, 0.5}) {
      const double lc = solve(dilate(*d, c), par).lambda;
      worst = std::max(worst, std::abs(std::pow(c, par.sp()) * lc - base) / base);
    }
  }
  return {worst <= 1e-10, "max |c^sp lambda(c Omega) - lambda| / lambda = " + num(worst)};
}

Outcome c3_weighted_monotone() {
  std::vector<double> s_list;
  for (int k = 0; k <= 12; ++k) s_list.push_back(std::round((0.20 + 0.05 * k) * 1e12) / 1e12);
  std::size_t violations = 0, failed = 0;
  double worst = 0.0;
  for (const auto& d : {interval(1.0 / 64), two_intervals(1.0 / 32)}) {
    for (double p : {1.5, 2.0, 3.0}) {
      auto r = s_sweep(d, p, s_list, 0.5, {});
      violations += weighted_monotonicity_violations(r, 1e-10);
      worst = std::max(worst, r.worst_violation);
      for (const auto& row : r.rows) {
        if (!row.ok) ++failed;
        else computed.push_back({d, FracParams(row.s, p), row.lambda});
      }
    }
  }
  return {violations == 0 && failed == 0, std::to_string(violations) + " violations over 78 points, " +
                                              std::to_string(failed) + " failed solves, largest drop " + num(worst)};
}

Outcome c4_right_limit() {
  auto d = interval(1.0 / 64);
  bool ok = true;
  std::string detail;
  for (double p : {1.5, 2.0, 3.0}) {
    const auto r = s_sweep(d, p, {0.5, 0.51, 0.52, 0.54}, 0.5, {});
    const auto gaps = right_limit_gaps(r);
    bool good = gaps.size() == 3;
    for (std::size_t k = 1; good && k < gaps.size(); ++k)
      good = gaps[k].lambda_gap < gaps[k - 1].lambda_gap && gaps[k].dist_to_base < gaps[k - 1].dist_to_base;
    ok = ok && good;
    detail += "p=" + num(p).substr(0, 3) + (good ? " ok" : " NOT decreasing") + " (gap@0.01 " +
              num(gaps.empty() ? 0.0 : gaps.back().lambda_gap) + ") ";
  }
  return {ok, detail};
}

Outcome c5_poincare() {
  int trials = 0, bad = 0;
  struct Config {
    DomainPtr d;
    FracParams par;
  };
  const Config configs[] = {{interval(1.0 / 32), FracParams(0.5, 2.0)},
                            {interval(1.0 / 32), FracParams(0.3, 1.5)},
                            {two_intervals(1.0 / 16), FracParams(0.7, 3.0)},
                            {square(1.0 / 8), FracParams(0.5, 2.0)}};
  for (const auto& c : configs) {
    const double I = poincare_constant(*c.d, c.par);
    const KernelOperator op(c.d, c.par);
    for (int k = 0; k < 100; ++k, ++trials) {
      // Half signed noise, half nonnegative bumps, which are closer to extremal.
      const auto u = k % 2 ? random_u(c.d) : random_u(c.d, 0.0, 1.0);
      if (std::pow(lp_norm(u, c.par.p()), c.par.p()) > I * gagliardo_energy(u, op)) ++bad;
    }
  }
  int lam_bad = 0;
  for (const auto& c : computed)
    if (c.lambda < 1.0 / poincare_constant(*c.dom, c.params)) ++lam_bad;
  return {bad == 0 && lam_bad == 0, std::to_string(bad) + "/" + std::to_string(trials) + " random violations, " +
                                        std::to_string(lam_bad) + "/" + std::to_string(computed.size()) +
                                        " eigenvalues below 1/I"};
}

Outcome c6_adjoint() {
  auto d = interval(1.0 / 32);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const FracParams par(0.2 + 0.006 * k, k % 2 ? 1.5 : 3.0);
    const auto u = random_u(d);
    const auto phi = random_pair(d);
    const auto ru = nonlocal_gradient(u, par);
    const double lhs = pair_inner(ru, phi);
    const double rhs = field_inner(u, nonlocal_divergence(phi, par));
    worst = std::max(worst, std::abs(lhs - rhs) / std::sqrt(pair_inner(ru, ru) * pair_inner(phi, phi)));
  }
  return {worst <= 1e-12, "worst relative gap " + num(worst)};
}

Outcome c7_gradient() {
  auto d = interval(1.0 / 32);
  double worst_fd = 0.0, worst_euler = 0.0;
  for (double p : {1.5, 2.0, 3.0}) {
    const FracParams par(0.5, p);
    const auto u = random_u(d);
    const auto g = energy_gradient(u, par);
    double pairing = 0.0;
    for (std::size_t i = 0; i < d->size(); ++i) pairing += u[i] * g[i];
    const double e = gagliardo_energy(u, par);
    worst_euler = std::max(worst_euler, std::abs(pairing - p * e) / (p * e));
    auto free = u.free_values();
    const auto omega = d->omega_cells();
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < free.size(); ++k) {
      auto up = free, dn = free;
      up[k] += 1e-6;
      dn[k] -= 1e-6;
      const double fd = (gagliardo_energy(GridFunction::from_free(d, up), par) -
                         gagliardo_energy(GridFunction::from_free(d, dn), par)) /
                        2e-6;
      err += (fd - g[omega[k]]) * (fd - g[omega[k]]);
      scale += g[omega[k]] * g[omega[k]];
    }
    worst_fd = std::max(worst_fd, std::sqrt(err / scale));
  }
  return {worst_fd <= 1e-5 && worst_euler <= 1e-12,
          "worst FD rel err (l2) " + num(worst_fd) + ", worst Euler rel err " + num(worst_euler)};
}

Outcome c8_monotone() {
  auto d = interval(1.0 / 32);
  int bad3 = 0, bad15 = 0;
  std::size_t pairs = 0, pair_bad = 0;
  double worst2 = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto u = random_u(d), v = random_u(d);
    const FracParams p3(0.5, 3.0), p15(0.5, 1.5), p2(0.5, 2.0);
    const auto c3 = monotonicity_certificate(u, v, p3);
    if (c3.pairing < 0.5 * gagliardo_energy(u - v, p3)) ++bad3;
    const auto c15 = monotonicity_certificate(u, v, p15);
    pairs += c15.pairs_checked;
    pair_bad += c15.pair_violations;
    if (!c15.holds) ++bad15;
    const auto c2 = monotonicity_certificate(u, v, p2);
    const double e2 = gagliardo_energy(u - v, p2);
    worst2 = std::max(worst2, std::abs(c2.pairing - e2) / e2);
  }
  return {bad3 == 0 && bad15 == 0 && pair_bad == 0 && worst2 <= 1e-12,
          "p=3 " + std::to_string(bad3) + "/100 below bound; p=1.5 " + std::to_string(pair_bad) + "/" +
              std::to_string(pairs) + " pairs violated; p=2 worst rel gap " + num(worst2)};
}

Outcome c9_comparison() {
  auto d = interval(1.0 / 32);
  double worst = -1e300;
  for (int k = 0; k < 20; ++k) {
    const double p = k % 3 == 0 ? 1.5 : k % 3 == 1 ? 2.0 : 3.0;
    auto f1 = random_u(d).free_values();
    auto f2 = f1;
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (auto& x : f2) x += U(rng);
    worst = std::max(worst, comparison_check(d, f1, f2, FracParams(0.5, p), {}).max_gap);
  }
  return {worst <= 1e-8, "max(w1 - w2) over 20 pairs " + num(worst)};
}

Outcome c10_clarkson() {
  auto d = interval(1.0 / 32);
  double worst = 1e300;
  for (double p : {3.0, 1.5}) {
    const FracParams par(0.5, p);
    for (int k = 0; k < 100; ++k) {
      const auto c = clarkson_gap(random_u(d), random_u(d), par);
      worst = std::min(worst, (c.rhs - c.lhs) / c.rhs);
    }
  }
  return {worst >= -1e-12, "min relative slack " + num(worst)};
}

Outcome c11_equivalence() {
  auto d = interval(1.0 / 16);
  double worst = 0.0;
  int bad = 0;
  for (double s : {0.3, 0.5, 0.7}) {
    const FracParams par(s, 2.0);
    for (int k = 0; k < 20; ++k) {
      const auto r = equivalence_check(random_u(d), par);
      if (!r.ratio_bound_ok) ++bad;
      worst = std::max(worst, r.ratio / r.bound);
    }
  }
  return {bad == 0, std::to_string(bad) + "/60 above bound, max (W/Y)/bound " + num(worst)};
}

Outcome c12_translation() {
  const FracParams par(0.5, 2.0);
  double fit[2];
  int k = 0;
  for (double h : {1.0 / 32, 1.0 / 64}) {
    auto d = interval(h);
    const auto e = solve(d, par);
    fit[k++] = translation_quotient_check(e.eigenfunction, par, dyadic_shifts(*d)).C_fit;
  }
  const double ratio = std::max(fit[0], fit[1]) / std::min(fit[0], fit[1]);
  return {ratio <= 2.0, "C_fit h=1/32 " + num(fit[0]) + ", h=1/64 " + num(fit[1]) + ", ratio " + num(ratio)};
}

Outcome c13_determinism() {
  auto d = interval(1.0 / 64);
  bool same = true;
  for (double s : {0.3, 0.5, 0.7}) {
    const FracParams par(s, 2.0);
    double l[3];
    int k = 0;
    for (int threads : {1, 2, 8}) {
      SolverConfig cfg;
      cfg.threads = threads;
      l[k++] = first_eigenpair(d, par, cfg).lambda;
    }
    same = same && std::memcmp(&l[0], &l[1], sizeof(double)) == 0 && std::memcmp(&l[0], &l[2], sizeof(double)) == 0;
  }
  return {same, same ? "lambda bitwise equal for 1, 2, 8 threads" : "lambda differs across thread counts"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"p=2 oracle equivalence", c1_oracle},
      {"scaling law", c2_scaling},
      {"weighted monotonicity in s", c3_weighted_monotone},
      {"right-continuity proxy", c4_right_limit},
      {"Poincare inequality", c5_poincare},
      {"adjointness", c6_adjoint},
      {"gradient consistency", c7_gradient},
      {"monotone-operator certificates", c8_monotone},
      {"comparison principle", c9_comparison},
      {"Clarkson inequalities", c10_clarkson},
      {"norm equivalence", c11_equivalence},
      {"translation quotient", c12_translation},
      {"determinism", c13_determinism},
  };
  int failed = 0, n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2d %-32s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed;
}
