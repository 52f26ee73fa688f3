#pragma once

#include <optional>
#include <vector>

#include "fraceig/grid_function.hpp"
#include "fraceig/params.hpp"

namespace fraceig {

/// Weak Dirichlet problem: find w vanishing off Omega with
///   <v, (-Delta_p)^s w> = sum_Omega f v h^N + sum_{pairs} F R_{s,p}(v) h^{2N}
/// for all such v. F is used as given; only its antisymmetric part acts.
struct DirichletProblem {
  DomainPtr host;
  FracParams params;
  std::vector<double> f;  // one value per Omega cell, omega_cells() order
  std::optional<PairFunction> F;
};

struct DirichletSolution {
  GridFunction w;
  double residual;  // ||grad J|| / ||rhs||
  int iterations;
  // p < 2 only: the descent stalled above cfg.tol because near-equal cell
  // pairs put rounding noise of size |d|^{p-1} into the gradient.
  bool noise_limited = false;
};

/// Minimizes J(w) = (1/p) E(w) - sum f w h^N - sum F R(w) h^{2N} by descent,
/// stopping at relative gradient cfg.inner_tol. Throws NonConvergence if the
/// final relative residual exceeds cfg.tol, except for p < 2 when the descent
/// stalled at rounding level (then noise_limited is set).
DirichletSolution solve_dirichlet(const DirichletProblem& prob, const SolverConfig& cfg);

struct ComparisonReport {
  double max_gap;  // max_i (w1_i - w2_i)
  bool passed;     // max_gap <= tolerance
  GridFunction w1;
  GridFunction w2;
};

/// Solves with data f1 <= f2 (F = 0) and reports max(w1 - w2). Throws
/// InvalidInput when f1 <= f2 fails somewhere.
ComparisonReport comparison_check(const DomainPtr& host, std::span<const double> f1, std::span<const double> f2,
                                  const FracParams& params, const SolverConfig& cfg, double gap_tol = 1e-8);

struct MonotonicityCertificate {
  double pairing;  // <u - v, A(u) - A(v)>
  double bound;    // 2^{2-p} [u-v]^p for p >= 2, 0 otherwise
  bool holds;
  std::size_t pairs_checked = 0;     // p < 2: pairwise inequality evaluations
  std::size_t pair_violations = 0;   // p < 2: pairs failing the pairwise inequality
  double worst_pair_margin = 0.0;    // p < 2: min over pairs of (rhs - lhs) / rhs
};

/// Monotonicity of the weak operator. For p >= 2 asserts pairing >= bound;
/// for 1 < p < 2 asserts pairing >= 0 and checks on every active pair
///   (p-1) |xi - eta|^2 (|xi|^p + |eta|^p)^{(p-2)/p} <= (phi(xi) - phi(eta)) (xi - eta)
/// with xi, eta the differences of u and v and phi(z) = |z|^{p-2} z.
MonotonicityCertificate monotonicity_certificate(const GridFunction& u, const GridFunction& v,
                                                 const FracParams& params, int threads = 1);

}  // namespace fraceig
