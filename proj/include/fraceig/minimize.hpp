#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fraceig {

/// Writes the gradient into `grad` and returns the objective value.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct MinimizeOptions {
  double gtol = 1e-10;  // absolute l2 bound on the gradient
  int max_iter = 10000;
  int memory = 12;
};

struct MinimizeResult {
  int iterations = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
  // Newton only: progress stopped (see newton), i.e. the objective is
  // resolved to rounding.
  bool stalled = false;
};

/// Limited-memory BFGS descent with Armijo backtracking, for smooth convex
/// objectives. Steps whose value change is lost in rounding are accepted
/// when they reduce the directional slope. `x` is updated in place.
MinimizeResult lbfgs(const Objective& f, std::vector<double>& x, const MinimizeOptions& opts);

/// Fills a dense row-major Hessian at x.
using HessianFn = std::function<void(std::span<const double> x, std::vector<double>& hess)>;
/// Gradient norm below which progress is lost to rounding at x.
using NoiseFloorFn = std::function<double(std::span<const double> x)>;

/// Damped Newton descent with a dense Cholesky solve and Armijo
/// backtracking. Stops at gtol, once the gradient is within twice the
/// noise floor, or after 20 steps that neither halve the gradient nor lower
/// the objective beyond rounding (converged only if the gradient is then
/// within ten times the floor). Meant for strictly convex objectives whose curvature blows
/// up along some directions (p < 2), where first-order methods crawl.
MinimizeResult newton(const Objective& f, const HessianFn& hess, const NoiseFloorFn& floor, std::vector<double>& x,
                      const MinimizeOptions& opts);

}  // namespace fraceig
