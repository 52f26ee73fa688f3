#pragma once

#include "fraceig/kernels.hpp"
#include "fraceig/minimize.hpp"

namespace fraceig::detail {

// Above this size the dense Hessian costs more than first-order crawling.
inline constexpr std::size_t kNewtonMaxCells = 3000;

// Minimizes a functional of the form E/p - <b, w>. p < 2 goes through damped
// Newton because the curvature of |d|^p is unbounded at near-equal pairs.
inline MinimizeResult minimize_energy(const KernelOperator& op, const Objective& f, std::vector<double>& w,
                                      double gtol, int max_iter) {
  if (op.params().p() < 2.0 && w.size() <= kNewtonMaxCells) {
    return newton(
        f, [&](std::span<const double> x, std::vector<double>& h) { op.hessian(x, h); },
        [&](std::span<const double> x) { return op.rounding_floor(x); }, w, {.gtol = gtol, .max_iter = max_iter});
  }
  return lbfgs(f, w, {.gtol = gtol, .max_iter = max_iter, .memory = 12});
}

}  // namespace fraceig::detail
