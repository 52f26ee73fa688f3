#pragma once

#include <span>
#include <vector>

#include "fraceig/domain.hpp"
#include "fraceig/params.hpp"

namespace fraceig {

/// Truncated Gagliardo energy and its weak operator on the free (Omega) cells.
///
/// The full-ball double sum is reordered into an Omega x Omega block plus a
/// per-row tail over the rest of the ball, where u vanishes:
///
///   E(u) = sum_{i != j in Omega} |u_i - u_j|^p K_ij + 2 sum_{i in Omega} |u_i|^p kappa_i
///
/// with K_ij = |x_i - x_j|^{-(N+sp)} h^{2N} and kappa_i the sum of K_ij over
/// ball cells j outside Omega. Pairs with both ends outside Omega are skipped.
///
/// Rows are distributed over OpenMP threads; each row reduces in index order
/// and rows are combined serially, so results do not depend on the thread
/// count.
class KernelOperator {
 public:
  KernelOperator(DomainPtr dom, const FracParams& params, int threads = 1);

  std::size_t size() const { return n_; }
  const GridDomain& domain() const { return *dom_; }
  const DomainPtr& domain_ptr() const { return dom_; }
  const FracParams& params() const { return params_; }
  int threads() const { return threads_; }
  double cell_volume() const { return vol_; }

  double weight(std::size_t i, std::size_t j) const { return k_[i * n_ + j]; }
  double tail(std::size_t i) const { return kappa_[i]; }

  double energy(std::span<const double> u) const;
  /// g_i = 2 sum_j |u_i - u_j|^{p-2}(u_i - u_j) K_ij + 2 |u_i|^{p-2} u_i kappa_i,
  /// so <v, g> is the weak-form pairing and g = (1/p) grad E.
  void apply(std::span<const double> u, std::span<double> out) const;
  /// Energy and weak operator in one sweep.
  double energy_apply(std::span<const double> u, std::span<double> out) const;
  /// sum |u_i|^p h^N.
  double lp_norm_p(std::span<const double> u) const;

  /// Dense Hessian of E/p (row-major n x n), i.e. the Jacobian of apply().
  /// For p < 2 the pair weight |d|^{p-2} is evaluated at |d| no smaller than
  /// the rounding level of the two values.
  void hessian(std::span<const double> u, std::vector<double>& out) const;

  /// l2 norm of the rounding uncertainty of apply(u): per row, the change of
  /// the weak operator when every difference moves by its own rounding error.
  /// For p < 2 this is the floor below which the gradient cannot be resolved.
  double rounding_floor(std::span<const double> u) const;

 private:
  DomainPtr dom_;
  FracParams params_;
  int threads_;
  std::size_t n_;
  double vol_;
  std::vector<double> k_;
  std::vector<double> kappa_;
};

/// Naive serial double loops over all ordered pairs of ball cells, with
/// distances taken from cell-center coordinates. Kept as the reference the
/// parallel kernels are tested and benchmarked against.
namespace reference {

double energy(std::span<const double> ball_values, const GridDomain& dom, const FracParams& params);
/// Weak operator on every ball cell (zero off Omega).
std::vector<double> apply(std::span<const double> ball_values, const GridDomain& dom, const FracParams& params);

}  // namespace reference

}  // namespace fraceig
