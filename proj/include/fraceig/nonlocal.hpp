#pragma once

#include <vector>

#include "fraceig/grid_function.hpp"
#include "fraceig/kernels.hpp"

namespace fraceig {

/// Discrete [u]^p on B_{tR}(Omega): sum over ordered cell pairs i != j of
/// |u_i - u_j|^p |x_i - x_j|^{-(N+sp)} h^{2N}. Throws InvalidInput when the
/// host was built with a different t.
double gagliardo_energy(const GridFunction& u, const FracParams& params, int threads = 1);
double gagliardo_energy(const GridFunction& u, const KernelOperator& op);

/// (sum_{i in Omega} |u_i|^p h^N)^{1/p}; requires p >= 1.
double lp_norm(const GridFunction& u, double p);

/// Energy over ||u||_p^p; throws InvalidInput for the zero function.
double rayleigh_quotient(const GridFunction& u, const FracParams& params, int threads = 1);

/// Weak fractional p-Laplacian. <v, apply_operator(u)> equals the symmetric
/// double sum of |u(x)-u(y)|^{p-2}(u(x)-u(y))(v(x)-v(y)) K(x,y); this is
/// (1/p) times the gradient of gagliardo_energy with respect to the free values.
GridFunction apply_operator(const GridFunction& u, const FracParams& params, int threads = 1);
GridFunction apply_operator(const GridFunction& u, const KernelOperator& op);

/// Gradient of gagliardo_energy with respect to the Omega values, p * apply_operator.
GridFunction energy_gradient(const GridFunction& u, const FracParams& params, int threads = 1);

/// R_{s,p}(u)(i,j) = (u_i - u_j) / |x_i - x_j|^{N/p+s}; zero on the diagonal.
PairFunction nonlocal_gradient(const GridFunction& u, const FracParams& params);

/// R*_{s,p}(phi)_i = sum_{j != i} (phi(i,j) - phi(j,i)) |x_i - x_j|^{-(N/p+s)} h^N,
/// one value per ball cell.
std::vector<double> nonlocal_divergence(const PairFunction& phi, const FracParams& params, int threads = 1);

/// sum_{i != j} phi(i,j) psi(i,j) h^{2N}.
double pair_inner(const PairFunction& phi, const PairFunction& psi);
/// sum_i u_i field_i h^N over the ball.
double field_inner(const GridFunction& u, const std::vector<double>& field);

}  // namespace fraceig
