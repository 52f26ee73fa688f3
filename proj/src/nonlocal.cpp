#include "fraceig/nonlocal.hpp"

#include <cmath>
#include <numeric>

namespace fraceig {

double gagliardo_energy(const GridFunction& u, const KernelOperator& op) {
  require_same_host(u.host(), op.domain());
  const auto free = u.free_values();
  return op.energy(free);
}

double gagliardo_energy(const GridFunction& u, const FracParams& params, int threads) {
  return gagliardo_energy(u, KernelOperator(u.host_ptr(), params, threads));
}

double lp_norm(const GridFunction& u, double p) {
  if (!(p >= 1.0)) throw InvalidInput("lp_norm needs p >= 1");
  double acc = 0.0;
  for (auto i : u.host().omega_cells()) acc += std::pow(std::abs(u[i]), p);
  return std::pow(acc * u.host().cell_volume(), 1.0 / p);
}

double rayleigh_quotient(const GridFunction& u, const FracParams& params, int threads) {
  const double norm = lp_norm(u, params.p());
  if (!(norm > 0.0)) throw InvalidInput("Rayleigh quotient of the zero function is undefined");
  return gagliardo_energy(u, params, threads) / std::pow(norm, params.p());
}

GridFunction apply_operator(const GridFunction& u, const KernelOperator& op) {
  require_same_host(u.host(), op.domain());
  const auto free = u.free_values();
  std::vector<double> g(free.size());
  op.apply(free, g);
  return GridFunction::from_free(u.host_ptr(), g);
}

GridFunction apply_operator(const GridFunction& u, const FracParams& params, int threads) {
  return apply_operator(u, KernelOperator(u.host_ptr(), params, threads));
}

GridFunction energy_gradient(const GridFunction& u, const FracParams& params, int threads) {
  return apply_operator(u, params, threads) * params.p();
}

PairFunction nonlocal_gradient(const GridFunction& u, const FracParams& params) {
  const GridDomain& dom = u.host();
  const double expo = dom.dim() / params.p() + params.s();
  auto phi = PairFunction::zeros(u.host_ptr());
  const std::size_t m = dom.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double d = u[i] - u[j];
      if (d != 0.0) phi(i, j) = d / std::pow(dom.distance(i, j), expo);
    }
  return phi;
}

std::vector<double> nonlocal_divergence(const PairFunction& phi, const FracParams& params, int threads) {
  const GridDomain& dom = phi.host();
  const double expo = dom.dim() / params.p() + params.s();
  const double vol = dom.cell_volume();
  const std::size_t m = dom.size();
  std::vector<double> div(m, 0.0);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      acc += (phi(i, j) - phi(j, i)) / std::pow(dom.distance(i, j), expo);
    }
    div[i] = acc * vol;
  }
  return div;
}

double pair_inner(const PairFunction& phi, const PairFunction& psi) {
  require_same_host(phi.host(), psi.host());
  const double vol = phi.host().cell_volume();
  const std::size_t m = phi.cells();
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) acc += phi(i, j) * psi(i, j);
  return acc * vol * vol;
}

double field_inner(const GridFunction& u, const std::vector<double>& field) {
  if (field.size() != u.host().size()) throw InvalidInput("field size does not match host");
  double acc = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) acc += u[i] * field[i];
  return acc * u.host().cell_volume();
}

}  // namespace fraceig
