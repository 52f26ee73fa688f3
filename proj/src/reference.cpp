#include <cmath>

#include "fraceig/kernels.hpp"

namespace fraceig::reference {

namespace {

double euclid(const Point& a, const Point& b, int dim) {
  double d2 = 0.0;
  for (int k = 0; k < dim; ++k) d2 += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(d2);
}

}  // namespace

double energy(std::span<const double> u, const GridDomain& dom, const FracParams& params) {
  const int dim = dom.dim();
  const double vol = dom.cell_volume();
  const double expo = dim + params.sp();
  double total = 0.0;
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (i == j) continue;
      const double r = euclid(dom.cell_center(i), dom.cell_center(j), dim);
      total += std::pow(std::abs(u[i] - u[j]), params.p()) / std::pow(r, expo) * vol * vol;
    }
  return total;
}

std::vector<double> apply(std::span<const double> u, const GridDomain& dom, const FracParams& params) {
  const int dim = dom.dim();
  const double vol = dom.cell_volume();
  const double expo = dim + params.sp();
  const double p = params.p();
  std::vector<double> g(dom.size(), 0.0);
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (!dom.in_omega(i)) continue;
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (i == j) continue;
      const double d = u[i] - u[j];
      if (d == 0.0) continue;
      const double r = euclid(dom.cell_center(i), dom.cell_center(j), dim);
      g[i] += 2.0 * std::pow(std::abs(d), p - 2.0) * d / std::pow(r, expo) * vol * vol;
    }
  }
  return g;
}

}  // namespace fraceig::reference
