#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fraceig/domain.hpp"
#include "fraceig/grid_function.hpp"

namespace th {

using namespace fraceig;

inline DomainPtr interval(double a, double b, double h, double t = 4.0) {
  return build_domain({1, h, Shape::interval(a, b)}, t);
}

inline DomainPtr two_intervals(double h) {
  return build_domain({1, h, Shape::union_of({Shape::interval(0, 1), Shape::interval(2, 3)})}, 4.0);
}

inline DomainPtr unit_square(double h) { return build_domain({2, h, Shape::box({0, 0}, {1, 1})}, 4.0); }

inline GridFunction random_u(const DomainPtr& d, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<double> v(d->omega_count());
  for (auto& x : v) x = U(rng);
  return GridFunction::from_free(d, v);
}

inline PairFunction random_pair(const DomainPtr& d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> v(d->size() * d->size());
  for (auto& x : v) x = U(rng);
  return {d, std::move(v)};
}

// Full-ball double sum straight from the cell centers.
inline double naive_energy(const GridFunction& u, double s, double p) {
  const auto& d = u.host();
  const double N = d.dim();
  double e = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i == j) continue;
      const auto a = d.cell_center(i), b = d.cell_center(j);
      const double r = std::hypot(a[0] - b[0], N == 2 ? a[1] - b[1] : 0.0);
      e += std::pow(std::abs(u[i] - u[j]), p) * std::pow(r, -(N + s * p)) * std::pow(d.cell_volume(), 2);
    }
  return e;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace th
