#include "fraceig/grid_function.hpp"

#include <algorithm>
#include <cmath>

namespace fraceig {

void require_same_host(const GridDomain& a, const GridDomain& b) {
  if (&a == &b) return;
  const bool same = a.dim() == b.dim() && a.h() == b.h() && a.t() == b.t() && a.origin() == b.origin() &&
                    a.cells() == b.cells() &&
                    std::equal(a.omega_mask().begin(), a.omega_mask().end(), b.omega_mask().begin(),
                               b.omega_mask().end());
  if (!same) throw InvalidInput("functions live on different grids");
}

GridFunction::GridFunction(DomainPtr host, std::vector<double> values)
    : host_(std::move(host)), values_(std::move(values)) {
  if (!host_) throw InvalidInput("grid function needs a host domain");
  if (values_.size() != host_->size()) throw InvalidInput("grid function size does not match host");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw InvalidInput("grid function values must be finite");
    if (!host_->in_omega(i) && values_[i] != 0.0)
      throw InvalidInput("grid function must vanish outside Omega");
  }
}

GridFunction GridFunction::zeros(DomainPtr host) {
  const auto n = host->size();
  return {std::move(host), std::vector<double>(n, 0.0)};
}

GridFunction GridFunction::from_free(DomainPtr host, std::span<const double> free_values) {
  if (free_values.size() != host->omega_count()) throw InvalidInput("free value count does not match Omega");
  std::vector<double> v(host->size(), 0.0);
  const auto omega = host->omega_cells();
  for (std::size_t k = 0; k < omega.size(); ++k) v[omega[k]] = free_values[k];
  return {std::move(host), std::move(v)};
}

GridFunction GridFunction::indicator(DomainPtr host) {
  std::vector<double> ones(host->omega_count(), 1.0);
  return from_free(std::move(host), ones);
}

std::vector<double> GridFunction::free_values() const {
  std::vector<double> out;
  out.reserve(host_->omega_count());
  for (auto i : host_->omega_cells()) out.push_back(values_[i]);
  return out;
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
  require_same_host(*host_, *o.host_);
  auto v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
  return {host_, std::move(v)};
}

GridFunction GridFunction::operator-(const GridFunction& o) const {
  require_same_host(*host_, *o.host_);
  auto v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.values_[i];
  return {host_, std::move(v)};
}

GridFunction GridFunction::operator*(double c) const {
  auto v = values_;
  for (auto& x : v) x *= c;
  return {host_, std::move(v)};
}

GridFunction GridFunction::abs() const {
  auto v = values_;
  for (auto& x : v) x = std::abs(x);
  return {host_, std::move(v)};
}

PairFunction::PairFunction(DomainPtr host, std::vector<double> values)
    : host_(std::move(host)), values_(std::move(values)) {
  if (!host_) throw InvalidInput("pair function needs a host domain");
  if (values_.size() != host_->size() * host_->size()) throw InvalidInput("pair function size must be M*M");
  for (double x : values_)
    if (!std::isfinite(x)) throw InvalidInput("pair function values must be finite");
}

PairFunction PairFunction::zeros(DomainPtr host) {
  const auto m = host->size();
  return {std::move(host), std::vector<double>(m * m, 0.0)};
}

PairFunction PairFunction::operator+(const PairFunction& o) const {
  require_same_host(*host_, *o.host_);
  auto v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
  return {host_, std::move(v)};
}

PairFunction PairFunction::operator*(double c) const {
  auto v = values_;
  for (auto& x : v) x *= c;
  return {host_, std::move(v)};
}

}  // namespace fraceig
