#pragma once

#include <span>
#include <vector>

#include "fraceig/domain.hpp"

namespace fraceig {

/// Real values on every cell of the relative ball, exactly zero off Omega.
class GridFunction {
 public:
  /// Throws InvalidInput if a value is non-finite, nonzero off Omega, or the
  /// size does not match the host.
  GridFunction(DomainPtr host, std::vector<double> values);

  static GridFunction zeros(DomainPtr host);
  /// Scatters one value per Omega cell (in omega_cells() order) into the ball.
  static GridFunction from_free(DomainPtr host, std::span<const double> free_values);
  /// Indicator of Omega.
  static GridFunction indicator(DomainPtr host);

  const GridDomain& host() const { return *host_; }
  const DomainPtr& host_ptr() const { return host_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  /// Values on Omega cells, in omega_cells() order.
  std::vector<double> free_values() const;

  GridFunction operator+(const GridFunction& o) const;
  GridFunction operator-(const GridFunction& o) const;
  GridFunction operator*(double c) const;
  GridFunction abs() const;

 private:
  DomainPtr host_;
  std::vector<double> values_;
};

/// Dense field over ordered pairs (i, j) of ball cells. The diagonal is
/// stored but never read.
class PairFunction {
 public:
  PairFunction(DomainPtr host, std::vector<double> values);
  static PairFunction zeros(DomainPtr host);

  const GridDomain& host() const { return *host_; }
  const DomainPtr& host_ptr() const { return host_; }
  std::size_t cells() const { return host_->size(); }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cells() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * cells() + j]; }
  std::span<const double> values() const { return values_; }

  PairFunction operator+(const PairFunction& o) const;
  PairFunction operator*(double c) const;

 private:
  DomainPtr host_;
  std::vector<double> values_;
};

/// Throws InvalidInput unless both functions live on the same host grid.
void require_same_host(const GridDomain& a, const GridDomain& b);

}  // namespace fraceig
