#include "fraceig/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <algorithm>
#include <numeric>

namespace fraceig {

namespace {

// |d|^{p-1}; exact for p = 2.
inline double pow_pm1(double ad, double p) { return p == 2.0 ? ad : std::pow(ad, p - 1.0); }

}  // namespace

KernelOperator::KernelOperator(DomainPtr dom, const FracParams& params, int threads)
    : dom_(std::move(dom)), params_(params), threads_(threads), n_(dom_->omega_count()), vol_(dom_->cell_volume()) {
  if (threads_ < 1) throw InvalidInput("threads must be >= 1");
  if (std::abs(dom_->t() - params.t()) > 1e-12 * params.t())
    throw InvalidInput("domain was built with a different t than the parameters");

  const int dim = dom_->dim();
  const double expo = dim + params.sp();
  const double scale = std::pow(dom_->h(), dim - params.sp());  // h^{-(N+sp)} h^{2N}
  const Index counts = dom_->box_counts();

  // |offset|^{-(N+sp)} by absolute lattice offset.
  std::vector<double> table(static_cast<std::size_t>(counts[0]) * counts[1], 0.0);
  for (int dy = 0; dy < counts[1]; ++dy)
    for (int dx = 0; dx < counts[0]; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const double d2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
      table[static_cast<std::size_t>(dy) * counts[0] + dx] = std::pow(d2, -0.5 * expo);
    }
  const auto& cells = dom_->cells();
  auto lookup = [&](std::size_t i, std::size_t j) {
    const int dx = std::abs(cells[i][0] - cells[j][0]);
    const int dy = std::abs(cells[i][1] - cells[j][1]);
    return table[static_cast<std::size_t>(dy) * counts[0] + dx];
  };

  const auto omega = dom_->omega_cells();
  const std::size_t m = dom_->size();
  k_.assign(n_ * n_, 0.0);
  kappa_.assign(n_, 0.0);
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::size_t a = 0; a < n_; ++a) {
    const std::size_t i = omega[a];
    for (std::size_t b = 0; b < n_; ++b)
      if (a != b) k_[a * n_ + b] = scale * lookup(i, omega[b]);
    double tail = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (!dom_->in_omega(j)) tail += lookup(i, j);
    kappa_[a] = scale * tail;
  }
}

double KernelOperator::energy(std::span<const double> u) const {
  const double p = params_.p();
  std::vector<double> rows(n_);
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::size_t i = 0; i < n_; ++i) {
    const double ui = u[i];
    const double* krow = &k_[i * n_];
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double ad = std::abs(ui - u[j]);
      acc += pow_pm1(ad, p) * ad * krow[j];
    }
    const double au = std::abs(ui);
    rows[i] = acc + 2.0 * pow_pm1(au, p) * au * kappa_[i];
  }
  return std::accumulate(rows.begin(), rows.end(), 0.0);
}

void KernelOperator::apply(std::span<const double> u, std::span<double> out) const {
  energy_apply(u, out);
}

double KernelOperator::energy_apply(std::span<const double> u, std::span<double> out) const {
  const double p = params_.p();
  std::vector<double> rows(n_);
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::size_t i = 0; i < n_; ++i) {
    const double ui = u[i];
    const double* krow = &k_[i * n_];
    double e = 0.0;
    double g = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double d = ui - u[j];
      const double ad = std::abs(d);
      const double w = pow_pm1(ad, p) * krow[j];
      e += w * ad;
      g += std::copysign(w, d);
    }
    const double au = std::abs(ui);
    const double w = pow_pm1(au, p) * kappa_[i];
    rows[i] = e + 2.0 * w * au;
    out[i] = 2.0 * (g + std::copysign(w, ui));
  }
  return std::accumulate(rows.begin(), rows.end(), 0.0);
}

void KernelOperator::hessian(std::span<const double> u, std::vector<double>& out) const {
  const double p = params_.p();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  out.assign(n_ * n_, 0.0);
  auto weight = [p](double ad, double floor) { return p == 2.0 ? 1.0 : std::pow(std::max(ad, floor), p - 2.0); };
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::size_t i = 0; i < n_; ++i) {
    const double* krow = &k_[i * n_];
    double* hrow = &out[i * n_];
    double diag = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i) continue;
      const double w = 2.0 * (p - 1.0) * krow[j] *
                       weight(std::abs(u[i] - u[j]), 2.0 * eps * (std::abs(u[i]) + std::abs(u[j])));
      hrow[j] = -w;
      diag += w;
    }
    const double tail_floor = 2.0 * eps * std::abs(u[i]) + std::numeric_limits<double>::min();
    hrow[i] = diag + 2.0 * (p - 1.0) * kappa_[i] * weight(std::abs(u[i]), tail_floor);
  }
}

double KernelOperator::rounding_floor(std::span<const double> u) const {
  const double p = params_.p();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> rows(n_);
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::size_t i = 0; i < n_; ++i) {
    const double* krow = &k_[i * n_];
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i) continue;
      const double ad = std::abs(u[i] - u[j]);
      const double delta = 2.0 * eps * (std::abs(u[i]) + std::abs(u[j]));
      acc += krow[j] * (pow_pm1(ad + delta, p) - pow_pm1(ad, p));
    }
    const double au = std::abs(u[i]);
    acc += kappa_[i] * (pow_pm1(au + 2.0 * eps * au, p) - pow_pm1(au, p));
    rows[i] = 4.0 * acc * acc;
  }
  return std::sqrt(std::accumulate(rows.begin(), rows.end(), 0.0));
}

double KernelOperator::lp_norm_p(std::span<const double> u) const {
  const double p = params_.p();
  double acc = 0.0;
  for (double x : u) acc += pow_pm1(std::abs(x), p) * std::abs(x);
  return acc * vol_;
}

}  // namespace fraceig
