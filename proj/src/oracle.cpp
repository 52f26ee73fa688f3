#include <Eigen/Dense>
#include <cmath>

#include "fraceig/eigenpair.hpp"

namespace fraceig {

namespace {

// u^T A u = E(u) h^{-N} for u supported on the free cells.
Eigen::MatrixXd assemble_p2(const GridDomain& dom, const FracParams& params) {
  if (params.p() != 2.0) throw InvalidInput("the dense oracle requires p = 2");
  const auto omega = dom.omega_cells();
  const auto n = static_cast<Eigen::Index>(omega.size());
  if (n > 4000) throw InvalidInput("too many free cells for the dense oracle (limit 4000)");
  const double vol = dom.cell_volume();
  const double expo = dom.dim() + params.sp();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (!dom.in_omega(i)) continue;
    double diag = 0.0;
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (j == i) {
        ++col;
        continue;
      }
      const double w = 2.0 * vol / std::pow(dom.distance(i, j), expo);
      diag += w;
      if (dom.in_omega(j)) a(row, col++) = -w;
    }
    a(row, row) = diag;
    ++row;
  }
  return a;
}

}  // namespace

Eigenpair p2_oracle(const DomainPtr& dom, const FracParams& params) {
  const Eigen::MatrixXd a = assemble_p2(*dom, params);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NonConvergence("dense eigensolver failed");
  Eigen::VectorXd v = solver.eigenvectors().col(0);
  if (v.sum() < 0.0) v = -v;
  v /= std::sqrt(v.squaredNorm() * dom->cell_volume());
  const double lambda = solver.eigenvalues()(0);
  std::vector<double> free(v.data(), v.data() + v.size());
  const double residual = (a * v - lambda * v).norm() / (lambda * v.norm());
  return {lambda, GridFunction::from_free(dom, free), {}, 0, residual};
}

GridFunction p2_dirichlet_oracle(const DomainPtr& dom, const FracParams& params, std::span<const double> f_free) {
  const Eigen::MatrixXd a = assemble_p2(*dom, params);
  if (static_cast<Eigen::Index>(f_free.size()) != a.rows()) throw InvalidInput("datum size does not match Omega");
  // A is scaled by h^{-N}; A w = f is the weak equation divided by h^N.
  Eigen::VectorXd f(a.rows());
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = f_free[static_cast<std::size_t>(i)];
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw NonConvergence("dense Cholesky failed");
  const Eigen::VectorXd w = llt.solve(f);
  return GridFunction::from_free(dom, std::vector<double>(w.data(), w.data() + w.size()));
}

}  // namespace fraceig
