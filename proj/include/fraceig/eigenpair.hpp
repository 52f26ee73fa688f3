#pragma once

#include <vector>

#include "fraceig/grid_function.hpp"
#include "fraceig/kernels.hpp"

namespace fraceig {

struct TraceEntry {
  double lambda;
  double residual;
};

/// First (s,p)-eigenpair: lambda, the positive eigenfunction with
/// ||u||_p = 1, and the per-iteration (lambda, residual) record.
struct Eigenpair {
  double lambda = 0.0;
  GridFunction eigenfunction;
  std::vector<TraceEntry> trace;
  int iterations = 0;
  double residual = 0.0;
  // Stopped at the rounding limit with residual > tol (only happens for p < 2).
  bool noise_limited = false;
};

/// Thrown when the outer iteration exhausts max_iter_outer; keeps the trace.
class EigenNonConvergence : public NonConvergence {
 public:
  EigenNonConvergence(const std::string& what, std::vector<TraceEntry> trace)
      : NonConvergence(what), trace_(std::move(trace)) {}
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  std::vector<TraceEntry> trace_;
};

/// Relative weak residual ||A(u) - lambda h^N |u|^{p-2} u|| / ||lambda h^N |u|^{p-2} u||
/// over Omega cells.
double eigen_residual(const KernelOperator& op, std::span<const double> u, double lambda);

/// Inverse power iteration for the first eigenpair. Each step minimizes the
/// strictly convex functional (1/p) E(w) - lambda_n sum_Omega u_n^{p-1} w h^N,
/// then sets u_{n+1} = |w| / ||w||_p and lambda_{n+1} = E(u_{n+1}). Stops
/// when the relative change of lambda and the relative residual are both
/// below cfg.tol. For p < 2 the residual of near-equal cell pairs is
/// dominated by rounding (|d|^{p-1} of a noise-level d); once lambda holds to
/// cfg.tol, a residual within the computed rounding floor, or one that makes
/// no progress for 10 steps, is accepted and the result is flagged
/// noise_limited. The default start is the normalized indicator of Omega.
Eigenpair first_eigenpair(const DomainPtr& dom, const FracParams& params, const SolverConfig& cfg);
Eigenpair first_eigenpair(const GridFunction& start, const FracParams& params, const SolverConfig& cfg);

/// Dense p = 2 oracle: the smallest eigenpair of the symmetric matrix A on
/// the free cells with u^T A u = E(u) h^{-N}, assembled directly from cell
/// distances. Throws InvalidInput for p != 2 or more than 4000 free cells.
Eigenpair p2_oracle(const DomainPtr& dom, const FracParams& params);

/// Dense p = 2 solve of the weak Dirichlet problem A(w) = f h^N on Omega.
GridFunction p2_dirichlet_oracle(const DomainPtr& dom, const FracParams& params, std::span<const double> f_free);

struct ClarksonSides {
  double lhs;
  double rhs;
};

/// Both sides of Clarkson's inequality in terms of [.]^p = gagliardo_energy.
/// p >= 2:     [(u-v)/2]^p + [(u+v)/2]^p <= ([u]^p + [v]^p) / 2.
/// 1 < p < 2:  [(u-v)/2]^{pe} + [(u+v)/2]^{pe} <= (([u]^p + [v]^p) / 2)^e, e = 1/(p-1).
ClarksonSides clarkson_gap(const GridFunction& u, const GridFunction& v, const FracParams& params, int threads = 1);

/// [u - v] = gagliardo_energy(u - v)^{1/p}.
double seminorm_distance(const GridFunction& u, const GridFunction& v, const FracParams& params, int threads = 1);

}  // namespace fraceig
