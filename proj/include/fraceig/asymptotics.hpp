#pragma once

#include <string>
#include <vector>

#include "fraceig/eigenpair.hpp"

namespace fraceig {

struct SweepRow {
  double s = 0.0;
  double lambda = 0.0;
  double weighted_lambda = 0.0;  // (5R/2)^{sp} lambda
  double dist_to_base = 0.0;     // [u_s - u_base] in W^{min(s, s_base), p}
  int iterations = 0;
  double residual = 0.0;
  bool noise_limited = false;
  bool ok = true;
  std::string error;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // sorted by s
  double s_base = 0.0;
  double p = 0.0;
  double t = 0.0;
  double h = 0.0;
  double diameter = 0.0;
  int dim = 1;
  std::size_t violations = 0;  // weighted column drops beyond 1e-10 relative
  double worst_violation = 0.0;
};

/// Weighted-column drops between consecutive converged rows, relative to the
/// larger value, counted when they exceed `rel_tol`. Updates report.violations
/// and report.worst_violation and returns the count.
std::size_t weighted_monotonicity_violations(SweepReport& report, double rel_tol = 1e-10);

/// First eigenpairs across s at fixed p. Failed solves are kept as rows with
/// ok = false. Throws InvalidInput if an s lies outside (0,1) or s_base is not
/// in the list.
SweepReport s_sweep(const DomainPtr& dom, double p, std::vector<double> s_list, double s_base,
                    const SolverConfig& cfg);

struct LimitGap {
  double delta;
  double lambda_gap;  // |lambda(s_base +/- delta) - lambda(s_base)|
  double dist_to_base;
};
/// Rows above the base, ordered by decreasing delta.
std::vector<LimitGap> right_limit_gaps(const SweepReport& report);
/// Rows below the base, ordered by decreasing delta. Diagnostic only.
std::vector<LimitGap> left_limit_gaps(const SweepReport& report);

struct ScalingEntry {
  double factor;
  double lambda;
  double rel_error;  // |c^{sp} lambda(c Omega) / lambda(Omega) - 1|
};
struct ScalingReport {
  double base_lambda;
  std::vector<ScalingEntry> entries;
  bool passed;  // every rel_error <= 1e-10
};
ScalingReport scaling_check(const DomainPtr& dom, const FracParams& params, const std::vector<double>& factors,
                            const SolverConfig& cfg);

struct EquivalenceReport {
  double V = 0.0;  // energy on B_{4R}
  double W = 0.0;  // far field beyond B_{4R}, quadrature to 20R plus radial tail
  double W_tail = 0.0;
  double X = 0.0;  // energy on B_{3R/2}
  double Y = 0.0;  // annulus B_{4R} minus B_{3R/2}
  double ratio = 0.0;  // W / Y
  double bound = 0.0;  // 2^{sp} / ((4/5)^{sp} - (2/3)^{sp})
  bool ratio_bound_ok = false;
};
/// Splits the full-space seminorm of u into V + W and the relative one into
/// X + Y, and checks W <= bound * Y. Requires t = 4 and Omega inside B_{3R/2}.
EquivalenceReport equivalence_check(const GridFunction& u, const FracParams& params, int threads = 1);

struct ShiftQuotient {
  Index shift;
  double length;    // |shift| in length units
  double quotient;  // sum |u(x+shift) - u(x)|^p h^N / |shift|^{sp}
};
struct TranslationReport {
  std::vector<ShiftQuotient> shifts;
  double sup_quotient = 0.0;
  double energy = 0.0;
  double C_fit = 0.0;          // sup_quotient / energy
  double decade_spread = 0.0;  // max/min quotient over shifts within a decade of the shortest
  bool finite = false;
};
/// Difference quotients over lattice shifts, u extended by zero outside the ball.
/// Stability is judged by comparing C_fit across grid refinements.
TranslationReport translation_quotient_check(const GridFunction& u, const FracParams& params,
                                             const std::vector<Index>& shifts, int threads = 1);
/// Axis shifts 1, 2, 4, ... cells up to length t*R.
std::vector<Index> dyadic_shifts(const GridDomain& dom);

struct HolderReport {
  double gamma;         // s - N/p
  double sup_quotient;  // max |u_i - u_j| / |x_i - x_j|^gamma over active pairs
};
/// Throws InvalidInput unless sp > N.
HolderReport holder_report(const GridFunction& u, const FracParams& params);

}  // namespace fraceig
