#include "fraceig/params.hpp"

#include <cmath>

namespace fraceig {

FracParams::FracParams(double s, double p, double t) : s_(s), p_(p), t_(t) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidInput("s must lie in (0,1)");
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("p must be finite and > 1");
  if (!(t > 1.0) || !std::isfinite(t)) throw InvalidInput("t must be finite and > 1");
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidInput("tol must be > 0");
  if (!(inner_tol > 0.0)) throw InvalidInput("inner_tol must be > 0");
  if (max_iter_outer < 1 || max_iter_inner < 1) throw InvalidInput("iteration caps must be >= 1");
  if (threads < 1) throw InvalidInput("threads must be >= 1");
}

}  // namespace fraceig
