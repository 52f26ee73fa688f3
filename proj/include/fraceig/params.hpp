#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fraceig {

/// Bad user input: malformed spec, out-of-range exponent, host mismatch.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver hit its iteration cap before meeting tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent triple (s, p, t) for the truncated Gagliardo energy.
///
/// `s` is the differentiability order, `p` the integrability exponent and
/// `t` the diameter factor of the relative ball B_{tR}(Omega).
class FracParams {
 public:
  /// Throws InvalidInput unless 0 < s < 1, p > 1 and t > 1.
  FracParams(double s, double p, double t = 4.0);

  double s() const { return s_; }
  double p() const { return p_; }
  double t() const { return t_; }
  /// Conjugate exponent, 1/p + 1/q = 1.
  double q() const { return p_ / (p_ - 1.0); }
  double sp() const { return s_ * p_; }

  FracParams with_s(double s) const { return {s, p_, t_}; }

 private:
  double s_;
  double p_;
  double t_;
};

struct SolverConfig {
  double tol = 1e-8;
  double inner_tol = 1e-10;
  int max_iter_outer = 500;
  int max_iter_inner = 10000;
  std::uint64_t seed = 42;
  int threads = 1;

  /// Throws InvalidInput when a tolerance or iteration cap is out of range.
  void validate() const;
};

}  // namespace fraceig
