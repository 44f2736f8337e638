#pragma once

#include <functional>
#include <limits>

#include "mfbs/error.hpp"

namespace mfbs {

/// Integration limits. Either end may be infinite; infinite ends are
/// truncated at +-tail_cutoff, which is sound only for integrands with
/// Gaussian-dominated decay.
struct Interval {
  double lo;
  double hi;

  static constexpr double inf = std::numeric_limits<double>::infinity();
  static Interval whole_line() { return {-inf, inf}; }
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  double tail_cutoff = 12.0;
  int max_subdivisions = 60;

  /// Throws DomainError if any field violates its bound.
  void validate() const;
};

/// Thrown when the subdivision budget runs out before the tolerance is met.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : NumericError(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Thrown when the integrand returns NaN.
class IntegrandNaNError : public NumericError {
 public:
  explicit IntegrandNaNError(double abscissa);
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

struct QuadratureResult {
  double value;
  double error;
  int subdivisions;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration. The interval with the
/// largest error estimate is bisected until the summed estimate satisfies
/// err <= max(abs_tol, rel_tol * |I|). Deterministic for fixed inputs.
QuadratureResult integrate_with_error(const Integrand& f, Interval iv,
                                      const QuadratureConfig& cfg = {});

double integrate(const Integrand& f, Interval iv,
                 const QuadratureConfig& cfg = {});

}  // namespace mfbs
