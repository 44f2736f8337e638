#pragma once

#include "mfbs/force_model.hpp"
#include "mfbs/pricing.hpp"

namespace mfbs {

struct CalibrationRequest {
  Family family = Family::Constant;
  OptionSpec spec;
  double target_price = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  double tol = 1e-8;
};

/// Thrown when the bracket does not straddle the target price.
class BracketError : public DomainError {
 public:
  BracketError(const std::string& what, double price_lo, double price_hi)
      : DomainError(what), price_lo_(price_lo), price_hi_(price_hi) {}

  double price_lo() const { return price_lo_; }
  double price_hi() const { return price_hi_; }

 private:
  double price_lo_;
  double price_hi_;
};

/// Implied force coupling: c* in [lo, hi] with
/// |price(family(c*)) - target| <= tol * max(1, target).
///
/// Uses a bracketing root search (TOMS 748), so the price residual must
/// change sign on [lo, hi]. For the non-monotone quartic family the caller
/// must pick a bracket inside one monotone branch; otherwise either a
/// BracketError or a root on either branch comes back.
double implied_param(const CalibrationRequest& req,
                     const QuadratureConfig& cfg = {});

}  // namespace mfbs
