#include "mfbs/calibration.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "mfbs/error.hpp"

namespace mfbs {

double implied_param(const CalibrationRequest& req, const QuadratureConfig& cfg) {
  req.spec.validate();
  if (!(req.lo < req.hi)) {
    throw DomainError("calibration bracket requires lo < hi");
  }
  if (!std::isfinite(req.target_price) || !(req.target_price > 0.0)) {
    throw DomainError("calibration target price must be finite and positive");
  }
  if (!(req.tol > 0.0)) throw DomainError("calibration tol must be > 0");
  validate(make_model(req.family, req.lo));
  validate(make_model(req.family, req.hi));

  const double bound = req.tol * std::max(1.0, req.target_price);
  auto residual = [&](double c) {
    return price(make_model(req.family, c), req.spec, cfg).price - req.target_price;
  };

  const double r_lo = residual(req.lo);
  if (std::abs(r_lo) <= bound) return req.lo;
  const double r_hi = residual(req.hi);
  if (std::abs(r_hi) <= bound) return req.hi;
  if ((r_lo > 0.0) == (r_hi > 0.0)) {
    std::ostringstream os;
    os.precision(10);
    os << "target price " << req.target_price << " is not bracketed by "
       << to_string(req.family) << " on [" << req.lo << ", " << req.hi
       << "]: prices " << r_lo + req.target_price << " and "
       << r_hi + req.target_price;
    throw BracketError(os.str(), r_lo + req.target_price, r_hi + req.target_price);
  }

  // Stop on residual or once the bracket has collapsed to ~1e-15 relative.
  auto done = [&](double a, double b) {
    return std::abs(b - a) <= 4e-15 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  };
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(residual, req.lo, req.hi,
                                                        r_lo, r_hi, done, max_iter);
  const double r_a = residual(a);
  const double r_b = residual(b);
  const double root = std::abs(r_a) <= std::abs(r_b) ? a : b;
  const double r = std::min(std::abs(r_a), std::abs(r_b));
  if (!(r <= bound)) {
    std::ostringstream os;
    os << "calibration residual " << r << " exceeds bound " << bound
       << " at coupling " << root;
    throw NumericError(os.str());
  }
  return root;
}

}  // namespace mfbs
