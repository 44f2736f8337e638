#include <cmath>

#include <gtest/gtest.h>

#include "mfbs/calibration.hpp"

namespace {

using namespace mfbs;

struct RoundTrip {
  Family family;
  double coupling;
  double lo;
  double hi;
};

void PrintTo(const RoundTrip& r, std::ostream* os) {
  *os << to_string(r.family) << "(" << r.coupling << ") on [" << r.lo << ", " << r.hi << "]";
}

class CalibrationRoundTrip : public ::testing::TestWithParam<RoundTrip> {};

TEST_P(CalibrationRoundTrip, RecoversCoupling) {
  const auto& c = GetParam();
  const double target = price(make_model(c.family, c.coupling), {}).price;
  const double got = implied_param({c.family, {}, target, c.lo, c.hi, 1e-8});
  EXPECT_NEAR(got, c.coupling, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Branches, CalibrationRoundTrip,
                         ::testing::Values(RoundTrip{Family::Constant, 1.0, 0.0, 4.0},
                                           RoundTrip{Family::Constant, 2.5, 0.0, 4.0},
                                           RoundTrip{Family::Linear, 0.7, 0.0, 3.0},
                                           RoundTrip{Family::Well, 1.5, 1.1, 2.2},
                                           RoundTrip{Family::Quartic, 0.03, 0.0, 0.06}),
                         [](const ::testing::TestParamInfo<RoundTrip>& info) {
                           return to_string(info.param.family) + std::to_string(info.index);
                         });

TEST(Calibration, EndpointRootReturnedDirectly) {
  const double target = price(make_model(Family::Linear, 0.0), {}).price;
  EXPECT_EQ(implied_param({Family::Linear, {}, target, 0.0, 2.0, 1e-8}), 0.0);
}

TEST(Calibration, UnbracketedTargetReportsEndpointPrices) {
  try {
    implied_param({Family::Linear, {}, 5.0, 0.0, 2.0, 1e-8});
    FAIL() << "expected BracketError";
  } catch (const BracketError& e) {
    EXPECT_NEAR(e.price_lo(), 2.99515815566226, 1e-8);
    EXPECT_LT(e.price_hi(), e.price_lo());
  }
}

TEST(Calibration, InvalidRequests) {
  EXPECT_THROW(implied_param({Family::Linear, {}, 2.9, 2.0, 1.0, 1e-8}), DomainError);
  EXPECT_THROW(implied_param({Family::Linear, {}, -1.0, 0.0, 1.0, 1e-8}), DomainError);
  EXPECT_THROW(implied_param({Family::Linear, {}, 2.9, 0.0, 1.0, 0.0}), DomainError);
  EXPECT_THROW(implied_param({Family::Cubic, {}, 2.9, 0.0, 0.9, 1e-8}), DomainError);
}

}  // namespace
