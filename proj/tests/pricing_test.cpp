#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mfbs/pricing.hpp"

namespace {

using namespace mfbs;

const double kFloor = 20.0 * (1.0 - std::exp(-0.1));

OptionSpec put_spec() {
  OptionSpec s;
  s.kind = OptionKind::Put;
  return s;
}

TEST(Pricing, ReferenceCall) {
  const auto r = bs_closed_form({});
  EXPECT_NEAR(r.price, 2.99515815566226, 1e-12);
  EXPECT_NEAR(price(Baseline{}, {}).price, r.price, 1e-9);
  EXPECT_NEAR(r.d_plus, 0.525, 1e-15);
  EXPECT_NEAR(r.d_minus, 0.275, 1e-15);
}

TEST(Pricing, PutCallParity) {
  const double call = bs_closed_form({}).price;
  const double put = bs_closed_form(put_spec()).price;
  EXPECT_NEAR(call - put, kFloor, 1e-12);
  EXPECT_NEAR(kFloor, 1.9032516392808105, 1e-14);
}

TEST(Pricing, ZeroStrikeLimit) {
  OptionSpec s;
  s.strike = 1e-12;
  EXPECT_NEAR(price(Baseline{}, s).price, s.s0, 1e-9);
}

TEST(Pricing, NarrowWellSitsOnForwardFloor) {
  const auto r = price(QuantumWell{0.2}, {});
  EXPECT_NEAR(r.price, kFloor, 1e-3);
  EXPECT_GE(r.price, kFloor - 1e-9);
}

TEST(Pricing, ConstantForceStrictlyDecreasing) {
  const auto grid = linspace(0.0, 8.0, 81);
  const auto pts = price_curve(Family::Constant, grid, {});
  for (std::size_t i = 1; i < pts.size(); ++i) {
    ASSERT_TRUE(pts[i].result.has_value());
    EXPECT_LT(pts[i].result->excess_over_forward, pts[i - 1].result->excess_over_forward)
        << pts[i].param;
  }
  EXPECT_NEAR(pts.back().result->price, kFloor, 5e-3);
}

TEST(Pricing, LinearForceLowersPrice) {
  const double base = bs_closed_form({}).price;
  double prev = base;
  for (double lambda : linspace(0.1, 2.0, 20)) {
    const auto r = price(LinearForce{lambda}, {});
    EXPECT_LT(r.price, prev) << lambda;
    EXPECT_NEAR(r.sigma_qm * r.sigma_qm, 1.0 / std::sqrt(1.0 + lambda), 1e-9);
    prev = r.price;
  }
}

TEST(Pricing, SigmaEffIsProduct) {
  const auto e = effective_sigma(LinearForce{3.0}, 0.25);
  EXPECT_NEAR(e.sigma_qm, std::pow(4.0, -0.25), 1e-10);
  EXPECT_NEAR(e.sigma_eff, 0.25 * e.sigma_qm, 1e-15);
}

TEST(Pricing, InvalidSpecsRejected) {
  OptionSpec s;
  s.s0 = 0.0;
  EXPECT_THROW(price(Baseline{}, s), DomainError);
  s = {};
  s.sigma = 0.0;
  EXPECT_THROW(price(Baseline{}, s), DomainError);
  s.sigma = -0.1;
  EXPECT_THROW(price(Baseline{}, s), DomainError);
  s = {};
  s.maturity = std::nan("");
  EXPECT_THROW(price(Baseline{}, s), DomainError);
}

TEST(Pricing, VanishingVolatilityIsIntrinsicForward) {
  OptionSpec s;
  s.sigma = 1e-15;
  EXPECT_NEAR(price(Baseline{}, s).price, kFloor, 1e-12);
  s.kind = OptionKind::Put;
  EXPECT_NEAR(price(Baseline{}, s).price, 0.0, 1e-12);
}

TEST(PricingProperty, ParityAndDRelationAcrossModels) {
  for (const ForceModel& m : std::vector<ForceModel>{
           Baseline{}, LinearForce{0.4}, QuarticPotential{0.08}, QuantumWell{1.7}}) {
    const auto d = Density::build(m);
    const auto call = price(d, {});
    const auto put = price(d, put_spec());
    EXPECT_NEAR(call.price - put.price, kFloor, 2e-6) << describe(m);
    EXPECT_NEAR(call.d_minus, call.d_plus - call.sigma_eff, 1e-12);
    EXPECT_GE(call.price, std::max(0.0, kFloor) - 1e-9);
    EXPECT_LE(call.price, 20.0);
  }
}

TEST(PriceCurve, ParallelMatchesSerial) {
  const auto grid = linspace(0.1, 3.0, 30);
  const auto serial = price_curve(Family::Well, grid, {}, {}, 1);
  const auto parallel = price_curve(Family::Well, grid, {}, {}, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(serial[i].param, grid[i]);
    EXPECT_EQ(serial[i].result->price, parallel[i].result->price);
  }
}

TEST(PriceCurve, FailuresAreRecordedPerPoint) {
  const std::vector<double> grid = {0.1, 0.5, 0.1};
  const auto pts = price_curve(Family::Cubic, grid, {});
  EXPECT_TRUE(pts[0].result.has_value());
  EXPECT_FALSE(pts[1].result.has_value());
  EXPECT_FALSE(pts[1].error.empty());
  EXPECT_TRUE(pts[2].result.has_value());
}

TEST(Linspace, EndpointsAndErrors) {
  const auto g = linspace(-1.0, 1.0, 5);
  EXPECT_EQ(g.front(), -1.0);
  EXPECT_EQ(g[2], 0.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_THROW(linspace(0.0, 1.0, 1), DomainError);
}

}  // namespace
