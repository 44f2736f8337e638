#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mfbs/density.hpp"
#include "mfbs/perturbation.hpp"
#include "mfbs/schrodinger.hpp"

namespace {

using namespace mfbs;
using oracle::GridSpec;
using oracle::PotentialSpec;

TEST(Oracle, HarmonicGroundState) {
  const auto gs = oracle::solve_ground_state(PotentialSpec::harmonic());
  EXPECT_NEAR(gs.energy, perturbation::kGroundEnergy, 1e-6);
  EXPECT_LT(gs.residual, 1e-10);
  const auto dist = oracle::compare_density(gs, Density::build(Baseline{}));
  EXPECT_LT(dist.l1, 1e-5);
  EXPECT_LT(dist.linf, 1e-5);
}

TEST(Oracle, InfiniteWell) {
  for (double a : {0.5, 1.0, 2.0}) {
    const auto gs = oracle::solve_ground_state(PotentialSpec::hard_wall(a));
    const double exact = std::numbers::pi * std::numbers::pi / (8.0 * a * a);
    EXPECT_NEAR(gs.energy, exact, 1e-4 * exact) << a;
    EXPECT_LT(oracle::compare_density(gs, Density::build(QuantumWell{a})).l1, 1e-5);
  }
}

TEST(Oracle, ShiftedAndNarrowedOscillators) {
  const auto shifted = oracle::solve_ground_state(oracle::potential_for(ConstantForce{1.0}));
  EXPECT_NEAR(shifted.energy, 0.25 - 0.5, 1e-6);
  EXPECT_LT(oracle::compare_density(shifted, Density::build(ConstantForce{1.0})).l1, 1e-5);

  const LinearForce lin{1.5};
  const auto narrow = oracle::solve_ground_state(oracle::potential_for(lin));
  EXPECT_NEAR(narrow.energy, 0.25 * lin.lambda_w(), 1e-6);
  EXPECT_LT(oracle::compare_density(narrow, Density::build(lin)).l1, 1e-5);
}

TEST(Oracle, QuarticEnergyBetweenPerturbativeOrders) {
  const double g = 0.01;
  const auto gs = oracle::solve_ground_state(PotentialSpec::harmonic({{4, g}}));
  EXPECT_LT(gs.energy, perturbation::perturbed_energy({{4, g}}, 1));
  EXPECT_GT(gs.energy, perturbation::perturbed_energy({{4, g}}, 2));
}

TEST(Oracle, EvenPotentialGivesSymmetricDensity) {
  const auto gs = oracle::solve_ground_state(PotentialSpec::harmonic({{4, 0.02}, {2, 0.01}}));
  const std::size_t n = gs.x.size();
  for (std::size_t i = 0; i < n / 2; i += 37) {
    EXPECT_NEAR(gs.density[i], gs.density[n - 1 - i], 1e-10);
  }
}

TEST(Oracle, DensityIsNormalizedAndNonNegative) {
  const auto gs = oracle::solve_ground_state(PotentialSpec::harmonic({{3, 0.005}, {4, 0.01}}));
  double mass = 0.0;
  for (std::size_t i = 1; i < gs.x.size(); ++i) {
    EXPECT_GE(gs.density[i], 0.0);
    mass += 0.5 * (gs.density[i] + gs.density[i - 1]) * gs.spacing();
  }
  EXPECT_NEAR(mass, 1.0, 1e-12);
}

TEST(Oracle, DerivedBracketsConvergeQuadratically) {
  // The first-order density error is O(c^2): halving c quarters L1.
  for (int p : {3, 4}) {
    auto l1 = [p](double c) {
      const std::vector<PolyTerm> terms = {{p, c}};
      const auto gs = oracle::solve_ground_state(PotentialSpec::harmonic(
          {{p, c * kHbarOmega}}));
      return oracle::compare_density(gs, Density::build(PolynomialPerturbation{terms})).l1;
    };
    const double ratio = l1(0.0025) / l1(0.00125);
    EXPECT_GE(ratio, 3.0) << p;
    EXPECT_LE(ratio, 5.0) << p;
  }
}

TEST(Oracle, UnconfinedCubicIsRejected) {
  EXPECT_THROW(oracle::solve_ground_state(PotentialSpec::harmonic({{3, 0.05}})), NumericError);
}

TEST(Oracle, GridValidation) {
  EXPECT_THROW((GridSpec{12.0, 800}.validate()), DomainError);
  EXPECT_THROW((GridSpec{12.0, 4000}.validate()), DomainError);
  EXPECT_THROW((GridSpec{4.0, 4001}.validate()), DomainError);
  EXPECT_NO_THROW((GridSpec{}.validate()));
}

}  // namespace
