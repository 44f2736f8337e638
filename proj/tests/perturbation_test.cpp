#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mfbs/error.hpp"
#include "mfbs/perturbation.hpp"

namespace {

using namespace mfbs::perturbation;
using mfbs::PolyTerm;

TEST(MatrixElements, KnownValues) {
  EXPECT_DOUBLE_EQ(matrix_element(2, 0, 0), 1.0);
  EXPECT_DOUBLE_EQ(matrix_element(1, 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(matrix_element(3, 0, 3), std::sqrt(6.0));
  EXPECT_DOUBLE_EQ(matrix_element(3, 0, 1), 3.0);
  EXPECT_DOUBLE_EQ(matrix_element(4, 0, 0), 3.0);
  EXPECT_DOUBLE_EQ(matrix_element(4, 0, 2), 6.0 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(matrix_element(4, 0, 4), std::sqrt(24.0));
}

TEST(MatrixElements, ExactFormIsCanonical) {
  const auto e = exact_matrix_element(3, 3, 0);
  EXPECT_EQ(e.integer_factor, 1);
  EXPECT_EQ(e.radicand, Rational(6));
}

TEST(MatrixElements, HermitianAndSelectionRules) {
  for (int p = 1; p <= 8; ++p) {
    for (int n = 0; n < 12; ++n) {
      for (int m = 0; m < 12; ++m) {
        const auto a = exact_matrix_element(p, n, m);
        const auto b = exact_matrix_element(p, m, n);
        EXPECT_EQ(a.integer_factor, b.integer_factor);
        EXPECT_EQ(a.radicand, b.radicand);
        if (std::abs(n - m) > p || (n - m - p) % 2 != 0) EXPECT_EQ(a.value(), 0.0);
      }
    }
  }
}

TEST(MatrixElements, RangeChecks) {
  EXPECT_THROW(exact_matrix_element(0, 0, 0), mfbs::DomainError);
  EXPECT_THROW(exact_matrix_element(9, 0, 0), mfbs::DomainError);
  EXPECT_THROW(exact_matrix_element(2, -1, 0), mfbs::DomainError);
}

TEST(Hermite, LowOrders) {
  EXPECT_EQ(hermite_he(0), (RationalPoly{Rational(1)}));
  EXPECT_EQ(hermite_he(2), (RationalPoly{Rational(-1), Rational(0), Rational(1)}));
  EXPECT_EQ(hermite_he(3), (RationalPoly{Rational(0), Rational(-3), Rational(0), Rational(1)}));
}

TEST(Hermite, EigenfunctionRatio) {
  for (int n = 0; n <= 6; ++n) {
    const auto h = hermite_he(n);
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (double x : {-1.7, 0.3, 2.2}) {
      double he = 0.0;
      for (std::size_t k = h.size(); k-- > 0;) he = he * x + boost::rational_cast<double>(h[k]);
      EXPECT_NEAR(oscillator_eigenfunction(n, x) / oscillator_eigenfunction(0, x),
                  he / std::sqrt(fact), 1e-12);
    }
  }
}

TEST(Brackets, DerivedCubic) {
  // x^3 perturbation: -(x^3/3 + 2x) per unit coupling / hbar omega.
  EXPECT_EQ(unit_bracket(3),
            (RationalPoly{Rational(0), Rational(-2), Rational(0), Rational(-1, 3)}));
}

TEST(Brackets, DerivedQuartic) {
  // x^4 perturbation: -(x^4 + 6 x^2 - 9) / 4.
  EXPECT_EQ(unit_bracket(4), (RationalPoly{Rational(9, 4), Rational(0), Rational(-3, 2),
                                           Rational(0), Rational(-1, 4)}));
}

TEST(Brackets, BasisAndPolynomialFormsAgree) {
  const std::vector<PolyTerm> terms = {{3, 0.01}, {4, -0.004}, {6, 0.0005}};
  const auto e = corrected_ground_state(terms);
  for (double x = -5.0; x <= 5.0; x += 0.25) {
    double basis = oscillator_eigenfunction(0, x);
    for (const auto& c : e.basis_coeffs) basis += c.coefficient * oscillator_eigenfunction(c.state, x);
    EXPECT_NEAR(basis / oscillator_eigenfunction(0, x), e.bracket(x), 1e-8) << x;
  }
}

TEST(Brackets, LinearInCoupling) {
  const auto a = corrected_ground_state({{4, 0.01}});
  const auto b = corrected_ground_state({{4, 0.02}});
  for (double x : {-2.0, 0.0, 1.3}) {
    EXPECT_NEAR(b.bracket(x) - 1.0, 2.0 * (a.bracket(x) - 1.0), 1e-14);
  }
  EXPECT_NEAR(b.admixture_norm(), 2.0 * a.admixture_norm(), 1e-14);
}

TEST(Brackets, GuardRejectsLargeAdmixture) {
  EXPECT_THROW(corrected_ground_state({{4, 1.0}}), mfbs::DomainError);
  EXPECT_THROW(corrected_ground_state({{9, 0.001}}), mfbs::DomainError);
}

TEST(Energy, FirstAndSecondOrder) {
  EXPECT_DOUBLE_EQ(OscillatorBasis::energy(0), kGroundEnergy);
  EXPECT_DOUBLE_EQ(perturbed_energy({}, 1), 0.25);
  const double gamma = 0.01;
  EXPECT_NEAR(perturbed_energy({{4, gamma}}, 1), 0.25 + 3.0 * gamma, 1e-15);
  EXPECT_LT(perturbed_energy({{4, gamma}}, 2), perturbed_energy({{4, gamma}}, 1));
  // Odd perturbations have no first-order shift.
  EXPECT_NEAR(perturbed_energy({{3, 0.02}}, 1), 0.25, 1e-15);
  EXPECT_LT(perturbed_energy({{3, 0.02}}, 2), 0.25);
  EXPECT_THROW(perturbed_energy({{4, gamma}}, 3), mfbs::DomainError);
}

TEST(Energy, SecondOrderQuarticClosedForm) {
  // E2 = -sum_m |<m|x^4|0>|^2 / (m omega) = -(72/2 + 24/4) / omega.
  const double g = 0.002;
  const double e2 = -g * g * (72.0 / 2.0 + 24.0 / 4.0) / kOmega;
  EXPECT_NEAR(perturbed_energy({{4, g}}, 2), 0.25 + 3.0 * g + e2, 1e-15);
}

TEST(Eigenfunctions, Orthonormal) {
  const double h = 0.01;
  for (int n = 0; n < 5; ++n) {
    for (int m = 0; m < 5; ++m) {
      double s = 0.0;
      for (double x = -14.0; x <= 14.0; x += h) {
        s += oscillator_eigenfunction(n, x) * oscillator_eigenfunction(m, x) * h;
      }
      EXPECT_NEAR(s, n == m ? 1.0 : 0.0, 1e-10) << n << "," << m;
    }
  }
}

}  // namespace
