#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/rational.hpp>

#include "mfbs/force_model.hpp"

namespace mfbs::perturbation {

using Rational = boost::rational<std::int64_t>;

// Oscillator units: hbar = m = 1, omega = 1/2, so alpha^2 = m omega / hbar =
// 1/2 and x = (a + a^dagger) / (sqrt(2) alpha) = a + a^dagger.
inline constexpr double kOmega = 0.5;
inline constexpr double kGroundEnergy = 0.25;

struct OscillatorBasis {
  int truncation = 24;

  /// E_n = hbar omega (n + 1/2).
  static double energy(int n) { return kOmega * (n + 0.5); }
};

/// <n| x^p |m> = integer_factor * sqrt(radicand) exactly.
struct ExactElement {
  std::int64_t integer_factor = 0;
  Rational radicand{0};

  double value() const;
};

/// Exact <n| x^p |m> from the ladder-operator expansion of (a + a^dagger)^p.
/// Throws DomainError for p outside [1, 8] or negative indices.
ExactElement exact_matrix_element(int p, int n, int m);

double matrix_element(int p, int n, int m);

/// Polynomial with exact rational coefficients, index = power of x.
using RationalPoly = std::vector<Rational>;

/// Probabilists' Hermite polynomial He_n, so that psi_n / psi_0 =
/// He_n(x) / sqrt(n!) for the alpha = 1/sqrt(2) oscillator.
RationalPoly hermite_he(int n);

struct BasisCoefficient {
  int state;
  double coefficient;
};

/// First-order corrected ground state
///   psi_0 + sum'_m H'_m0 / (E_0 - E_m) psi_m
/// in two equivalent forms: Hermite-basis coefficients and the position-space
/// bracket psi / psi_0.
struct PerturbationExpansion {
  std::vector<BasisCoefficient> basis_coeffs;
  /// Bracket coefficients by power of x; bracket_poly[0] includes the leading 1.
  std::vector<double> bracket_poly;
  /// Exact bracket shape for each perturbing power p: the bracket equals
  /// 1 + sum_p (c_p / hbar omega) * unit_brackets[p](x).
  std::map<int, RationalPoly> unit_brackets;

  double bracket(double x) const;
  /// sqrt(sum_m coefficient^2), the norm of the first-order admixture.
  double admixture_norm() const;
};

/// `perturbation` holds Hamiltonian coefficients in oscillator energy units.
PerturbationExpansion corrected_ground_state(
    const std::vector<PolyTerm>& perturbation,
    const OscillatorBasis& basis = {});

/// Exact unit bracket for x^p: sum_m <m|x^p|0> psi_m / ((E_0 - E_m)/hbar omega).
RationalPoly unit_bracket(int p);

/// Ground-state energy through first (order = 1) or second (order = 2) order.
double perturbed_energy(const std::vector<PolyTerm>& perturbation, int order,
                        const OscillatorBasis& basis = {});

/// Normalized oscillator eigenfunction psi_n(x) (three-term recurrence).
double oscillator_eigenfunction(int n, double x);

}  // namespace mfbs::perturbation
