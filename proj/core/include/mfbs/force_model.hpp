#pragma once

#include <string>
#include <variant>
#include <vector>

namespace mfbs {

/// Couplings are dimensionless: the oscillator quantum hbar*omega is absorbed,
/// so a model coupling c stands for the Hamiltonian term (c * hbar*omega) x^p.
inline constexpr double kHbarOmega = 0.5;

/// No market force: the standard normal density of Black-Scholes.
struct Baseline {};

/// Constant force F = -k, potential V = k x. The density is the Gaussian
/// shifted left by x_k = 2k.
struct ConstantForce {
  double k = 0.0;

  double shift() const { return 2.0 * k; }
  static ConstantForce from_shift(double x_k) { return {0.5 * x_k}; }
};

/// Linear force F = -2 lambda x, potential V = lambda x^2 (lambda in units of
/// omega). Narrows the Gaussian to variance 1/lambda_w with
/// lambda_w = sqrt(1 + lambda).
struct LinearForce {
  double lambda = 0.0;

  double lambda_w() const;
};

/// Cubic potential V = beta x^3, first-order perturbative ground state.
struct CubicPotential {
  double beta = 0.0;
};

/// Quartic potential V = gamma x^4, first-order perturbative ground state.
struct QuarticPotential {
  double gamma = 0.0;
};

/// Infinite square well of half-width a (a trading band).
struct QuantumWell {
  double a = 1.0;
};

struct PolyTerm {
  int power;
  double coefficient;
};

/// Arbitrary polynomial perturbation sum_p c_p x^p, p in [1, 8], built from
/// the first-order corrected ground state of the perturbation module.
struct PolynomialPerturbation {
  std::vector<PolyTerm> terms;
};

using ForceModel =
    std::variant<Baseline, ConstantForce, LinearForce, CubicPotential,
                 QuarticPotential, QuantumWell, PolynomialPerturbation>;

inline constexpr double kCubicGuard = 0.3;
inline constexpr double kQuarticGuard = 0.2;
/// Largest first-order admixture norm accepted for polynomial perturbations;
/// the named families reach 0.933 (cubic) and 0.884 (quartic) at their guards.
inline constexpr double kAdmixtureGuard = 0.94;
inline constexpr int kMaxPerturbationPower = 8;

/// Throws DomainError naming the violated bound.
void validate(const ForceModel& model);

/// Short identifier used by the CLI ("baseline", "constant", ...).
std::string family_name(const ForceModel& model);

/// Human-readable description, e.g. "cubic(beta=0.1)".
std::string describe(const ForceModel& model);

/// One-parameter families, used by curves and calibration.
enum class Family { Baseline, Constant, Linear, Cubic, Quartic, Well };

/// The model of `family` at coupling `param`. The constant family is
/// parameterized by its shift x_k.
ForceModel make_model(Family family, double param);

Family parse_family(const std::string& name);
std::string to_string(Family family);

}  // namespace mfbs
