#include "mfbs/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mfbs/error.hpp"

namespace mfbs::perturbation {
namespace {

void check_power(int p) {
  if (p < 1 || p > kMaxPerturbationPower) {
    throw DomainError("perturbation power must lie in [1, 8], got " +
                      std::to_string(p));
  }
}

// Apply (a + a^dagger)^p to |lo>, tracking amplitudes as B_k sqrt(k!/lo!)
// with integer B_k, and return B_hi.
std::int64_t ladder_count(int p, int lo, int hi) {
  std::vector<std::int64_t> b(static_cast<std::size_t>(lo + p + 2), 0);
  b[static_cast<std::size_t>(lo)] = 1;
  for (int step = 0; step < p; ++step) {
    std::vector<std::int64_t> next(b.size(), 0);
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      if (b[k] == 0) continue;
      next[k + 1] += b[k];
      if (k > 0) next[k - 1] += static_cast<std::int64_t>(k) * b[k];
    }
    b = std::move(next);
  }
  return b[static_cast<std::size_t>(hi)];
}

RationalPoly& accumulate(RationalPoly& into, const RationalPoly& term,
                         const Rational& scale) {
  if (into.size() < term.size()) into.resize(term.size(), Rational{0});
  for (std::size_t i = 0; i < term.size(); ++i) into[i] += scale * term[i];
  return into;
}

std::vector<double> hamiltonian_column(const std::vector<PolyTerm>& terms,
                                       int truncation) {
  std::vector<double> column(static_cast<std::size_t>(truncation + 1), 0.0);
  for (const auto& t : terms) {
    for (int m = 0; m <= std::min(truncation, t.power); ++m) {
      column[static_cast<std::size_t>(m)] +=
          t.coefficient * matrix_element(t.power, m, 0);
    }
  }
  return column;
}

void check_terms(const std::vector<PolyTerm>& terms,
                 const OscillatorBasis& basis) {
  int max_power = 0;
  for (const auto& t : terms) {
    check_power(t.power);
    if (!std::isfinite(t.coefficient)) {
      throw DomainError("perturbation coefficients must be finite");
    }
    max_power = std::max(max_power, t.power);
  }
  if (basis.truncation < max_power + 1) {
    throw DomainError("basis truncation must be at least max power + 1");
  }
}

void check_guard(const PerturbationExpansion& expansion) {
  const double norm = expansion.admixture_norm();
  if (norm > kAdmixtureGuard) {
    throw DomainError("perturbation exceeds the guard: first-order admixture "
                      "norm " + std::to_string(norm) + " > " +
                      std::to_string(kAdmixtureGuard));
  }
}

}  // namespace

double ExactElement::value() const {
  const double r = static_cast<double>(radicand.numerator()) /
                   static_cast<double>(radicand.denominator());
  return static_cast<double>(integer_factor) * std::sqrt(r);
}

ExactElement exact_matrix_element(int p, int n, int m) {
  check_power(p);
  if (n < 0 || m < 0) throw DomainError("oscillator indices must be >= 0");
  const int lo = std::min(n, m);
  const int hi = std::max(n, m);
  if (hi - lo > p || (p - (hi - lo)) % 2 != 0) return {};
  Rational radicand{1};
  for (int k = lo + 1; k <= hi; ++k) radicand *= k;
  return {ladder_count(p, lo, hi), radicand};
}

double matrix_element(int p, int n, int m) {
  return exact_matrix_element(p, n, m).value();
}

RationalPoly hermite_he(int n) {
  RationalPoly prev{Rational{1}};
  if (n == 0) return prev;
  RationalPoly cur{Rational{0}, Rational{1}};
  for (int k = 1; k < n; ++k) {
    RationalPoly next(cur.size() + 1, Rational{0});
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= Rational{k} * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

RationalPoly unit_bracket(int p) {
  check_power(p);
  // psi_m / psi_0 = He_m / sqrt(m!) and <m|x^p|0> = B_m sqrt(m!), so each term
  // is B_m He_m / ((E_0 - E_m) / hbar omega) = -B_m He_m / m.
  RationalPoly result(static_cast<std::size_t>(p + 1), Rational{0});
  for (int m = 1; m <= p; ++m) {
    const auto element = exact_matrix_element(p, m, 0);
    if (element.integer_factor == 0) continue;
    accumulate(result, hermite_he(m), Rational{-element.integer_factor, m});
  }
  return result;
}

double PerturbationExpansion::bracket(double x) const {
  double acc = 0.0;
  for (auto it = bracket_poly.rbegin(); it != bracket_poly.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

double PerturbationExpansion::admixture_norm() const {
  double sum = 0.0;
  for (const auto& c : basis_coeffs) sum += c.coefficient * c.coefficient;
  return std::sqrt(sum);
}

PerturbationExpansion corrected_ground_state(
    const std::vector<PolyTerm>& perturbation, const OscillatorBasis& basis) {
  check_terms(perturbation, basis);
  PerturbationExpansion out;

  const auto column = hamiltonian_column(perturbation, basis.truncation);
  for (int m = 1; m <= basis.truncation; ++m) {
    const double h = column[static_cast<std::size_t>(m)];
    if (h == 0.0) continue;
    out.basis_coeffs.push_back(
        {m, h / (OscillatorBasis::energy(0) - OscillatorBasis::energy(m))});
  }

  out.bracket_poly = {1.0};
  for (const auto& t : perturbation) {
    auto& unit = out.unit_brackets[t.power];
    if (unit.empty()) unit = unit_bracket(t.power);
    if (out.bracket_poly.size() < unit.size()) {
      out.bracket_poly.resize(unit.size(), 0.0);
    }
    const double scale = t.coefficient / kOmega;
    for (std::size_t i = 0; i < unit.size(); ++i) {
      out.bracket_poly[i] += scale * boost::rational_cast<double>(unit[i]);
    }
  }
  check_guard(out);
  return out;
}

double perturbed_energy(const std::vector<PolyTerm>& perturbation, int order,
                        const OscillatorBasis& basis) {
  if (order != 1 && order != 2) {
    throw DomainError("perturbation order must be 1 or 2");
  }
  corrected_ground_state(perturbation, basis);  // enforces the guard
  const auto column = hamiltonian_column(perturbation, basis.truncation);
  double energy = kGroundEnergy + column[0];
  if (order == 2) {
    for (int m = 1; m <= basis.truncation; ++m) {
      const double h = column[static_cast<std::size_t>(m)];
      energy += h * h / (OscillatorBasis::energy(0) - OscillatorBasis::energy(m));
    }
  }
  return energy;
}

double oscillator_eigenfunction(int n, double x) {
  if (n < 0) throw DomainError("oscillator index must be >= 0");
  const double psi0 =
      std::pow(2.0 * std::numbers::pi, -0.25) * std::exp(-0.25 * x * x);
  double prev = 0.0;
  double cur = psi0;
  for (int k = 0; k < n; ++k) {
    const double next =
        (x * cur - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace mfbs::perturbation
