#include "mfbs/force_model.hpp"

#include <cmath>
#include <sstream>

#include "mfbs/error.hpp"
#include "mfbs/perturbation.hpp"

namespace mfbs {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

std::vector<PolyTerm> to_hamiltonian_units(const std::vector<PolyTerm>& terms) {
  std::vector<PolyTerm> out = terms;
  for (auto& t : out) t.coefficient *= kHbarOmega;
  return out;
}

}  // namespace

double LinearForce::lambda_w() const { return std::sqrt(1.0 + lambda); }

void validate(const ForceModel& model) {
  std::visit(
      Overloaded{
          [](const Baseline&) {},
          [](const ConstantForce& m) {
            require_finite(m.k, "constant force k");
            if (m.k < 0.0) throw DomainError("constant force requires k >= 0");
          },
          [](const LinearForce& m) {
            require_finite(m.lambda, "linear force lambda");
            if (m.lambda < 0.0) {
              throw DomainError("linear force requires lambda >= 0");
            }
          },
          [](const CubicPotential& m) {
            require_finite(m.beta, "cubic beta");
            if (std::abs(m.beta) > kCubicGuard) {
              throw DomainError("cubic coupling exceeds the perturbation guard "
                                "|beta| <= 0.3");
            }
          },
          [](const QuarticPotential& m) {
            require_finite(m.gamma, "quartic gamma");
            if (std::abs(m.gamma) > kQuarticGuard) {
              throw DomainError("quartic coupling exceeds the perturbation "
                                "guard |gamma| <= 0.2");
            }
          },
          [](const QuantumWell& m) {
            require_finite(m.a, "well half-width a");
            if (!(m.a > 0.0)) {
              throw DomainError("quantum well requires half-width a > 0");
            }
          },
          [](const PolynomialPerturbation& m) {
            perturbation::corrected_ground_state(to_hamiltonian_units(m.terms));
          },
      },
      model);
}

std::string family_name(const ForceModel& model) {
  return std::visit(Overloaded{
                        [](const Baseline&) { return "baseline"; },
                        [](const ConstantForce&) { return "constant"; },
                        [](const LinearForce&) { return "linear"; },
                        [](const CubicPotential&) { return "cubic"; },
                        [](const QuarticPotential&) { return "quartic"; },
                        [](const QuantumWell&) { return "well"; },
                        [](const PolynomialPerturbation&) { return "poly"; },
                    },
                    model);
}

std::string describe(const ForceModel& model) {
  std::ostringstream os;
  os << family_name(model);
  std::visit(Overloaded{
                 [](const Baseline&) {},
                 [&os](const ConstantForce& m) { os << "(x_k=" << m.shift() << ")"; },
                 [&os](const LinearForce& m) { os << "(lambda=" << m.lambda << ")"; },
                 [&os](const CubicPotential& m) { os << "(beta=" << m.beta << ")"; },
                 [&os](const QuarticPotential& m) { os << "(gamma=" << m.gamma << ")"; },
                 [&os](const QuantumWell& m) { os << "(a=" << m.a << ")"; },
                 [&os](const PolynomialPerturbation& m) {
                   os << "(";
                   for (std::size_t i = 0; i < m.terms.size(); ++i) {
                     if (i) os << ",";
                     os << m.terms[i].coefficient << "*x^" << m.terms[i].power;
                   }
                   os << ")";
                 },
             },
             model);
  return os.str();
}

ForceModel make_model(Family family, double param) {
  switch (family) {
    case Family::Baseline: return Baseline{};
    case Family::Constant: return ConstantForce::from_shift(param);
    case Family::Linear: return LinearForce{param};
    case Family::Cubic: return CubicPotential{param};
    case Family::Quartic: return QuarticPotential{param};
    case Family::Well: return QuantumWell{param};
  }
  throw DomainError("unknown force family");
}

Family parse_family(const std::string& name) {
  if (name == "baseline") return Family::Baseline;
  if (name == "constant") return Family::Constant;
  if (name == "linear") return Family::Linear;
  if (name == "cubic") return Family::Cubic;
  if (name == "quartic") return Family::Quartic;
  if (name == "well") return Family::Well;
  throw DomainError("unknown force family '" + name + "'");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::Baseline: return "baseline";
    case Family::Constant: return "constant";
    case Family::Linear: return "linear";
    case Family::Cubic: return "cubic";
    case Family::Quartic: return "quartic";
    case Family::Well: return "well";
  }
  return "unknown";
}

}  // namespace mfbs
