#include "mfbs/density.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mfbs/perturbation.hpp"

namespace mfbs {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684759;
constexpr double kSqrt2 = std::numbers::sqrt2;

enum class Convention { Density, Amplitude };

struct KernelSpec {
  std::function<double(double)> kernel;
  Interval support;
  double center = 0.0;
  Convention convention = Convention::Density;
};

KernelSpec gaussian_bracket(std::function<double(double)> bracket) {
  return {[bracket = std::move(bracket)](double x) {
            const double b = bracket(x);
            return kInvSqrt2Pi * std::exp(-0.5 * x * x) * b * b;
          },
          Interval::whole_line(), 0.0, Convention::Amplitude};
}

KernelSpec kernel_for(const ForceModel& model) {
  return std::visit(
      Overloaded{
          [](const Baseline&) -> KernelSpec {
            return {[](double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); },
                    Interval::whole_line(), 0.0, Convention::Density};
          },
          [](const ConstantForce& m) -> KernelSpec {
            // Printed prefactor 1/(2 pi); C restores unit mass.
            const double xk = m.shift();
            return {[xk](double x) {
                      const double u = x + xk;
                      return std::exp(-0.5 * u * u) / (2.0 * std::numbers::pi);
                    },
                    Interval::whole_line(), -xk, Convention::Density};
          },
          [](const LinearForce& m) -> KernelSpec {
            const double lw = m.lambda_w();
            return {[lw](double x) {
                      return lw * kInvSqrt2Pi * std::exp(-0.5 * lw * x * x);
                    },
                    Interval::whole_line(), 0.0, Convention::Density};
          },
          [](const CubicPotential& m) -> KernelSpec {
            const double beta = m.beta;
            return gaussian_bracket([beta](double x) {
              return 1.0 - beta * (x * x * x / 3.0 + 0.5 * x);
            });
          },
          [](const QuarticPotential& m) -> KernelSpec {
            const double gamma = m.gamma;
            return gaussian_bracket([gamma](double x) {
              const double x2 = x * x;
              return 1.0 - gamma * (x2 * x2 - 9.0) / (4.0 * kSqrt2);
            });
          },
          [](const QuantumWell& m) -> KernelSpec {
            const double a = m.a;
            return {[a](double x) {
                      if (x <= -a || x >= a) return 0.0;
                      const double s = std::sin(std::numbers::pi * (x + a) / (2.0 * a));
                      return s * s / a;
                    },
                    Interval{-a, a}, 0.0, Convention::Density};
          },
          [](const PolynomialPerturbation& m) -> KernelSpec {
            auto terms = m.terms;
            for (auto& t : terms) t.coefficient *= kHbarOmega;
            auto expansion = perturbation::corrected_ground_state(terms);
            return gaussian_bracket(
                [e = std::move(expansion)](double x) { return e.bracket(x); });
          },
      },
      model);
}

}  // namespace

Density Density::build(const ForceModel& model, const QuadratureConfig& cfg) {
  cfg.validate();
  validate(model);

  auto spec = kernel_for(model);
  Density d;
  d.model_ = model;
  d.kernel_ = std::move(spec.kernel);
  d.support_ = spec.support;
  d.split_ = spec.center;
  d.window_ = std::isfinite(spec.support.lo)
                  ? spec.support
                  : Interval{spec.center - cfg.tail_cutoff,
                             spec.center + cfg.tail_cutoff};
  d.cfg_ = cfg;
  d.tail_cfg_ = cfg;
  d.tail_cfg_.abs_tol = std::numeric_limits<double>::min();
  // Windows already carry the truncation; keep quadrature from clipping them.
  d.cfg_.tail_cutoff = std::numeric_limits<double>::max();
  d.tail_cfg_.tail_cutoff = std::numeric_limits<double>::max();

  // Same integrals as cdf() at the split point, so both branches agree there.
  const double mass =
      integrate(d.kernel_, {d.window_.lo, d.split_}, d.tail_cfg_) +
      integrate(d.kernel_, {d.split_, d.window_.hi}, d.tail_cfg_);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw NumericError("density kernel for " + describe(model) +
                       " is not normalizable");
  }
  d.inverse_mass_ = 1.0 / mass;
  d.normalization_c_ = spec.convention == Convention::Amplitude
                           ? 1.0 / std::sqrt(mass)
                           : 1.0 / mass;

  const auto& kernel = d.kernel_;
  const double mean =
      d.inverse_mass_ *
      integrate([&kernel](double x) { return x * kernel(x); }, d.window_, d.cfg_);
  const double variance =
      d.inverse_mass_ * integrate(
                            [&kernel, mean](double x) {
                              const double u = x - mean;
                              return u * u * kernel(x);
                            },
                            d.window_, d.cfg_);
  if (!(variance > 0.0)) {
    throw NumericError("density for " + describe(model) +
                       " has non-positive variance");
  }
  d.moments_ = {mean, variance, std::sqrt(variance)};
  return d;
}

double Density::operator()(double x) const {
  if (!(x >= window_.lo && x <= window_.hi)) return 0.0;
  return inverse_mass_ * kernel_(x);
}

double Density::lower_mass(double t) const {
  return inverse_mass_ * integrate(kernel_, {window_.lo, t}, tail_cfg_);
}

double Density::upper_mass(double t) const {
  return inverse_mass_ * integrate(kernel_, {t, window_.hi}, tail_cfg_);
}

double Density::cdf(double t) const {
  if (std::isnan(t)) throw DomainError("cdf argument is NaN");
  if (t <= window_.lo) return 0.0;
  if (t >= window_.hi) return 1.0;
  if (t <= split_) return std::min(1.0, lower_mass(t));
  return std::max(0.0, 1.0 - upper_mass(t));
}

double Density::survival(double t) const {
  if (std::isnan(t)) throw DomainError("survival argument is NaN");
  if (t <= window_.lo) return 1.0;
  if (t >= window_.hi) return 0.0;
  if (t > split_) return std::min(1.0, upper_mass(t));
  return std::max(0.0, 1.0 - lower_mass(t));
}

Density build_density(const ForceModel& model, const QuadratureConfig& cfg) {
  return Density::build(model, cfg);
}

double density_at(const Density& d, double x) { return d(x); }

double cdf(const Density& d, double t) { return d.cdf(t); }

Moments moments(const Density& d) { return d.moments(); }

}  // namespace mfbs
