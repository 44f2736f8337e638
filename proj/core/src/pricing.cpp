#include "mfbs/pricing.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "mfbs/error.hpp"

namespace mfbs {
namespace {

constexpr double kDegenerateScale = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

struct Moneyness {
  double d_plus;
  double d_minus;
};

Moneyness moneyness(const OptionSpec& spec, double sigma_eff) {
  const double scale = sigma_eff * std::sqrt(spec.maturity);
  const double drift = std::log(spec.s0 / spec.strike) + spec.rate * spec.maturity;
  if (scale < kDegenerateScale) {
    const double d = drift >= 0.0 ? kInf : -kInf;
    return {d, d};
  }
  const double d_plus = (drift + 0.5 * sigma_eff * sigma_eff * spec.maturity) / scale;
  return {d_plus, d_plus - scale};
}

// Assemble the option price from CDF and survival evaluators.
template <class Cdf, class Sf>
void assemble(const OptionSpec& spec, const Moneyness& m, Cdf&& cdf, Sf&& sf,
              PriceResult& out) {
  const double s0 = spec.s0;
  const double kd = spec.discounted_strike();
  out.d_plus = m.d_plus;
  out.d_minus = m.d_minus;
  out.n_d_plus = cdf(m.d_plus);
  out.n_d_minus = cdf(m.d_minus);
  if (spec.kind == OptionKind::Call) {
    out.price = s0 * out.n_d_plus - kd * out.n_d_minus;
    out.excess_over_forward = kd * sf(m.d_minus) - s0 * sf(m.d_plus);
  } else {
    out.price = kd * cdf(-m.d_minus) - s0 * cdf(-m.d_plus);
    out.excess_over_forward = s0 * sf(-m.d_plus) - kd * sf(-m.d_minus);
  }
}

}  // namespace

void OptionSpec::validate() const {
  if (!(s0 > 0.0) || !std::isfinite(s0)) throw DomainError("S0 must be > 0");
  if (!(strike > 0.0) || !std::isfinite(strike)) {
    throw DomainError("strike K must be > 0");
  }
  if (!std::isfinite(rate)) throw DomainError("rate r must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("volatility sigma must be > 0");
  }
  if (!(maturity > 0.0) || !std::isfinite(maturity)) {
    throw DomainError("maturity T must be > 0");
  }
}

double OptionSpec::discounted_strike() const {
  return strike * std::exp(-rate * maturity);
}

PriceResult bs_closed_form(const OptionSpec& spec) {
  spec.validate();
  PriceResult out;
  out.sigma_qm = 1.0;
  out.sigma_eff = spec.sigma;
  out.normalization_c = 1.0;
  assemble(spec, moneyness(spec, spec.sigma), normal_cdf, normal_sf, out);
  return out;
}

EffectiveSigma effective_sigma(const ForceModel& model, double sigma,
                               const QuadratureConfig& cfg) {
  const auto d = Density::build(model, cfg);
  return {d.sigma_qm(), sigma * d.sigma_qm()};
}

PriceResult price(const Density& density, const OptionSpec& spec) {
  spec.validate();
  PriceResult out;
  out.sigma_qm = density.sigma_qm();
  out.sigma_eff = spec.sigma * density.sigma_qm();
  out.normalization_c = density.normalization_c();
  auto cdf = [&density](double t) {
    if (t == kInf) return 1.0;
    if (t == -kInf) return 0.0;
    return density.cdf(t);
  };
  auto sf = [&density](double t) {
    if (t == kInf) return 0.0;
    if (t == -kInf) return 1.0;
    return density.survival(t);
  };
  assemble(spec, moneyness(spec, out.sigma_eff), cdf, sf, out);
  return out;
}

PriceResult price(const ForceModel& model, const OptionSpec& spec,
                  const QuadratureConfig& cfg) {
  spec.validate();
  return price(Density::build(model, cfg), spec);
}

std::vector<CurvePoint> price_curve(const ModelTemplate& family,
                                    std::span<const double> param_grid,
                                    const OptionSpec& spec,
                                    const QuadratureConfig& cfg,
                                    unsigned threads) {
  std::vector<CurvePoint> points(param_grid.size());
  auto evaluate = [&](std::size_t i) {
    auto& p = points[i];
    p.param = param_grid[i];
    try {
      p.result = price(family(p.param), spec, cfg);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) evaluate(i);
    return points;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) evaluate(i);
      });
    }
  }
  return points;
}

std::vector<CurvePoint> price_curve(Family family,
                                    std::span<const double> param_grid,
                                    const OptionSpec& spec,
                                    const QuadratureConfig& cfg,
                                    unsigned threads) {
  return price_curve([family](double p) { return make_model(family, p); },
                     param_grid, spec, cfg, threads);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 2) throw DomainError("a grid needs at least 2 steps");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  }
  return out;
}

}  // namespace mfbs
