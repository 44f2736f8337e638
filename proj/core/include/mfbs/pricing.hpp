#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfbs/density.hpp"
#include "mfbs/force_model.hpp"
#include "mfbs/quadrature.hpp"

namespace mfbs {

enum class OptionKind { Call, Put };

struct OptionSpec {
  double s0 = 20.0;
  double strike = 20.0;
  double rate = 0.10;
  double sigma = 0.25;
  double maturity = 1.0;
  OptionKind kind = OptionKind::Call;

  void validate() const;
  double discounted_strike() const;
};

struct PriceResult {
  double price = 0.0;
  double sigma_qm = 1.0;
  double sigma_eff = 0.0;
  double d_plus = 0.0;
  double d_minus = 0.0;
  double n_d_plus = 0.0;
  double n_d_minus = 0.0;
  double normalization_c = 1.0;
  /// price - (S0 - K e^{-rT}) for calls, price - (K e^{-rT} - S0) for puts,
  /// assembled from upper tails so it keeps full relative precision when the
  /// price sits on its forward bound.
  double excess_over_forward = 0.0;
};

/// Black-Scholes with the normal CDF from erfc.
PriceResult bs_closed_form(const OptionSpec& spec);

struct EffectiveSigma {
  double sigma_qm;
  double sigma_eff;
};

EffectiveSigma effective_sigma(const ForceModel& model, double sigma,
                               const QuadratureConfig& cfg = {});

/// Black-Scholes form with N replaced by the model CDF and sigma by
/// sigma_eff = sigma * sigma_qm. When sigma_eff sqrt(T) < 1e-12 the
/// deterministic limit is priced (d+- at +-infinity by the sign of
/// ln(S0/K) + rT).
PriceResult price(const Density& density, const OptionSpec& spec);
PriceResult price(const ForceModel& model, const OptionSpec& spec,
                  const QuadratureConfig& cfg = {});

struct CurvePoint {
  double param;
  std::optional<PriceResult> result;
  std::string error;
};

using ModelTemplate = std::function<ForceModel(double)>;

/// Prices every grid point independently (in parallel when `threads` > 1);
/// failures are recorded per point. Output order follows the grid.
std::vector<CurvePoint> price_curve(const ModelTemplate& family,
                                    std::span<const double> param_grid,
                                    const OptionSpec& spec,
                                    const QuadratureConfig& cfg = {},
                                    unsigned threads = 0);
std::vector<CurvePoint> price_curve(Family family,
                                    std::span<const double> param_grid,
                                    const OptionSpec& spec,
                                    const QuadratureConfig& cfg = {},
                                    unsigned threads = 0);

/// `steps` evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int steps);

}  // namespace mfbs
