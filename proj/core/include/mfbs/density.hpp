#pragma once

#include <functional>

#include "mfbs/force_model.hpp"
#include "mfbs/quadrature.hpp"

namespace mfbs {

struct Moments {
  double mean;
  double variance;
  double sigma_qm;
};

/// Normalized ground-state density P(x) = |psi(x)|^2 of a force model.
///
/// The kernel is the printed, unnormalized form of each family. Amplitude
/// families (cubic, quartic, polynomial) normalize as P = C^2 * kernel, the
/// others as P = C * kernel; C is always recomputed by quadrature. The density
/// is truncated to a finite integration window (the support for the well,
/// center +- tail_cutoff otherwise) and is exactly zero outside it.
///
/// Immutable after construction; all queries are safe to share across threads.
class Density {
 public:
  /// Throws DomainError on guard violations and NumericError if the kernel
  /// cannot be normalized.
  static Density build(const ForceModel& model,
                       const QuadratureConfig& cfg = {});

  const ForceModel& model() const { return model_; }
  /// Mathematical support; infinite ends for the Gaussian families.
  Interval support() const { return support_; }
  /// Finite integration window.
  Interval window() const { return window_; }
  /// Normalization constant in the family's printed convention.
  double normalization_c() const { return normalization_c_; }
  double mean() const { return moments_.mean; }
  double variance() const { return moments_.variance; }
  double sigma_qm() const { return moments_.sigma_qm; }
  const Moments& moments() const { return moments_; }

  double operator()(double x) const;

  /// P(X <= t); 0 below the window, 1 above it.
  double cdf(double t) const;
  /// P(X > t), integrated directly so that small upper tails keep their
  /// relative accuracy.
  double survival(double t) const;

 private:
  Density() = default;

  double lower_mass(double t) const;
  double upper_mass(double t) const;

  ForceModel model_;
  std::function<double(double)> kernel_;
  Interval support_{};
  Interval window_{};
  double split_ = 0.0;
  double inverse_mass_ = 1.0;
  double normalization_c_ = 1.0;
  Moments moments_{};
  QuadratureConfig cfg_{};
  QuadratureConfig tail_cfg_{};
};

Density build_density(const ForceModel& model, const QuadratureConfig& cfg = {});
double density_at(const Density& d, double x);
double cdf(const Density& d, double t);
Moments moments(const Density& d);

}  // namespace mfbs
