#pragma once

#include <optional>
#include <vector>

#include "mfbs/density.hpp"
#include "mfbs/force_model.hpp"

namespace mfbs::oracle {

struct GridSpec {
  double half_width = 12.0;
  int points = 4001;

  /// L >= 8, n >= 801 and odd so that x = 0 is a node.
  void validate() const;
};

/// V(x) = x^2/8 + sum c_p x^p (harmonic baseline) or a hard-walled box of
/// half-width a containing sum c_p x^p. Coefficients are in oscillator
/// energy units (hbar = m = 1, omega = 1/2).
struct PotentialSpec {
  std::optional<double> well_half_width;
  std::vector<PolyTerm> perturbation;

  static PotentialSpec harmonic(std::vector<PolyTerm> perturbation = {}) {
    return {std::nullopt, std::move(perturbation)};
  }
  static PotentialSpec hard_wall(double a,
                                 std::vector<PolyTerm> perturbation = {}) {
    return {a, std::move(perturbation)};
  }

  double operator()(double x) const;
};

struct GroundState {
  double energy = 0.0;
  std::vector<double> x;
  /// |psi|^2 on the grid (walls included), trapezoid-normalized.
  std::vector<double> density;
  /// ||H v - E v||_2 / ||H||_inf for the unit eigenvector.
  double residual = 0.0;

  double spacing() const { return x.size() > 1 ? x[1] - x[0] : 0.0; }
};

/// Lowest eigenpair of -1/2 d^2/dx^2 + V discretized by second-order central
/// differences with Dirichlet walls: Sturm-sequence bisection for the
/// eigenvalue, inverse iteration for the eigenvector.
///
/// Throws NumericError if the eigenvector has an interior sign change, if the
/// residual exceeds 1e-10, or if the state is not confined away from the
/// walls of a harmonic grid (the potential drops below E0 toward a wall).
GroundState solve_ground_state(const PotentialSpec& potential,
                               const GridSpec& grid = {});

struct DensityDistance {
  double l1;
  double linf;
};

DensityDistance compare_density(const GroundState& gs, const Density& d);

/// Oracle potential matching a force model: model couplings are scaled by
/// hbar*omega into oscillator units. The linear force maps to the x^2 term
/// whose exact frequency shift equals the model's lambda_w.
PotentialSpec potential_for(const ForceModel& model);

}  // namespace mfbs::oracle
