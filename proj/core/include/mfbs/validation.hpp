#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mfbs/force_model.hpp"
#include "mfbs/quadrature.hpp"

namespace mfbs::validation {

struct Check {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

struct Options {
  /// Oracle grid size; oracle tolerances scale with (h / h_default)^2 when
  /// the grid is coarser than the default 4001 points.
  int grid_points = 4001;
  QuadratureConfig quadrature{};
};

/// Full acceptance battery, one Check per criterion, in order.
std::vector<Check> run_acceptance(const Options& options = {});

/// Oracle comparison for a single family at `coupling` (and at 2*coupling
/// when that is inside the guard). Fails on guard violations.
Check validate_family(Family family, double coupling, const Options& options = {});

/// Writes "[PASS] C<id> <name>: <detail>" lines; returns true iff all passed.
bool report(const std::vector<Check>& checks, std::ostream& out);

}  // namespace mfbs::validation
