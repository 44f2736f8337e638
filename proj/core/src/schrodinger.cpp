#include "mfbs/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mfbs/error.hpp"

namespace mfbs::oracle {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kResidualTol = 1e-10;
constexpr double kWallMassTol = 1e-6;

// Symmetric tridiagonal matrix with constant off-diagonal.
struct Tridiagonal {
  std::vector<double> diag;
  double off;

  std::size_t size() const { return diag.size(); }

  // Number of eigenvalues strictly below `shift` (Sturm sequence).
  std::size_t count_below(double shift) const {
    constexpr double tiny = 1e-300;
    const double off2 = off * off;
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      q = diag[i] - shift - (i == 0 ? 0.0 : off2 / q);
      if (q == 0.0) q = -tiny;
      if (q < 0.0) ++count;
    }
    return count;
  }

  // Solves (A - shift I) y = rhs by Gaussian elimination without pivoting.
  std::vector<double> solve_shifted(double shift, std::vector<double> rhs) const {
    const std::size_t n = diag.size();
    std::vector<double> c(n, 0.0);
    double pivot = diag[0] - shift;
    c[0] = off / pivot;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
      pivot = diag[i] - shift - off * c[i - 1];
      c[i] = off / pivot;
      rhs[i] = (rhs[i] - off * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    return rhs;
  }

  std::vector<double> apply(const std::vector<double>& v) const {
    const std::size_t n = diag.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = diag[i] * v[i];
      if (i > 0) acc += off * v[i - 1];
      if (i + 1 < n) acc += off * v[i + 1];
      out[i] = acc;
    }
    return out;
  }

  double norm_inf() const {
    double m = 0.0;
    for (double d : diag) m = std::max(m, std::abs(d) + 2.0 * std::abs(off));
    return m;
  }
};

void normalize(std::vector<double>& v) {
  const double n = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  for (double& x : v) x /= n;
}

}  // namespace

void GridSpec::validate() const {
  if (!(half_width >= 8.0)) throw DomainError("grid half-width must be >= 8");
  if (points < 801 || points % 2 == 0) {
    throw DomainError("grid point count must be odd and >= 801");
  }
}

double PotentialSpec::operator()(double x) const {
  double v = well_half_width ? 0.0 : x * x / 8.0;
  for (const auto& t : perturbation) v += t.coefficient * std::pow(x, t.power);
  return v;
}

GroundState solve_ground_state(const PotentialSpec& potential,
                               const GridSpec& grid) {
  grid.validate();
  if (potential.well_half_width && !(*potential.well_half_width > 0.0)) {
    throw DomainError("hard-wall half-width must be > 0");
  }
  for (const auto& t : potential.perturbation) {
    if (t.power < 1 || t.power > kMaxPerturbationPower) {
      throw DomainError("potential powers must lie in [1, 8]");
    }
  }

  const double half = potential.well_half_width.value_or(grid.half_width);
  const auto n = static_cast<std::size_t>(grid.points);
  const double h = 2.0 * half / static_cast<double>(n - 1);

  GroundState gs;
  gs.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    gs.x[i] = -half + h * static_cast<double>(i);
  }
  gs.x[(n - 1) / 2] = 0.0;

  Tridiagonal mat{std::vector<double>(n - 2), -0.5 / (h * h)};
  for (std::size_t i = 0; i + 2 < n; ++i) {
    mat.diag[i] = 1.0 / (h * h) + potential(gs.x[i + 1]);
  }

  // Bisection on the Sturm count for the smallest eigenvalue.
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (double d : mat.diag) {
    lo = std::min(lo, d - 2.0 * std::abs(mat.off));
    hi = std::max(hi, d + 2.0 * std::abs(mat.off));
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mat.count_below(mid) >= 1 ? hi : lo) = mid;
  }

  // Inverse iteration from below the eigenvalue keeps every pivot positive.
  std::vector<double> v(mat.size(), 1.0);
  normalize(v);
  for (int iter = 0; iter < 4; ++iter) {
    v = mat.solve_shifted(lo, std::move(v));
    normalize(v);
  }
  const auto hv = mat.apply(v);
  gs.energy = std::inner_product(v.begin(), v.end(), hv.begin(), 0.0);
  double res2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = hv[i] - gs.energy * v[i];
    res2 += r * r;
  }
  gs.residual = std::sqrt(res2) / mat.norm_inf();
  if (!(gs.residual <= kResidualTol)) {
    std::ostringstream os;
    os << "ground-state eigenpair did not converge (relative residual "
       << gs.residual << ")";
    throw NumericError(os.str());
  }

  if (std::accumulate(v.begin(), v.end(), 0.0) < 0.0) {
    for (double& x : v) x = -x;
  }
  const double vmax = *std::max_element(v.begin(), v.end());
  for (double c : v) {
    if (c < -1e-8 * vmax) {
      throw NumericError("ground-state eigenvector has an interior sign change");
    }
  }

  gs.density.assign(n, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) gs.density[i + 1] = v[i] * v[i] / h;

  if (!potential.well_half_width) {
    double wall_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(gs.x[i]) > 0.9 * half) wall_mass += gs.density[i] * h;
    }
    if (wall_mass > kWallMassTol) {
      std::ostringstream os;
      os << "ground state is not confined: mass " << wall_mass
         << " within 10% of the walls (the potential falls below E0 = "
         << gs.energy << " toward a wall)";
      throw NumericError(os.str());
    }
  }
  return gs;
}

DensityDistance compare_density(const GroundState& gs, const Density& d) {
  const double h = gs.spacing();
  double l1 = 0.0;
  double linf = 0.0;
  for (std::size_t i = 0; i < gs.x.size(); ++i) {
    const double diff = std::abs(gs.density[i] - d(gs.x[i]));
    const double w = (i == 0 || i + 1 == gs.x.size()) ? 0.5 : 1.0;
    l1 += w * diff * h;
    linf = std::max(linf, diff);
  }
  return {l1, linf};
}

PotentialSpec potential_for(const ForceModel& model) {
  return std::visit(
      Overloaded{
          [](const Baseline&) { return PotentialSpec::harmonic(); },
          [](const ConstantForce& m) {
            return PotentialSpec::harmonic({{1, kHbarOmega * m.k}});
          },
          [](const LinearForce& m) {
            // Frequency ratio sqrt(1 + lambda) needs the x^2 coefficient
            // lambda * m omega^2 / 2 = lambda / 8.
            return PotentialSpec::harmonic({{2, m.lambda / 8.0}});
          },
          [](const CubicPotential& m) {
            return PotentialSpec::harmonic({{3, kHbarOmega * m.beta}});
          },
          [](const QuarticPotential& m) {
            return PotentialSpec::harmonic({{4, kHbarOmega * m.gamma}});
          },
          [](const QuantumWell& m) { return PotentialSpec::hard_wall(m.a); },
          [](const PolynomialPerturbation& m) {
            auto terms = m.terms;
            for (auto& t : terms) t.coefficient *= kHbarOmega;
            return PotentialSpec::harmonic(std::move(terms));
          },
      },
      model);
}

}  // namespace mfbs::oracle
