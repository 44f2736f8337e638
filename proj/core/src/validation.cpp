#include "mfbs/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "mfbs/calibration.hpp"
#include "mfbs/density.hpp"
#include "mfbs/perturbation.hpp"
#include "mfbs/pricing.hpp"
#include "mfbs/schrodinger.hpp"

namespace mfbs::validation {
namespace {

constexpr int kDefaultGridPoints = 4001;

// Reference contract: r = 10%, S0 = 20, K = 20, T = 1, sigma = 25%.
OptionSpec caption_spec(OptionKind kind = OptionKind::Call) {
  return {20.0, 20.0, 0.10, 0.25, 1.0, kind};
}

double forward_floor() { return 20.0 * (1.0 - std::exp(-0.1)); }

double grid_scale(const Options& o) {
  const double ratio = static_cast<double>(kDefaultGridPoints - 1) / (o.grid_points - 1);
  return std::max(1.0, ratio * ratio);
}

oracle::GridSpec grid(const Options& o) { return {12.0, o.grid_points}; }

Check make(int id, std::string name) { return {id, std::move(name), true, {}}; }

void note(Check& c, bool ok, const std::string& text) {
  c.passed = c.passed && ok;
  if (!c.detail.empty()) c.detail += "; ";
  c.detail += (ok ? "" : "FAILED ") + text;
}

double erf_call(const OptionSpec& s) {
  auto n = [](double x) { return 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2)); };
  const double vol = s.sigma * std::sqrt(s.maturity);
  const double dp = (std::log(s.s0 / s.strike) + (s.rate + 0.5 * s.sigma * s.sigma) * s.maturity) / vol;
  return s.s0 * n(dp) - s.strike * std::exp(-s.rate * s.maturity) * n(dp - vol);
}

Check bs_reduction(const Options& o) {
  auto c = make(1, "bs-reduction");
  const auto spec = caption_spec();
  const double bs = bs_closed_form(spec).price;
  const double oracle = erf_call(spec);
  note(c, std::abs(bs - oracle) <= 1e-10,
       fmt::format("closed form {:.12f} vs erf oracle {:.12f}", bs, oracle));
  const std::vector<ForceModel> zeros = {
      Baseline{},          ConstantForce{0.0},
      LinearForce{0.0},    CubicPotential{0.0},
      QuarticPotential{0.0}, PolynomialPerturbation{{{3, 0.0}, {4, 0.0}}},
      QuantumWell{12.0}};
  for (const auto& m : zeros) {
    const double p = price(m, spec, o.quadrature).price;
    note(c, std::abs(p - bs) <= 1e-6, fmt::format("{} {:.9f}", describe(m), p));
  }
  return c;
}

Check constant_force(const Options& o) {
  auto c = make(2, "constant-force-monotone");
  const auto grid_xk = linspace(0.0, 8.0, 81);
  const auto pts = price_curve(Family::Constant, grid_xk, caption_spec(), o.quadrature);
  bool strict = true;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!pts[i].result || !pts[i - 1].result) {
      strict = false;
      continue;
    }
    strict = strict && pts[i].result->excess_over_forward <
                           pts[i - 1].result->excess_over_forward;
  }
  note(c, strict, "call strictly decreasing over x_k in [0, 8] (81 points)");
  const double last = pts.back().result ? pts.back().result->price : NAN;
  note(c, std::abs(last - forward_floor()) <= 5e-3,
       fmt::format("price(x_k=8) = {:.8f} vs {:.8f}", last, forward_floor()));
  return c;
}

Check linear_force(const Options& o) {
  auto c = make(3, "linear-force");
  const auto spec = caption_spec();
  const double base = price(LinearForce{0.0}, spec, o.quadrature).price;
  double worst_var = 0.0;
  bool below = true;
  for (double lambda : linspace(0.1, 2.0, 20)) {
    const LinearForce m{lambda};
    const auto d = Density::build(m, o.quadrature);
    worst_var = std::max(worst_var, std::abs(d.variance() - 1.0 / m.lambda_w()));
    below = below && price(d, spec).price < base;
  }
  note(c, worst_var <= 1e-6, fmt::format("max |sigma_qm^2 - 1/lambda_w| = {:.2e}", worst_var));
  note(c, below, fmt::format("call below lambda=0 price {:.6f} for lambda in (0, 2]", base));
  return c;
}

Check quantum_well(const Options& o) {
  auto c = make(4, "quantum-well-floor");
  const auto grid_a = linspace(0.1, 3.0, 59);
  const auto pts = price_curve(Family::Well, grid_a, caption_spec(), o.quadrature);
  const double floor = forward_floor();
  bool monotone = true;
  double first_drop = NAN;
  bool plateau = true;
  double lowest = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double p = pts[i].result ? pts[i].result->price : NAN;
    lowest = std::min(lowest, p);
    if (pts[i].param <= 0.2 + 1e-12) plateau = plateau && std::abs(p - floor) <= 1e-3;
    if (i > 0 && pts[i - 1].result && !(p >= pts[i - 1].result->price - 1e-12)) {
      if (monotone) first_drop = pts[i].param;
      monotone = false;
    }
  }
  note(c, monotone,
       monotone ? std::string("call nondecreasing over a in [0.1, 3]")
                : fmt::format("call nondecreasing over a in [0.1, 3] (first decrease at a = {:.2f})",
                              first_drop));
  note(c, plateau, "price within 1e-3 of S0 - K e^{-rT} for a <= 0.2");
  note(c, lowest >= floor - 1e-6, fmt::format("minimum price {:.8f}", lowest));
  return c;
}

Check perturbation_scaling(const Options& o) {
  auto c = make(5, "perturbative-density-vs-oracle");
  const std::vector<std::pair<std::string, Family>> families = {
      {"beta", Family::Cubic}, {"gamma", Family::Quartic}};
  for (const auto& [label, family] : families) {
    try {
      double l1[2];
      for (int k = 0; k < 2; ++k) {
        const double coupling = 0.05 * (k + 1);
        const auto model = make_model(family, coupling);
        const auto gs = oracle::solve_ground_state(oracle::potential_for(model), grid(o));
        l1[k] = oracle::compare_density(gs, Density::build(model, o.quadrature)).l1;
      }
      const double ratio = l1[1] / l1[0];
      note(c, l1[0] < 5e-3, fmt::format("{} L1(0.05) = {:.3e}", label, l1[0]));
      note(c, ratio >= 3.0 && ratio <= 5.0, fmt::format("{} doubling ratio {:.3f}", label, ratio));
    } catch (const std::exception& e) {
      note(c, false, fmt::format("{}: {}", label, e.what()));
    }
  }
  return c;
}

Check oracle_exactness(const Options& o) {
  auto c = make(6, "oracle-exactness");
  const double s = grid_scale(o);
  const auto harmonic = oracle::PotentialSpec::harmonic();
  const auto well = oracle::PotentialSpec::hard_wall(1.0);
  const double well_exact = std::numbers::pi * std::numbers::pi / 8.0;
  const double e_h = oracle::solve_ground_state(harmonic, grid(o)).energy - 0.25;
  const double e_w = oracle::solve_ground_state(well, grid(o)).energy - well_exact;
  note(c, std::abs(e_h) <= 1e-6 * s, fmt::format("harmonic E0 error {:.2e}", e_h));
  note(c, std::abs(e_w) <= 1e-4 * s, fmt::format("well E0 error {:.2e}", e_w));

  const oracle::GridSpec fine{12.0, 2 * o.grid_points - 1};
  const double r_h = e_h / (oracle::solve_ground_state(harmonic, fine).energy - 0.25);
  const double r_w = e_w / (oracle::solve_ground_state(well, fine).energy - well_exact);
  note(c, r_h >= 3.5 && r_h <= 4.5, fmt::format("harmonic halving ratio {:.3f}", r_h));
  note(c, r_w >= 3.5 && r_w <= 4.5, fmt::format("well halving ratio {:.3f}", r_w));
  return c;
}

std::string poly_string(const perturbation::RationalPoly& p) {
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i].numerator() == 0) continue;
    if (!out.empty()) out += " ";
    out += fmt::format("{}{}/{}", p[i].numerator() < 0 ? "-" : "+", std::abs(p[i].numerator()),
                       p[i].denominator());
    if (i > 0) out += fmt::format("x^{}", i);
  }
  return out;
}

Check bracket_fixtures() {
  auto c = make(7, "bracket-fixtures");
  using perturbation::Rational;
  // Printed brackets with hbar*omega absorbed: -(x^3/3 + x/2) and
  // -(x^4 - 9)/(4 sqrt 2).
  const auto cubic = perturbation::unit_bracket(3);
  const bool cubic_ok = cubic.size() == 4 && cubic[3] == Rational(-1, 3) &&
                        cubic[1] == Rational(-1, 2) && cubic[0].numerator() == 0 && cubic[2].numerator() == 0;
  note(c, cubic_ok, fmt::format("cubic derived [{}] vs printed [-1/3x^3 -1/2x^1]",
                                poly_string(cubic)));

  const auto quartic = perturbation::unit_bracket(4);
  const double printed = 1.0 / (4.0 * std::numbers::sqrt2);
  std::vector<double> want = {9.0 * printed, 0.0, 0.0, 0.0, -printed};
  bool quartic_ok = quartic.size() == want.size();
  for (std::size_t i = 0; quartic_ok && i < want.size(); ++i) {
    quartic_ok = boost::rational_cast<double>(quartic[i]) == want[i];
  }
  note(c, quartic_ok,
       fmt::format("quartic derived [{}] vs printed [-x^4 + 9]/(4 sqrt2)", poly_string(quartic)));
  return c;
}

Check invariant_suites(const Options& o) {
  auto c = make(8, "invariant-suites");
  const std::vector<ForceModel> models = {
      Baseline{},         ConstantForce::from_shift(1.5), LinearForce{0.7},
      CubicPotential{0.2}, QuarticPotential{-0.1},        QuantumWell{1.3},
      PolynomialPerturbation{{{3, 0.05}, {4, 0.03}}}};

  double worst_norm = 0.0;
  bool monotone = true;
  bool limits = true;
  for (const auto& m : models) {
    const auto d = Density::build(m, o.quadrature);
    const auto w = d.window();
    QuadratureConfig tight = o.quadrature;
    tight.abs_tol = 1e-13;
    tight.max_subdivisions = 200;
    tight.tail_cutoff = 1e300;
    const double mass = integrate([&d](double x) { return d(x); }, w, tight);
    worst_norm = std::max(worst_norm, std::abs(mass - 1.0));
    double prev = -1.0;
    for (double t : linspace(w.lo - 1.0, w.hi + 1.0, 1000)) {
      const double v = d.cdf(t);
      monotone = monotone && v >= prev && v >= 0.0 && v <= 1.0;
      prev = v;
    }
    limits = limits && d.cdf(w.lo) == 0.0 && d.cdf(w.hi) == 1.0;
  }
  note(c, worst_norm <= 1e-8, fmt::format("normalization max error {:.2e}", worst_norm));
  note(c, monotone, "CDF nondecreasing on 1000-point grids");
  note(c, limits, "CDF limits 0 and 1");

  const std::vector<ForceModel> symmetric = {Baseline{}, LinearForce{0.7},
                                             QuarticPotential{0.1}, QuantumWell{1.5}};
  double worst_parity = 0.0;
  double worst_d = 0.0;
  const double forward = 20.0 - 20.0 * std::exp(-0.1);
  for (const auto& m : symmetric) {
    const auto d = Density::build(m, o.quadrature);
    const auto call = price(d, caption_spec(OptionKind::Call));
    const auto put = price(d, caption_spec(OptionKind::Put));
    worst_parity = std::max(worst_parity, std::abs(call.price - put.price - forward));
    for (const auto& r : {call, put}) {
      worst_d = std::max(worst_d, std::abs(r.d_minus - (r.d_plus - r.sigma_eff)));
    }
  }
  for (const auto& m : models) {
    const auto r = price(m, caption_spec(), o.quadrature);
    worst_d = std::max(worst_d, std::abs(r.d_minus - (r.d_plus - r.sigma_eff)));
  }
  note(c, worst_parity <= 2e-6, fmt::format("parity max error {:.2e}", worst_parity));
  note(c, worst_d <= 1e-12, fmt::format("d relation max error {:.2e}", worst_d));
  return c;
}

Check calibration_round_trips(const Options& o) {
  auto c = make(9, "calibration-round-trips");
  struct Branch {
    Family family;
    double lo;
    double hi;
    std::vector<double> couplings;
  };
  const std::vector<Branch> branches = {
      {Family::Constant, 0.0, 4.0, {0.5, 1.0, 1.5, 2.0, 3.0}},
      {Family::Linear, 0.0, 3.0, {0.2, 0.5, 1.0, 1.5, 2.0}},
      {Family::Well, 1.1, 2.2, {1.2, 1.4, 1.6, 1.8, 2.0}}};
  for (const auto& b : branches) {
    double worst = 0.0;
    try {
      for (double coupling : b.couplings) {
        const double target = price(make_model(b.family, coupling), caption_spec(), o.quadrature).price;
        const double got = implied_param({b.family, caption_spec(), target, b.lo, b.hi, 1e-8}, o.quadrature);
        worst = std::max(worst, std::abs(got - coupling));
      }
      note(c, worst <= 1e-6, fmt::format("{} max error {:.2e}", to_string(b.family), worst));
    } catch (const std::exception& e) {
      note(c, false, fmt::format("{}: {}", to_string(b.family), e.what()));
    }
  }
  return c;
}

Check quartic_curve(const Options& o) {
  auto c = make(10, "quartic-curve-minimum");
  const auto gammas = linspace(0.01, 0.12, 111);
  const auto pts = price_curve(Family::Quartic, gammas, caption_spec(), o.quadrature);
  std::size_t best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].result && pts[i].result->price < pts[best].result->price) best = i;
  }
  const bool interior = best > 0 && best + 1 < pts.size();
  note(c, interior,
       fmt::format("interior minimum at gamma = {:.3f} (price {:.6f}); expected near 0.063",
                   pts[best].param, pts[best].result->price));
  return c;
}

}  // namespace

std::vector<Check> run_acceptance(const Options& options) {
  oracle::GridSpec{12.0, options.grid_points}.validate();
  options.quadrature.validate();
  return {bs_reduction(options),         constant_force(options),
          linear_force(options),         quantum_well(options),
          perturbation_scaling(options), oracle_exactness(options),
          bracket_fixtures(),           invariant_suites(options),
          calibration_round_trips(options), quartic_curve(options)};
}

Check validate_family(Family family, double coupling, const Options& options) {
  auto c = make(0, fmt::format("{}-oracle", to_string(family)));
  try {
    const auto model = make_model(family, coupling);
    const auto gs = oracle::solve_ground_state(oracle::potential_for(model), grid(options));
    const auto dist = oracle::compare_density(gs, Density::build(model, options.quadrature));
    note(c, dist.l1 < 5e-3,
         fmt::format("coupling {} E0 {:.8f} L1 {:.3e} Linf {:.3e}", coupling, gs.energy,
                     dist.l1, dist.linf));
    const auto doubled = make_model(family, 2.0 * coupling);
    bool in_guard = true;
    try {
      validate(doubled);
    } catch (const DomainError&) {
      in_guard = false;
    }
    const bool perturbative = family == Family::Cubic || family == Family::Quartic;
    if (perturbative && in_guard && coupling != 0.0) {
      const auto gs2 = oracle::solve_ground_state(oracle::potential_for(doubled), grid(options));
      const double l1_2 = oracle::compare_density(gs2, Density::build(doubled, options.quadrature)).l1;
      const double ratio = l1_2 / dist.l1;
      note(c, ratio >= 3.0 && ratio <= 5.0, fmt::format("doubling ratio {:.3f}", ratio));
    }
  } catch (const std::exception& e) {
    note(c, false, e.what());
  }
  return c;
}

bool report(const std::vector<Check>& checks, std::ostream& out) {
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    out << (c.passed ? "[PASS] " : "[FAIL] ");
    if (c.id > 0) out << "C" << c.id << " ";
    out << c.name << ": " << c.detail << "\n";
  }
  return all;
}

}  // namespace mfbs::validation
