#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mfbs/calibration.hpp"
#include "mfbs/density.hpp"
#include "mfbs/error.hpp"
#include "mfbs/pricing.hpp"
#include "mfbs/validation.hpp"

namespace mfbs::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const CLI::Validator kFinite(
    [](std::string& input) -> std::string {
      std::istringstream is(input);
      double v = 0.0;
      is >> v;
      if (!is || !is.eof() || !std::isfinite(v)) return "must be a finite decimal";
      return {};
    },
    "FINITE");

struct ModelFlags {
  std::string model = "baseline";
  std::optional<double> k, xk, lambda, beta, gamma, a;
  std::vector<std::string> coeffs;

  void add_to(CLI::App& app) {
    app.add_option("--model", model, "Force model")
        ->check(CLI::IsMember({"baseline", "constant", "linear", "cubic", "quartic",
                               "well", "poly"}));
    app.add_option("--k", k, "Constant-force strength k (shift x_k = 2k)")->check(kFinite);
    app.add_option("--xk", xk, "Constant-force shift x_k")->check(kFinite);
    app.add_option("--lambda", lambda, "Linear-force strength lambda")->check(kFinite);
    app.add_option("--beta", beta, "Cubic coupling beta")->check(kFinite);
    app.add_option("--gamma", gamma, "Quartic coupling gamma")->check(kFinite);
    app.add_option("--a", a, "Quantum-well half-width a")->check(kFinite);
    app.add_option("--coeff", coeffs, "Polynomial term POWER:COEFF (repeatable)");
  }

  ForceModel build() const {
    const std::map<std::string, bool> given = {
        {"k", k.has_value()},         {"xk", xk.has_value()},
        {"lambda", lambda.has_value()}, {"beta", beta.has_value()},
        {"gamma", gamma.has_value()}, {"a", a.has_value()},
        {"coeff", !coeffs.empty()}};
    const std::map<std::string, std::vector<std::string>> allowed = {
        {"baseline", {}},          {"constant", {"k", "xk"}}, {"linear", {"lambda"}},
        {"cubic", {"beta"}},       {"quartic", {"gamma"}},    {"well", {"a"}},
        {"poly", {"coeff"}}};
    const auto& ok = allowed.at(model);
    for (const auto& [flag, set] : given) {
      if (set && std::find(ok.begin(), ok.end(), flag) == ok.end()) {
        throw UsageError("--" + flag + " does not apply to --model " + model);
      }
    }
    if (model == "constant") {
      if (k && xk) throw UsageError("--k and --xk are mutually exclusive");
      return xk ? ConstantForce::from_shift(*xk) : ConstantForce{k.value_or(0.0)};
    }
    if (model == "linear") return LinearForce{lambda.value_or(0.0)};
    if (model == "cubic") return CubicPotential{beta.value_or(0.0)};
    if (model == "quartic") return QuarticPotential{gamma.value_or(0.0)};
    if (model == "well") {
      if (!a) throw UsageError("--model well requires --a");
      return QuantumWell{*a};
    }
    if (model == "poly") {
      PolynomialPerturbation poly;
      for (const auto& c : coeffs) {
        const auto colon = c.find(':');
        try {
          if (colon == std::string::npos) throw std::invalid_argument(c);
          std::size_t used = 0;
          const int power = std::stoi(c.substr(0, colon), &used);
          const double value = std::stod(c.substr(colon + 1));
          if (!std::isfinite(value)) throw std::invalid_argument(c);
          poly.terms.push_back({power, value});
        } catch (const std::logic_error&) {
          throw UsageError("--coeff expects POWER:COEFF, got '" + c + "'");
        }
      }
      return poly;
    }
    return Baseline{};
  }
};

struct OptionFlags {
  OptionSpec spec;
  std::string kind = "call";

  void add_to(CLI::App& app) {
    app.add_option("--s0", spec.s0, "Spot price S0")->envname("MFBS_S0")->check(kFinite);
    app.add_option("--strike", spec.strike, "Strike K")->envname("MFBS_STRIKE")->check(kFinite);
    app.add_option("--rate", spec.rate, "Risk-free rate r")->envname("MFBS_RATE")->check(kFinite);
    app.add_option("--sigma", spec.sigma, "Volatility sigma")->envname("MFBS_SIGMA")->check(kFinite);
    app.add_option("--maturity", spec.maturity, "Maturity T in years")
        ->envname("MFBS_MATURITY")
        ->check(kFinite);
    app.add_option("--kind", kind, "Option kind")->check(CLI::IsMember({"call", "put"}));
  }

  OptionSpec build() const {
    auto s = spec;
    s.kind = kind == "put" ? OptionKind::Put : OptionKind::Call;
    return s;
  }
};

struct QuadFlags {
  QuadratureConfig cfg;

  void add_to(CLI::App& app) {
    app.add_option("--abs-tol", cfg.abs_tol, "Quadrature absolute tolerance")->check(kFinite);
    app.add_option("--rel-tol", cfg.rel_tol, "Quadrature relative tolerance")->check(kFinite);
    app.add_option("--tail-cutoff", cfg.tail_cutoff, "Tail truncation in x units")->check(kFinite);
    app.add_option("--max-subdivisions", cfg.max_subdivisions, "Quadrature subdivision budget");
  }
};

struct OutputFlags {
  std::string path;
  std::string format = "plain";

  void add_to(CLI::App& app, bool with_format) {
    app.add_option("--out", path, "Output file (default stdout)");
    if (with_format) {
      app.add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "csv"}));
    }
  }
};

// Writes `text` to the requested path or to `out`.
int emit(const OutputFlags& o, const std::string& text, std::ostream& out, std::ostream& err) {
  if (o.path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(o.path, std::ios::binary | std::ios::trunc);
  if (file) file << text;
  if (!file) {
    fmt::print(err, "error: cannot write '{}'\n", o.path);
    return kFailure;
  }
  return kOk;
}

struct CurveDefaults {
  double lo;
  double hi;
};

CurveDefaults curve_defaults(Family f) {
  switch (f) {
    case Family::Constant: return {0.0, 4.0};
    case Family::Linear: return {0.0, 2.0};
    case Family::Cubic: return {-0.3, 0.3};
    case Family::Quartic: return {-0.2, 0.2};
    case Family::Well: return {0.1, 3.0};
    case Family::Baseline: return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Market-force generalization of Black-Scholes option pricing", "mfbs"};
  app.require_subcommand(1);

  ModelFlags model_flags;
  OptionFlags option_flags;
  QuadFlags quad_flags;
  OutputFlags output_flags;

  auto* price_cmd = app.add_subcommand("price", "Price one option and print diagnostics");
  model_flags.add_to(*price_cmd);
  option_flags.add_to(*price_cmd);
  quad_flags.add_to(*price_cmd);
  output_flags.add_to(*price_cmd, true);

  std::string curve_family = "constant";
  std::optional<double> param_min, param_max;
  int curve_steps = 81;
  unsigned threads = 0;
  auto* curve_cmd = app.add_subcommand("curve", "Sweep a family coupling and write CSV");
  curve_cmd->add_option("--model", curve_family, "Force family")
      ->check(CLI::IsMember({"baseline", "constant", "linear", "cubic", "quartic", "well"}));
  curve_cmd->add_option("--param-min", param_min, "First coupling (x_k for constant)")->check(kFinite);
  curve_cmd->add_option("--param-max", param_max, "Last coupling")->check(kFinite);
  curve_cmd->add_option("--steps", curve_steps, "Number of grid points (>= 2)");
  curve_cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
  option_flags.add_to(*curve_cmd);
  quad_flags.add_to(*curve_cmd);
  output_flags.add_to(*curve_cmd, false);

  double x_min = -5.0;
  double x_max = 5.0;
  int density_steps = 101;
  auto* density_cmd = app.add_subcommand("density", "Tabulate the normalized density as CSV");
  model_flags.add_to(*density_cmd);
  density_cmd->add_option("--x-min", x_min, "First abscissa")->check(kFinite);
  density_cmd->add_option("--x-max", x_max, "Last abscissa")->check(kFinite);
  density_cmd->add_option("--steps", density_steps, "Number of rows (>= 2)");
  quad_flags.add_to(*density_cmd);
  output_flags.add_to(*density_cmd, false);

  validation::Options validate_opts;
  std::optional<std::string> validate_family;
  std::optional<double> validate_coupling;
  auto* validate_cmd = app.add_subcommand("validate", "Run the oracle and invariant battery");
  validate_cmd->add_option("--grid-points", validate_opts.grid_points, "Oracle grid points (odd, >= 801)")
      ->check(CLI::Range(801, 2000001));
  validate_cmd->add_option("--family", validate_family, "Validate one family against the oracle")
      ->check(CLI::IsMember({"constant", "linear", "cubic", "quartic", "well"}));
  validate_cmd->add_option("--coupling", validate_coupling, "Coupling for --family")->check(kFinite);
  quad_flags.add_to(*validate_cmd);

  std::string calibrate_family = "constant";
  double target = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double tol = 1e-8;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Solve for the implied force coupling");
  calibrate_cmd->add_option("--model", calibrate_family, "Force family")
      ->check(CLI::IsMember({"constant", "linear", "cubic", "quartic", "well"}));
  calibrate_cmd->add_option("--target", target, "Observed option price")->required()->check(kFinite);
  calibrate_cmd->add_option("--lo", lo, "Lower coupling bound")->required()->check(kFinite);
  calibrate_cmd->add_option("--hi", hi, "Upper coupling bound")->required()->check(kFinite);
  calibrate_cmd->add_option("--tol", tol, "Relative price tolerance")->check(kFinite);
  option_flags.add_to(*calibrate_cmd);
  quad_flags.add_to(*calibrate_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  }

  try {
    if (price_cmd->parsed()) {
      const auto model = model_flags.build();
      const auto r = price(model, option_flags.build(), quad_flags.cfg);
      std::string text;
      if (output_flags.format == "csv") {
        text = "price,sigma_qm,sigma_eff,d_plus,d_minus,n_dplus,n_dminus,normalization_c\n";
        text += fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", r.price,
                            r.sigma_qm, r.sigma_eff, r.d_plus, r.d_minus, r.n_d_plus,
                            r.n_d_minus, r.normalization_c);
      } else {
        text = fmt::format("model            {}\n", describe(model));
        for (const auto& [label, v] : std::vector<std::pair<const char*, double>>{
                 {"price", r.price},
                 {"sigma_qm", r.sigma_qm},
                 {"sigma_eff", r.sigma_eff},
                 {"d_plus", r.d_plus},
                 {"d_minus", r.d_minus},
                 {"N(d_plus)", r.n_d_plus},
                 {"N(d_minus)", r.n_d_minus},
                 {"normalization_c", r.normalization_c}}) {
          text += fmt::format("{:<17}{:.6f}\n", label, v);
        }
      }
      return emit(output_flags, text, out, err);
    }

    if (curve_cmd->parsed()) {
      if (curve_steps < 2) throw UsageError("--steps must be >= 2");
      const auto family = parse_family(curve_family);
      const auto defaults = curve_defaults(family);
      const auto grid = linspace(param_min.value_or(defaults.lo), param_max.value_or(defaults.hi),
                                 curve_steps);
      const auto points = price_curve(family, grid, option_flags.build(), quad_flags.cfg, threads);
      std::string text = "param,price,sigma_qm,sigma_eff,n_dplus,n_dminus\n";
      int failures = 0;
      for (const auto& p : points) {
        if (!p.result) {
          ++failures;
          fmt::print(err, "error at param={:.10g}: {}\n", p.param, p.error);
          continue;
        }
        const auto& r = *p.result;
        text += fmt::format("{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g}\n", p.param, r.price,
                            r.sigma_qm, r.sigma_eff, r.n_d_plus, r.n_d_minus);
      }
      const int rc = emit(output_flags, text, out, err);
      return failures > 0 ? kFailure : rc;
    }

    if (density_cmd->parsed()) {
      if (density_steps < 2) throw UsageError("--steps must be >= 2");
      if (!(x_min < x_max)) throw UsageError("--x-min must be below --x-max");
      const auto d = Density::build(model_flags.build(), quad_flags.cfg);
      std::string text = "x,p\n";
      for (double x : linspace(x_min, x_max, density_steps)) {
        text += fmt::format("{:.10g},{:.10g}\n", x, d(x));
      }
      return emit(output_flags, text, out, err);
    }

    if (validate_cmd->parsed()) {
      if (validate_opts.grid_points % 2 == 0) throw UsageError("--grid-points must be odd");
      validate_opts.quadrature = quad_flags.cfg;
      std::vector<validation::Check> checks;
      if (validate_family) {
        if (!validate_coupling) throw UsageError("--family requires --coupling");
        checks.push_back(validation::validate_family(parse_family(*validate_family),
                                                     *validate_coupling, validate_opts));
      } else {
        if (validate_coupling) throw UsageError("--coupling requires --family");
        checks = validation::run_acceptance(validate_opts);
      }
      return validation::report(checks, out) ? kOk : kFailure;
    }

    if (calibrate_cmd->parsed()) {
      const CalibrationRequest req{parse_family(calibrate_family), option_flags.build(), target,
                                   lo, hi, tol};
      const double c = implied_param(req, quad_flags.cfg);
      out << fmt::format("{:.8f}\n", c == 0.0 ? 0.0 : c);
      return kOk;
    }
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kFailure;
  }
  return kUsage;
}

}  // namespace mfbs::cli
