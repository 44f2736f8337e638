#include "mfbs/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace mfbs {
namespace {

// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

double eval(const Integrand& f, double x) {
  const double y = f(x);
  if (std::isnan(y)) throw IntegrandNaNError(x);
  return y;
}

// One G7K15 panel with the QUADPACK error heuristic.
Segment gauss_kronrod_15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();

  std::array<double, 7> f_lo{};
  std::array<double, 7> f_hi{};
  const double f_center = eval(f, center);
  double res_k = f_center * kWgk[7];
  double res_g = f_center * kWg[3];
  double res_abs = std::abs(res_k);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f_lo[j] = eval(f, center - dx);
    f_hi[j] = eval(f, center + dx);
    const double pair = f_lo[j] + f_hi[j];
    res_k += kWgk[j] * pair;
    res_abs += kWgk[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(f_center - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));
  }

  const double ah = std::abs(half);
  const double value = res_k * half;
  res_abs *= ah;
  res_asc *= ah;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return {a, b, value, err};
}

}  // namespace

IntegrandNaNError::IntegrandNaNError(double abscissa)
    : NumericError([abscissa] {
        std::ostringstream os;
        os << "integrand returned NaN at x = " << abscissa;
        return os.str();
      }()),
      abscissa_(abscissa) {}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("quadrature abs_tol must be > 0");
  if (!(rel_tol > 0.0)) throw DomainError("quadrature rel_tol must be > 0");
  if (!(tail_cutoff >= 8.0)) {
    throw DomainError("quadrature tail_cutoff must be >= 8");
  }
  if (max_subdivisions < 10) {
    throw DomainError("quadrature max_subdivisions must be >= 10");
  }
}

QuadratureResult integrate_with_error(const Integrand& f, Interval iv,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi) {
    throw DomainError("integration interval must satisfy lo <= hi");
  }
  const double lo = std::max(iv.lo, -cfg.tail_cutoff);
  const double hi = std::min(iv.hi, cfg.tail_cutoff);
  if (!(lo < hi)) return {0.0, 0.0, 0};

  std::vector<Segment> segments{gauss_kronrod_15(f, lo, hi)};
  segments.reserve(static_cast<std::size_t>(cfg.max_subdivisions));

  auto totals = [&segments] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& s : segments) {
      value += s.value;
      error += s.error;
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
    if (static_cast<int>(segments.size()) >= cfg.max_subdivisions) {
      std::ostringstream os;
      os << "adaptive quadrature did not converge on [" << lo << ", " << hi
         << "] after " << segments.size() << " subdivisions (estimate "
         << value << ", error bound " << error << ")";
      throw QuadratureError(os.str(), value, error);
    }
    auto worst = std::max_element(
        segments.begin(), segments.end(),
        [](const Segment& l, const Segment& r) { return l.error < r.error; });
    const double a = worst->a;
    const double b = worst->b;
    const double mid = 0.5 * (a + b);
    *worst = gauss_kronrod_15(f, a, mid);
    segments.push_back(gauss_kronrod_15(f, mid, b));
    std::tie(value, error) = totals();
  }
  return {value, error, static_cast<int>(segments.size())};
}

double integrate(const Integrand& f, Interval iv, const QuadratureConfig& cfg) {
  return integrate_with_error(f, iv, cfg).value;
}

}  // namespace mfbs
