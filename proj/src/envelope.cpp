#include "envdet/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/tools/roots.hpp>

#include "envdet/errors.hpp"
#include "parallel.hpp"

namespace envdet {
namespace {

using std::numbers::pi;
using std::numbers::ln2;

void require_area(double area) {
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw DomainError("area must be a finite positive number, got " + std::to_string(area));
  }
}

// Pieces of the elementary part shared by the value and its derivatives.
// P is the coefficient polynomial 2/a1 + 1/a2 - 1 multiplying log c_beta.
struct Coeff {
  double p, dp, d2p;
};

Coeff log_c_coeff(double a1, double a2) {
  return {2.0 / a1 + 1.0 / a2 - 1.0,
          -2.0 / (a1 * a1) + 2.0 / (a2 * a2),
          4.0 / (a1 * a1 * a1) + 8.0 / (a2 * a2 * a2)};
}

double cot_pi(double x) { return boost::math::cos_pi(x) / boost::math::sin_pi(x); }
double csc2_pi(double x) {
  const double s = boost::math::sin_pi(x);
  return 1.0 / (s * s);
}

barnes::BarnesEval barnes_at(double a, const std::optional<barnes::Rational>& exact,
                             const EvalOptions& opts) {
  switch (opts.route) {
    case barnes::Route::integral:
      return barnes::zeta_b_prime0(a, opts.quad);
    case barnes::Route::series:
      return barnes::zeta_b_prime0_series(a, opts.series_terms);
    case barnes::Route::rational:
      if (!exact) {
        throw DomainError("rational Barnes route requires a rational beta");
      }
      return barnes::zeta_b_prime0_rational(*exact);
  }
  throw DomainError("unknown Barnes route");
}

}  // namespace

AngleParam::AngleParam(double beta) : beta_(beta), a1_(beta + 1.0), a2_(-2.0 * beta - 1.0) {
  if (!std::isfinite(beta) || !(a1_ >= kEndpointGuard) || !(a2_ >= kEndpointGuard)) {
    throw DomainError("beta must lie in (-1, -1/2) at least 1e-6 from the endpoints, got " +
                      std::to_string(beta));
  }
}

AngleParam AngleParam::from_fraction(long num, long den) {
  if (den == 0) throw DomainError("beta fraction has zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(num, den);
  num /= g;
  den /= g;
  AngleParam p(static_cast<double>(num) / static_cast<double>(den));
  p.exact_a1_ = barnes::Rational(num + den, den);
  p.exact_a2_ = barnes::Rational(-2 * num - den, den);
  return p;
}

double log_scaling_factor(const AngleParam& p) {
  const double a1 = p.a1();
  const double a2 = p.a2();
  return ln2 - log_gamma(0.5 * a2) - log_gamma(a1) +
         0.5 * (kConstants.log_pi - std::log(boost::math::sin_pi(a2)));
}

double scaling_factor(const AngleParam& p) { return std::exp(log_scaling_factor(p)); }

DetResult log_det_unit(const AngleParam& p, const EvalOptions& opts) {
  const double b = p.beta();
  const double a1 = p.a1();
  const double a2 = p.a2();
  const auto coeff = log_c_coeff(a1, a2);

  DetResult r;
  r.route = opts.route;
  r.elementary_part = (2.0 * b + 4.0 / a1 + 1.0 / a2) * ln2 / 6.0 -
                      coeff.p * log_scaling_factor(p) / 6.0 - std::log(a1) - 0.5 * std::log(a2) -
                      2.5 * ln2 - kConstants.log_pi;

  const auto z1 = barnes_at(a1, p.exact_a1(), opts);
  const auto z2 = barnes_at(a2, p.exact_a2(), opts);
  r.barnes_part = -4.0 * z1.value - 2.0 * z2.value + 2.0 * kConstants.zeta_prime_neg1;
  r.barnes_error_bound = 4.0 * z1.error_bound + 2.0 * z2.error_bound;

  r.area = 1.0;
  r.area_term = 0.0;
  r.log_det = r.elementary_part + r.barnes_part;
  return r;
}

DetResult log_det_area(const AngleParam& p, double area, const EvalOptions& opts) {
  require_area(area);
  DetResult r = log_det_unit(p, opts);
  r.area = area;
  r.area_term = -zeta0(p) * std::log(area);
  r.log_det = r.elementary_part + r.barnes_part + r.area_term;
  return r;
}

double zeta0(const AngleParam& p) {
  return -13.0 / 12.0 + 1.0 / (6.0 * p.a1()) + 1.0 / (12.0 * p.a2());
}

double zeta0_d1(const AngleParam& p) {
  const double a1 = p.a1();
  const double a2 = p.a2();
  return -1.0 / (6.0 * a1 * a1) + 1.0 / (6.0 * a2 * a2);
}

double zeta0_d2(const AngleParam& p) {
  const double a1 = p.a1();
  const double a2 = p.a2();
  return 1.0 / (3.0 * a1 * a1 * a1) + 2.0 / (3.0 * a2 * a2 * a2);
}

double asymptotic_neg1(const AngleParam& p) {
  const double e = p.a1();
  const double log_e = std::log(e);
  const double pole = std::log(8.0 * pi) / 6.0 - 4.0 * kConstants.log_glaisher;
  return -log_e / (6.0 * e) + pole / e - log_e - ln2;
}

double asymptotic_neghalf(const AngleParam& p) {
  const double e = -p.a2();  // 2 beta + 1 < 0
  const double log_a2 = std::log(p.a2());
  const double pole = ln2 / 6.0 + kConstants.log_pi / 12.0 - 2.0 * kConstants.log_glaisher;
  return log_a2 / (12.0 * e) - pole / e - 0.75 * log_a2 - 0.5 * ln2 - 0.25 * kConstants.log_pi;
}

double d_log_det(const AngleParam& p, const QuadratureSpec& quad) {
  const double a1 = p.a1();
  const double a2 = p.a2();
  const auto c = log_c_coeff(a1, a2);
  const double log_c = log_scaling_factor(p);
  const double d_log_c = digamma(0.5 * a2) - digamma(a1) + pi * cot_pi(a2);

  const double u = (2.0 - 4.0 / (a1 * a1) + 2.0 / (a2 * a2)) * ln2 / 6.0;
  const double v = -(c.dp * log_c + c.p * d_log_c) / 6.0;
  const double w = -1.0 / a1 + 1.0 / a2;
  const double barnes =
      -4.0 * barnes::d_zeta_b_prime0(a1, quad) + 4.0 * barnes::d_zeta_b_prime0(a2, quad);
  return u + v + w + barnes;
}

double d2_log_det(const AngleParam& p, const QuadratureSpec& quad) {
  const double a1 = p.a1();
  const double a2 = p.a2();
  const auto c = log_c_coeff(a1, a2);
  const double log_c = log_scaling_factor(p);
  const double d_log_c = digamma(0.5 * a2) - digamma(a1) + pi * cot_pi(a2);
  const double d2_log_c = -trigamma(0.5 * a2) - trigamma(a1) + 2.0 * pi * pi * csc2_pi(a2);

  const double u = (8.0 / (a1 * a1 * a1) + 8.0 / (a2 * a2 * a2)) * ln2 / 6.0;
  const double v = -(c.d2p * log_c + 2.0 * c.dp * d_log_c + c.p * d2_log_c) / 6.0;
  const double w = 1.0 / (a1 * a1) + 2.0 / (a2 * a2);
  const double barnes =
      -4.0 * barnes::d2_zeta_b_prime0(a1, quad) - 8.0 * barnes::d2_zeta_b_prime0(a2, quad);
  return u + v + w + barnes;
}

double convexity_lower_bound(const AngleParam& p) {
  const double a1 = p.a1();
  const double a2 = p.a2();
  const double z2 = zeta_int(2);
  const double z3 = zeta_int(3);
  const auto c = log_c_coeff(a1, a2);

  // H approximates -2 log c_beta by truncating the log-gamma Taylor series
  // after the cubic terms.
  const double h = std::log(boost::math::sin_pi(a2)) - kConstants.log_pi - 2.0 * std::log(a1) -
                   2.0 * std::log(a2) - kConstants.euler_gamma +
                   z2 * (a1 * a1 + 0.25 * a2 * a2) -
                   2.0 * z3 / 3.0 * (a1 * a1 * a1 + a2 * a2 * a2 / 8.0);
  const double dh = -2.0 * pi * cot_pi(a2) - 2.0 / a1 + 4.0 / a2 + z2 * (2.0 * a1 - a2) +
                    z3 * (-2.0 * a1 * a1 + 0.5 * a2 * a2);
  const double d2h = -4.0 * pi * pi * csc2_pi(a2) + 2.0 / (a1 * a1) + 8.0 / (a2 * a2) +
                     4.0 * z2 - z3 * (4.0 * a1 + 2.0 * a2);

  const double q = (c.d2p * h + 2.0 * c.dp * dh + c.p * d2h) / 12.0;
  const double rest =
      (8.0 / (a1 * a1 * a1) + 8.0 / (a2 * a2 * a2)) * ln2 / 6.0 + 1.0 / (a1 * a1) + 2.0 / (a2 * a2);
  const double pole = kBarnesPoleCoeff * (8.0 / (a1 * a1 * a1) + 16.0 / (a2 * a2 * a2));
  return q + rest - 0.2 - pole;
}

double critical_area(const QuadratureSpec& quad) {
  // d^2/dbeta^2 zeta_beta(0) = 27 at beta = -2/3.
  return std::exp(d2_log_det(AngleParam::from_fraction(-2, 3), quad) / 27.0);
}

EnvelopeGeometry geometry(const AngleParam& p, double area) {
  require_area(area);
  EnvelopeGeometry g;
  const double log_side = log_scaling_factor(p) + log_gamma(0.5 * p.a2()) + log_gamma(p.a1()) -
                          ln2 - 0.5 * kConstants.log_pi;
  g.side_ab = std::exp(log_side) * std::sqrt(area);
  g.angle_a = pi * p.a1();
  g.angle_c = g.angle_a;
  g.angle_b = pi * p.a2();
  g.area = area;
  return g;
}

namespace {

ScanRow make_row(const AngleParam& p, double area, const EvalOptions& opts) {
  const double log_s = std::log(area);
  const double z0 = zeta0(p);
  ScanRow row;
  row.beta = p.beta();
  row.exact = opts.route == barnes::Route::rational;
  row.log_det = log_det_area(p, area, opts).log_det;
  row.d1 = d_log_det(p, opts.quad) - zeta0_d1(p) * log_s;
  row.d2 = d2_log_det(p, opts.quad) - zeta0_d2(p) * log_s;
  row.asym_neg1 = asymptotic_neg1(p) - z0 * log_s;
  row.asym_neghalf = asymptotic_neghalf(p) - z0 * log_s;
  return row;
}

std::vector<AngleParam> rational_betas(double lo, double hi, long max_den) {
  std::vector<AngleParam> out;
  for (long den = 2; den <= max_den; ++den) {
    for (long num = den / 2; num < den; ++num) {
      if (std::gcd(num, den) != 1) continue;
      const double beta = -static_cast<double>(num) / static_cast<double>(den);
      if (beta < lo || beta > hi) continue;
      if (beta + 1.0 < AngleParam::kEndpointGuard || -2.0 * beta - 1.0 < AngleParam::kEndpointGuard)
        continue;
      out.push_back(AngleParam::from_fraction(-num, den));
    }
  }
  return out;
}

}  // namespace

ScanTable scan(double beta_min, double beta_max, int count, double area, const ScanOptions& opts) {
  if (!(beta_min > -1.0 && beta_min < beta_max && beta_max < -0.5)) {
    throw DomainError("scan: need -1 < beta_min < beta_max < -1/2");
  }
  if (count < 2) throw DomainError("scan: count must be >= 2");
  require_area(area);

  std::vector<AngleParam> params;
  params.reserve(static_cast<std::size_t>(count));
  const double step = (beta_max - beta_min) / (count - 1);
  for (int i = 0; i < count; ++i) {
    params.emplace_back(i == count - 1 ? beta_max : beta_min + i * step);
  }
  std::vector<bool> exact(params.size(), false);

  if (opts.exact_points) {
    for (const auto& ep : rational_betas(beta_min, beta_max, opts.max_denominator)) {
      auto same = std::find_if(params.begin(), params.end(), [&](const AngleParam& g) {
        return std::abs(g.beta() - ep.beta()) < 1e-12;
      });
      if (same != params.end()) {
        const auto idx = static_cast<std::size_t>(same - params.begin());
        params[idx] = ep;
        exact[idx] = true;
      } else {
        params.push_back(ep);
        exact.push_back(true);
      }
    }
  }

  ScanTable table;
  table.area = area;
  table.beta_min = beta_min;
  table.beta_max = beta_max;
  table.count = count;
  table.rows.resize(params.size());

  EvalOptions integral{barnes::Route::integral, barnes::kDefaultSeriesTerms, opts.quad};
  EvalOptions rational{barnes::Route::rational, barnes::kDefaultSeriesTerms, opts.quad};
  detail::parallel_for(params.size(), [&](std::size_t i) {
    table.rows[i] = make_row(params[i], area, exact[i] ? rational : integral);
  });

  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ScanRow& x, const ScanRow& y) { return x.beta < y.beta; });
  return table;
}

std::size_t argmin_log_det(const ScanTable& table) {
  if (table.rows.empty()) throw DomainError("argmin_log_det: empty table");
  const auto it = std::min_element(table.rows.begin(), table.rows.end(),
                                   [](const ScanRow& x, const ScanRow& y) {
                                     return x.log_det < y.log_det;
                                   });
  return static_cast<std::size_t>(it - table.rows.begin());
}

std::size_t argmax_log_det(const ScanTable& table) {
  if (table.rows.empty()) throw DomainError("argmax_log_det: empty table");
  const auto it = std::max_element(table.rows.begin(), table.rows.end(),
                                   [](const ScanRow& x, const ScanRow& y) {
                                     return x.log_det < y.log_det;
                                   });
  return static_cast<std::size_t>(it - table.rows.begin());
}

double refine_critical_point(const ScanTable& table, std::size_t index, double tol,
                             const QuadratureSpec& quad) {
  if (index >= table.rows.size()) throw DomainError("refine_critical_point: index out of range");
  const auto& rows = table.rows;
  double lo = rows[index == 0 ? 0 : index - 1].beta;
  double hi = rows[std::min(index + 1, rows.size() - 1)].beta;
  const double log_s = std::log(table.area);
  auto slope = [&](double beta) {
    AngleParam p(beta);
    return d_log_det(p, quad) - zeta0_d1(p) * log_s;
  };
  const double f_lo = slope(lo);
  const double f_hi = slope(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw DomainError("refine_critical_point: no sign change of the derivative around row " +
                      std::to_string(index));
  }
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      slope, lo, hi, f_lo, f_hi,
      [tol](double x, double y) { return std::abs(x - y) <= tol; }, max_iter);
  return 0.5 * (a + b);
}

}  // namespace envdet
