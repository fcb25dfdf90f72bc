#include "envdet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "envdet/barnes.hpp"
#include "envdet/envelope.hpp"
#include "parallel.hpp"

namespace envdet::verify {
namespace {

using std::numbers::ln2;

// Four-decimal values quoted for the three rational envelopes.
constexpr double kQuotedCritical = 0.0217;
constexpr double kQuotedRightIsosceles = 0.0829;
constexpr double kQuotedSixth = 0.3287;
constexpr double kQuotedSecondDerivative = 17.614;
constexpr double kQuotedCriticalArea = 1.92;

Diagnostic near(std::string name, double measured, double reference, double tol) {
  return {std::move(name), std::abs(measured - reference) <= tol, measured, tol};
}

Diagnostic at_most(std::string name, double measured, double tol) {
  return {std::move(name), measured <= tol, measured, tol};
}

Diagnostic positive(std::string name, double measured) {
  return {std::move(name), measured > 0.0, measured, 0.0};
}

double closed_form_critical() {
  return 2.0 / 3.0 * kConstants.log_pi + std::log(2.0 / 3.0) / 3.0 - 2.0 * log_gamma(2.0 / 3.0);
}

double closed_form_right_isosceles() {
  return 0.25 * kConstants.log_pi - log_gamma(0.75);
}

double closed_form_sixth() {
  return kConstants.log_pi / 6.0 + 37.0 / 72.0 * ln2 + std::log(3.0) / 48.0 +
         kConstants.zeta_prime_neg1 - 0.25 * log_gamma(2.0 / 3.0);
}

EvalOptions with_route(barnes::Route route, const QuadratureSpec& quad) {
  return {route, barnes::kDefaultSeriesTerms, quad};
}

}  // namespace

std::vector<Diagnostic> critical_value(const QuadratureSpec& quad) {
  const auto p = AngleParam::from_fraction(-2, 3);
  const double integral = log_det_unit(p, with_route(barnes::Route::integral, quad)).log_det;
  const double closed = closed_form_critical();
  return {
      near("critical_value", closed, kQuotedCritical, 1e-4),
      at_most("critical_value_pipeline", std::abs(integral - closed), 1e-9),
  };
}

std::vector<Diagnostic> special_values(const QuadratureSpec& quad) {
  std::vector<Diagnostic> out;
  struct Case {
    const char* tag;
    long num, den;
    double quoted;
    double closed;
  };
  const Case cases[] = {
      {"m3_4", -3, 4, kQuotedRightIsosceles, closed_form_right_isosceles()},
      {"m5_6", -5, 6, kQuotedSixth, closed_form_sixth()},
  };
  for (const auto& c : cases) {
    const auto p = AngleParam::from_fraction(c.num, c.den);
    const double rational = log_det_unit(p, with_route(barnes::Route::rational, quad)).log_det;
    const double integral = log_det_unit(p, with_route(barnes::Route::integral, quad)).log_det;
    const std::string base = std::string("special_value_") + c.tag;
    out.push_back(near(base, rational, c.quoted, 1e-4));
    out.push_back(at_most(base + "_routes", std::abs(rational - integral), 1e-9));
    out.push_back(at_most(base + "_closed_form", std::abs(rational - c.closed), 1e-9));
  }
  return out;
}

std::vector<Diagnostic> criticality(const QuadratureSpec& quad) {
  const auto p = AngleParam::from_fraction(-2, 3);
  return {
      at_most("critical_point", std::abs(d_log_det(p, quad)), 1e-9),
      at_most("lemma_a1_3", std::abs(barnes::symmetric_derivative_combination(1.0 / 3.0, quad)),
              1e-9),
  };
}

std::vector<Diagnostic> second_derivative_threshold(const QuadratureSpec& quad) {
  const double d2 = d2_log_det(AngleParam::from_fraction(-2, 3), quad);
  return {
      near("second_derivative", d2, kQuotedSecondDerivative, 5e-3),
      near("critical_area", critical_area(quad), kQuotedCriticalArea, 1e-2),
  };
}

std::vector<Diagnostic> convexity(const QuadratureSpec& quad, int grid_points) {
  const double lo = -0.999;
  const double hi = -0.501;
  const auto n = static_cast<std::size_t>(grid_points);
  std::vector<double> bound(n);
  std::vector<double> margin(n);
  detail::parallel_for(n, [&](std::size_t i) {
    const double beta = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const AngleParam p(beta);
    bound[i] = convexity_lower_bound(p);
    margin[i] = d2_log_det(p, quad) - bound[i];
  });
  return {
      positive("convexity_bound_positive", *std::min_element(bound.begin(), bound.end())),
      positive("convexity_chain", *std::min_element(margin.begin(), margin.end())),
  };
}

std::vector<Diagnostic> barnes_routes(const QuadratureSpec& quad) {
  double worst_route = 0.0;
  for (long q = 2; q <= 12; ++q) {
    for (long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const barnes::Rational r(p, q);
      const double integral = barnes::zeta_b_prime0(r.value(), quad).value;
      const double exact = barnes::zeta_b_prime0_rational(r).value;
      worst_route = std::max(worst_route, std::abs(integral - exact));
    }
  }

  // Ratio of the observed gap to the certificate; <= 1 means certified.
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double worst_ratio = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double a = k / 200.0;
    const auto integral = barnes::zeta_b_prime0(a, quad);
    for (int n = 2; n <= 5; ++n) {
      const auto series = barnes::zeta_b_prime0_series(a, n);
      const double rounding =
          4.0 * kEps * (kBarnesPoleCoeff / a + std::abs(integral.value)) + integral.error_bound;
      const double gap = std::abs(integral.value - series.value);
      worst_ratio = std::max(worst_ratio, gap / (series.error_bound + rounding));
    }
  }
  return {
      at_most("barnes_three_route", worst_route, 1e-10),
      at_most("series_certificate", worst_ratio, 1.0),
  };
}

std::vector<Diagnostic> asymptotics(const QuadratureSpec& quad) {
  const double distances[] = {1e-2, 3.1622776601683794e-3, 1e-3, 3.1622776601683794e-4, 1e-4};
  std::vector<double> left;
  std::vector<double> right;
  const EvalOptions opts = with_route(barnes::Route::integral, quad);
  for (double d : distances) {
    const AngleParam near_neg1(-1.0 + d);
    left.push_back((log_det_unit(near_neg1, opts).log_det - asymptotic_neg1(near_neg1)) /
                   near_neg1.a1());
    const AngleParam near_neghalf(-0.5 - 0.5 * d);
    right.push_back((log_det_unit(near_neghalf, opts).log_det - asymptotic_neghalf(near_neghalf)) /
                    -near_neghalf.a2());
  }
  // Spread of residual / distance; infinite if the residual changes sign.
  auto spread = [](const std::vector<double>& r) {
    const bool same_sign = std::all_of(r.begin(), r.end(), [&](double x) { return x * r[0] > 0; });
    if (!same_sign) return std::numeric_limits<double>::max();
    const auto [mn, mx] = std::minmax_element(r.begin(), r.end(),
                                              [](double x, double y) { return std::abs(x) < std::abs(y); });
    return std::abs(*mx) / std::abs(*mn);
  };
  return {
      at_most("asymptotics_neg1", spread(left), 3.0),
      at_most("asymptotics_neghalf", spread(right), 3.0),
  };
}

std::vector<Diagnostic> dedekind_reciprocity(const QuadratureSpec&) {
  int failures = 0;
  for (long p = 1; p <= 30; ++p) {
    for (long q = 1; q <= 30; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const ExactRational lhs = barnes::dedekind_sum(p, q) + barnes::dedekind_sum(q, p);
      const ExactRational rhs =
          ExactRational(-1, 4) +
          (ExactRational(p, q) + ExactRational(q, p) + ExactRational(1, p * q)) / 12;
      if (lhs != rhs) ++failures;
    }
  }
  return {at_most("dedekind_reciprocity", failures, 0.0)};
}

std::vector<Diagnostic> rescaling_flip(const QuadratureSpec& quad) {
  const double lo = -0.95;
  const double hi = -0.55;
  const int count = 101;
  ScanOptions opts;
  opts.quad = quad;
  const auto unit = scan(lo, hi, count, 1.0, opts);
  const auto large = scan(lo, hi, count, 3.0, opts);

  const double step = (hi - lo) / (count - 1);
  const auto centre = static_cast<std::size_t>(std::lround((-2.0 / 3.0 - lo) / step));

  const std::size_t imin = argmin_log_det(unit);
  int sign_changes = 0;
  for (std::size_t i = 2; i < unit.rows.size(); ++i) {
    const double prev = unit.rows[i - 1].log_det - unit.rows[i - 2].log_det;
    const double cur = unit.rows[i].log_det - unit.rows[i - 1].log_det;
    if ((prev < 0.0) != (cur < 0.0)) ++sign_changes;
  }

  const auto& r = large.rows;
  const double local_max_margin = std::min(r[centre].log_det - r[centre - 1].log_det,
                                           r[centre].log_det - r[centre + 1].log_det);

  double worst_rescale = 0.0;
  for (std::size_t i = 0; i < unit.rows.size(); ++i) {
    const AngleParam p(unit.rows[i].beta);
    const double expected = -zeta0(p) * std::log(3.0);
    worst_rescale =
        std::max(worst_rescale, std::abs(large.rows[i].log_det - unit.rows[i].log_det - expected));
  }

  const double refined = refine_critical_point(unit, imin, 1e-9, quad);
  return {
      at_most("scan_minimum_S1", std::abs(unit.rows[imin].beta - unit.rows[centre].beta), 0.0),
      at_most("scan_single_sign_change", std::abs(sign_changes - 1), 0.0),
      positive("scan_local_max_S3", local_max_margin),
      at_most("rescaling_identity", worst_rescale, 1e-12),
      at_most("minimizer_refined", std::abs(refined + 2.0 / 3.0), 1e-6),
  };
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "critical value at beta = -2/3", 0.1, false, critical_value},
      {2, "special values at beta = -3/4 and -5/6", 0.5, false, special_values},
      {3, "criticality of beta = -2/3", 1.0, false, criticality},
      {4, "second derivative and critical area", 1.0, false, second_derivative_threshold},
      {5, "convexity chain on 10^4 grid", 120.0, true,
       [](const QuadratureSpec& q) { return convexity(q); }},
      {6, "three-route Barnes agreement", 30.0, false, barnes_routes},
      {7, "small-angle asymptotics order", 10.0, false, asymptotics},
      {8, "Dedekind reciprocity", 1.0, false, dedekind_reciprocity},
      {9, "rescaling identity and min/max flip", 30.0, false, rescaling_flip},
  };
  return list;
}

std::vector<Diagnostic> run_suite(Suite suite, const QuadratureSpec& quad) {
  std::vector<Diagnostic> out;
  for (const auto& c : criteria()) {
    if (suite == Suite::fast && c.full_only) continue;
    auto d = c.run(quad);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

}  // namespace envdet::verify
