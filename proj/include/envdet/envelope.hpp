#pragma once

// log det of the Friedrichs Laplacian on the isosceles triangle envelope with
// base angles pi(beta+1) and apex angle pi(-2beta-1), beta in (-1, -1/2).

#include <optional>
#include <vector>

#include "envdet/barnes.hpp"
#include "envdet/specfun.hpp"

namespace envdet {

/// beta in (-1, -1/2), at least kEndpointGuard away from either end.
class AngleParam {
 public:
  static constexpr double kEndpointGuard = 1e-6;

  explicit AngleParam(double beta);

  /// beta = num/den exactly; enables the rational Barnes route.
  static AngleParam from_fraction(long num, long den);

  double beta() const { return beta_; }
  /// beta + 1, the base-angle Barnes argument.
  double a1() const { return a1_; }
  /// -2 beta - 1, the apex-angle Barnes argument.
  double a2() const { return a2_; }

  const std::optional<barnes::Rational>& exact_a1() const { return exact_a1_; }
  const std::optional<barnes::Rational>& exact_a2() const { return exact_a2_; }
  bool is_exact() const { return exact_a1_.has_value(); }

 private:
  double beta_;
  double a1_;
  double a2_;
  std::optional<barnes::Rational> exact_a1_;
  std::optional<barnes::Rational> exact_a2_;
};

struct EvalOptions {
  barnes::Route route = barnes::Route::integral;
  int series_terms = barnes::kDefaultSeriesTerms;
  QuadratureSpec quad{};
};

struct DetResult {
  double log_det = 0.0;
  double elementary_part = 0.0;
  double barnes_part = 0.0;
  double area_term = 0.0;
  double area = 1.0;
  barnes::Route route = barnes::Route::integral;
  // Combined error bound of the two Barnes evaluations, weighted 4 and 2.
  double barnes_error_bound = 0.0;
};

struct EnvelopeGeometry {
  double side_ab = 0.0;  // |AB| = |BC|
  double angle_a = 0.0;
  double angle_b = 0.0;
  double angle_c = 0.0;
  double area = 0.0;
};

double scaling_factor(const AngleParam& p);
double log_scaling_factor(const AngleParam& p);

DetResult log_det_unit(const AngleParam& p, const EvalOptions& opts = {});
DetResult log_det_area(const AngleParam& p, double area, const EvalOptions& opts = {});

/// zeta_beta(0) of the Laplacian and its beta-derivatives.
double zeta0(const AngleParam& p);
double zeta0_d1(const AngleParam& p);
double zeta0_d2(const AngleParam& p);

/// Truncated small-angle expansions as beta -> -1+ and beta -> -1/2-.
double asymptotic_neg1(const AngleParam& p);
double asymptotic_neghalf(const AngleParam& p);

/// d/dbeta and d^2/dbeta^2 of log det at unit area.
double d_log_det(const AngleParam& p, const QuadratureSpec& quad = {});
double d2_log_det(const AngleParam& p, const QuadratureSpec& quad = {});

/// Elementary lower bound for d2_log_det.
double convexity_lower_bound(const AngleParam& p);

/// Area above which beta = -2/3 is a local maximum rather than a minimum.
double critical_area(const QuadratureSpec& quad = {});

EnvelopeGeometry geometry(const AngleParam& p, double area = 1.0);

struct ScanRow {
  double beta = 0.0;
  double log_det = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double asym_neg1 = 0.0;
  double asym_neghalf = 0.0;
  bool exact = false;  // log_det from the rational Barnes route
};

struct ScanTable {
  std::vector<ScanRow> rows;
  double area = 1.0;
  double beta_min = 0.0;
  double beta_max = 0.0;
  int count = 0;
};

struct ScanOptions {
  bool exact_points = false;
  long max_denominator = 12;  // rational beta = -n/d with d <= this
  QuadratureSpec quad{};
};

/// All per-row quantities are for beta -> log det at the given area.
ScanTable scan(double beta_min, double beta_max, int count, double area,
               const ScanOptions& opts = {});

/// Index of the smallest (or largest) log_det in the table.
std::size_t argmin_log_det(const ScanTable& table);
std::size_t argmax_log_det(const ScanTable& table);

/// Zero of d/dbeta log det^S bracketed by neighbouring rows of `index`,
/// refined to `tol` in beta.
double refine_critical_point(const ScanTable& table, std::size_t index, double tol = 1e-9,
                             const QuadratureSpec& quad = {});

}  // namespace envdet
