#pragma once

// zeta_B'(0; a, 1, 1), the s-derivative at s = 0 of the Barnes double zeta
// function sum_{m,n>=0} (a m + n + 1)^{-s}, together with its first two
// a-derivatives.
//
// Three evaluators are provided and are expected to agree:
//   integral  - Bernoulli-regularized integral over (0, inf), any a > 0
//   series    - small-a expansion with a rigorous alternating remainder
//   rational  - closed form via Dedekind sums and log-gamma, a = p/q

#include <string_view>

#include "envdet/specfun.hpp"

namespace envdet::barnes {

/// Reduced fraction p/q with p, q >= 1.
class Rational {
 public:
  Rational(long p, long q);

  long p() const { return p_; }
  long q() const { return q_; }
  double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  long p_;
  long q_;
};

enum class Route { integral, series, rational };

std::string_view route_name(Route r);

struct BarnesEval {
  double value = 0.0;
  double error_bound = 0.0;
  Route route = Route::integral;
};

/// ((x)): x - floor(x) - 1/2, and 0 at integers.
double sawtooth(double x);

/// S(q, p) = sum_{j=1}^{p} ((j/p)) ((j q/p)), exact. Requires gcd(p, q) = 1.
ExactRational dedekind_sum(long q, long p);

/// F(r) = 1/(e^r - 1) - 1/r + 1/2 - r/12 and its derivatives. Below
/// kKernelCrossover the Bernoulli series is summed; above it the closed form.
inline constexpr double kKernelCrossover = 0.5;

double f_kernel(double r);
double f_kernel_d1(double r);
double f_kernel_d2(double r);

// Branch-specific evaluators, exposed for continuity checks.
double f_kernel_series(double r);
double f_kernel_closed(double r);
double f_kernel_d1_series(double r);
double f_kernel_d1_closed(double r);
double f_kernel_d2_series(double r);
double f_kernel_d2_closed(double r);

/// Integrands of the three integral representations, as functions of t.
class RegularizedIntegrand {
 public:
  enum class Kind {
    f_over_t,            // F(a t) / (t (e^t - 1))
    f_prime,             // F'(a t) / (e^t - 1)
    t_f_double_prime,    // t F''(a t) / (e^t - 1)
  };

  RegularizedIntegrand(double a, Kind kind);

  double operator()(double t) const;
  double a() const { return a_; }
  Kind kind() const { return kind_; }

 private:
  double a_;
  Kind kind_;
};

BarnesEval zeta_b_prime0(double a, const QuadratureSpec& spec = {});

inline constexpr int kDefaultSeriesTerms = 4;
BarnesEval zeta_b_prime0_series(double a, int n_terms = kDefaultSeriesTerms);
BarnesEval zeta_b_prime0_rational(const Rational& a);

/// d/da zeta_B'(0; a, 1, 1).
double d_zeta_b_prime0(double a, const QuadratureSpec& spec = {});
/// d^2/da^2 zeta_B'(0; a, 1, 1).
double d2_zeta_b_prime0(double a, const QuadratureSpec& spec = {});

/// Truncated small-a expansion of the second a-derivative with N terms and
/// its remainder bound (1 - 1/N) |B_2N zeta(2N-1)| a^{2N-3}.
struct SeriesWithBound {
  double value;
  double bound;
};
SeriesWithBound d2_zeta_b_prime0_series(double a, int n_terms);

/// d/da { 2 zeta_B'(0;a,1,1) + zeta_B'(0;1-2a,1,1) }, for 0 < a < 1/2.
double symmetric_derivative_combination(double a, const QuadratureSpec& spec = {});

}  // namespace envdet::barnes
