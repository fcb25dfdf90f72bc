#pragma once

// Special functions, constants, exact Bernoulli numbers and the semi-infinite
// quadrature used by the Barnes and envelope layers.

#include <functional>

#include <boost/multiprecision/cpp_int.hpp>

namespace envdet {

using ExactRational = boost::multiprecision::cpp_rational;

struct Constants {
  double euler_gamma;
  double log_glaisher;     // log A
  double zeta_prime_neg1;  // zeta_R'(-1) = 1/12 - log A
  double log_2pi;
  double log_pi;
};

inline constexpr Constants kConstants{
    0.57721566490153286060651209008240243,
    0.24875447703378426254725299357611398,
    -0.16542114370045092921391966024278064,
    1.83787706640934548356065947281123527,
    1.14472988584940017414342735135305871,
};

/// 1/12 - zeta_R'(-1); the coefficient of 1/a in zeta_B'(0;a,1,1).
inline constexpr double kBarnesPoleCoeff = 1.0 / 12.0 - kConstants.zeta_prime_neg1;

double log_gamma(double x);
double digamma(double x);
double trigamma(double x);

/// Riemann zeta at an integer k >= 2.
double zeta_int(int k);

/// Exact B_n for even n in [2, 64].
const ExactRational& bernoulli(int n);
double bernoulli_real(int n);

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_refinement_levels = 12;
  // [0, c] is handled by a finite-interval Gauss-Kronrod rule, [c, inf) by
  // the exp-sinh double-exponential rule.
  double small_t_crossover = 1.0;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double err_est = 0.0;
};

/// Integral of f over (0, inf). f must decay at least like e^{-t} and have a
/// finite limit at 0+; it is never evaluated at t = 0 itself.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSpec& spec = {});

}  // namespace envdet
