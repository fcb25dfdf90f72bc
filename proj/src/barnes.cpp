#include "envdet/barnes.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "envdet/errors.hpp"

namespace envdet::barnes {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_positive_arg(double a, const char* fn) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(std::string(fn) + ": a must be a finite positive number, got " +
                      std::to_string(a));
  }
}

// B_{2k} / (2k)! for k = 2 .. kKernelTerms + 1. At r = 1/2 the ratio of
// consecutive terms is about (r / 2pi)^2 < 7e-3, so 12 terms are far below
// double precision.
constexpr int kKernelTerms = 12;

std::array<double, kKernelTerms> make_kernel_coeffs() {
  std::array<double, kKernelTerms> c{};
  ExactRational factorial = 1;
  int next = 1;
  for (int i = 0; i < kKernelTerms; ++i) {
    const int n = 2 * (i + 2);
    while (next <= n) factorial *= next++;
    c[i] = static_cast<double>(ExactRational(bernoulli(n) / factorial));
  }
  return c;
}

const std::array<double, kKernelTerms>& kernel_coeffs() {
  static const auto c = make_kernel_coeffs();
  return c;
}

// B_{2k} zeta(2k-1), k = 2 .. 16; shared by the a-expansions.
constexpr int kMaxSeriesTerms = 16;

double bernoulli_zeta(int k) { return bernoulli_real(2 * k) * zeta_int(2 * k - 1); }

// sum_{k>=2} c_k * weight(k) * x^{k-2}, Horner in x = r^2.
template <typename Weight>
double kernel_poly(double r2, Weight weight) {
  const auto& c = kernel_coeffs();
  double acc = 0.0;
  for (int i = kKernelTerms - 1; i >= 0; --i) {
    acc = acc * r2 + c[i] * weight(i + 2);
  }
  return acc;
}

ExactRational sawtooth_exact(long n, long d) {
  const long m = ((n % d) + d) % d;
  if (m == 0) return 0;
  return ExactRational(m, d) - ExactRational(1, 2);
}

}  // namespace

Rational::Rational(long p, long q) : p_(p), q_(q) {
  if (p < 1 || q < 1) {
    throw DomainError("Rational: p and q must be positive, got " + std::to_string(p) + "/" +
                      std::to_string(q));
  }
  const long g = std::gcd(p_, q_);
  p_ /= g;
  q_ /= g;
}

std::string_view route_name(Route r) {
  switch (r) {
    case Route::integral: return "integral";
    case Route::series: return "series";
    case Route::rational: return "rational";
  }
  return "unknown";
}

double sawtooth(double x) {
  const double fl = std::floor(x);
  if (fl == x) return 0.0;
  return x - fl - 0.5;
}

ExactRational dedekind_sum(long q, long p) {
  if (p < 1 || q < 1) throw DomainError("dedekind_sum: arguments must be positive");
  if (std::gcd(p, q) != 1) {
    throw DomainError("dedekind_sum: gcd(" + std::to_string(q) + ", " + std::to_string(p) +
                      ") != 1");
  }
  ExactRational s = 0;
  const long q_mod = q % p;
  for (long j = 1; j <= p; ++j) {
    s += sawtooth_exact(j, p) * sawtooth_exact(j * q_mod, p);
  }
  return s;
}

double f_kernel_series(double r) {
  const double r2 = r * r;
  return r * r2 * kernel_poly(r2, [](int) { return 1.0; });
}

double f_kernel_d1_series(double r) {
  const double r2 = r * r;
  return r2 * kernel_poly(r2, [](int k) { return 2.0 * k - 1.0; });
}

double f_kernel_d2_series(double r) {
  return r * kernel_poly(r * r, [](int k) { return (2.0 * k - 1.0) * (2.0 * k - 2.0); });
}

double f_kernel_closed(double r) {
  const double em = std::exp(-r);
  const double d = -std::expm1(-r);
  return em / d - 1.0 / r + 0.5 - r / 12.0;
}

double f_kernel_d1_closed(double r) {
  const double em = std::exp(-r);
  const double d = -std::expm1(-r);
  return -em / (d * d) + 1.0 / (r * r) - 1.0 / 12.0;
}

double f_kernel_d2_closed(double r) {
  const double em = std::exp(-r);
  const double d = -std::expm1(-r);
  return em * (1.0 + em) / (d * d * d) - 2.0 / (r * r * r);
}

double f_kernel(double r) {
  if (r < 0.0) throw DomainError("f_kernel: r must be >= 0");
  return r < kKernelCrossover ? f_kernel_series(r) : f_kernel_closed(r);
}

double f_kernel_d1(double r) {
  if (r < 0.0) throw DomainError("f_kernel_d1: r must be >= 0");
  return r < kKernelCrossover ? f_kernel_d1_series(r) : f_kernel_d1_closed(r);
}

double f_kernel_d2(double r) {
  if (r < 0.0) throw DomainError("f_kernel_d2: r must be >= 0");
  return r < kKernelCrossover ? f_kernel_d2_series(r) : f_kernel_d2_closed(r);
}

RegularizedIntegrand::RegularizedIntegrand(double a, Kind kind) : a_(a), kind_(kind) {
  require_positive_arg(a, "RegularizedIntegrand");
}

double RegularizedIntegrand::operator()(double t) const {
  // Every kind vanishes as t -> 0+.
  if (!(t > 0.0)) return 0.0;
  const double em1 = std::expm1(t);
  const double r = a_ * t;
  switch (kind_) {
    case Kind::f_over_t: {
      const double den = t * em1;
      return den == 0.0 ? 0.0 : f_kernel(r) / den;
    }
    case Kind::f_prime:
      return f_kernel_d1(r) / em1;
    case Kind::t_f_double_prime:
      return t * f_kernel_d2(r) / em1;
  }
  return 0.0;
}

BarnesEval zeta_b_prime0(double a, const QuadratureSpec& spec) {
  require_positive_arg(a, "zeta_b_prime0");
  const auto q = integrate_semi_infinite(
      RegularizedIntegrand(a, RegularizedIntegrand::Kind::f_over_t), spec);
  const auto& k = kConstants;
  const double value = kBarnesPoleCoeff / a - 0.25 * k.log_2pi + k.euler_gamma * a / 12.0 + q.value;
  return {value, q.err_est, Route::integral};
}

BarnesEval zeta_b_prime0_series(double a, int n_terms) {
  require_positive_arg(a, "zeta_b_prime0_series");
  if (n_terms < 2 || n_terms > kMaxSeriesTerms) {
    throw DomainError("zeta_b_prime0_series: N must lie in [2, 16], got " +
                      std::to_string(n_terms));
  }
  const auto& k = kConstants;
  double sum = 0.0;
  for (int j = n_terms - 1; j >= 2; --j) {
    sum += bernoulli_zeta(j) / (2.0 * j * (2.0 * j - 1.0)) * std::pow(a, 2 * j - 1);
  }
  const double value = kBarnesPoleCoeff / a - 0.25 * k.log_2pi + k.euler_gamma * a / 12.0 + sum;
  const int n = n_terms;
  const double bound =
      std::abs(bernoulli_zeta(n)) / (2.0 * n * (2.0 * n - 1.0)) * std::pow(a, 2 * n - 1);
  return {value, bound, Route::series};
}

BarnesEval zeta_b_prime0_rational(const Rational& a) {
  const long p = a.p();
  const long q = a.q();
  const double log_q = std::log(static_cast<double>(q));
  const double log_p = std::log(static_cast<double>(p));

  double value = (kConstants.zeta_prime_neg1 - log_q / 12.0) / static_cast<double>(p * q);
  double magnitude = std::abs(value);

  const double dedekind = static_cast<double>(dedekind_sum(q, p));
  const double log_term = (dedekind + 0.25) * (log_q - log_p);
  value += log_term;
  magnitude += std::abs(log_term);

  // ((k q / p)) + 1/2 is the fractional part of k q / p, nonzero for 0 < k < p.
  for (long k = 1; k < p; ++k) {
    const double frac = static_cast<double>((k * (q % p)) % p) / static_cast<double>(p);
    const double term = (0.5 - static_cast<double>(k) / static_cast<double>(p)) * log_gamma(frac);
    value += term;
    magnitude += std::abs(term);
  }
  for (long j = 1; j < q; ++j) {
    const double frac = static_cast<double>((j * (p % q)) % q) / static_cast<double>(q);
    const double term = (0.5 - static_cast<double>(j) / static_cast<double>(q)) * log_gamma(frac);
    value += term;
    magnitude += std::abs(term);
  }
  // log_gamma is good to ~1e-15 relative; allow a few ulps per term.
  const double bound = 16.0 * kEps * magnitude;
  return {value, bound, Route::rational};
}

double d_zeta_b_prime0(double a, const QuadratureSpec& spec) {
  require_positive_arg(a, "d_zeta_b_prime0");
  const auto q = integrate_semi_infinite(
      RegularizedIntegrand(a, RegularizedIntegrand::Kind::f_prime), spec);
  return -kBarnesPoleCoeff / (a * a) + kConstants.euler_gamma / 12.0 + q.value;
}

double d2_zeta_b_prime0(double a, const QuadratureSpec& spec) {
  require_positive_arg(a, "d2_zeta_b_prime0");
  const auto q = integrate_semi_infinite(
      RegularizedIntegrand(a, RegularizedIntegrand::Kind::t_f_double_prime), spec);
  return 2.0 * kBarnesPoleCoeff / (a * a * a) + q.value;
}

SeriesWithBound d2_zeta_b_prime0_series(double a, int n_terms) {
  require_positive_arg(a, "d2_zeta_b_prime0_series");
  if (n_terms < 2 || n_terms > kMaxSeriesTerms) {
    throw DomainError("d2_zeta_b_prime0_series: N must lie in [2, 16], got " +
                      std::to_string(n_terms));
  }
  double sum = 0.0;
  for (int k = n_terms - 1; k >= 2; --k) {
    sum += (1.0 - 1.0 / k) * bernoulli_zeta(k) * std::pow(a, 2 * k - 3);
  }
  const int n = n_terms;
  return {2.0 * kBarnesPoleCoeff / (a * a * a) + sum,
          (1.0 - 1.0 / n) * std::abs(bernoulli_zeta(n)) * std::pow(a, 2 * n - 3)};
}

double symmetric_derivative_combination(double a, const QuadratureSpec& spec) {
  if (!(a > 0.0 && a < 0.5)) {
    throw DomainError("symmetric_derivative_combination: a must lie in (0, 1/2)");
  }
  return 2.0 * d_zeta_b_prime0(a, spec) - 2.0 * d_zeta_b_prime0(1.0 - 2.0 * a, spec);
}

}  // namespace envdet::barnes
