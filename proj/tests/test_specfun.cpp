#include <doctest.h>

#include <cmath>
#include <numbers>

#include "envdet/errors.hpp"
#include "envdet/specfun.hpp"

using namespace envdet;
using std::numbers::pi;

namespace {

double rel_err(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

TEST_CASE("log_gamma examples") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(pi)) < 1e-15);
  // Closed form of the equilateral value, 0.021697670901831518 to 17 digits.
  const double lhs = 2.0 * log_gamma(2.0 / 3.0);
  const double rhs = 2.0 / 3.0 * std::log(pi) + std::log(2.0 / 3.0) / 3.0 - 0.021697670901831518;
  CHECK(std::abs(lhs - rhs) < 1e-14);
}

TEST_CASE("log_gamma recurrence on a grid") {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 0.05 + (10.0 - 0.05) * (i + 0.5) / 1000.0;
    worst = std::max(worst, std::abs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("digamma examples") {
  const double g = kConstants.euler_gamma;
  CHECK(rel_err(digamma(1.0), -g) < 1e-13);
  CHECK(rel_err(digamma(0.5), -g - 2.0 * std::numbers::ln2) < 1e-13);
  const double combo = -digamma(1.0 / 3.0) + digamma(1.0 / 6.0) + pi / std::tan(pi / 3.0);
  CHECK(std::abs(combo + 2.0 * std::numbers::ln2) < 1e-13);
}

TEST_CASE("digamma matches finite differences of log_gamma") {
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 0.05 + (10.0 - 0.05) * (i + 0.5) / 1000.0;
    const double fd = (log_gamma(x + h) - log_gamma(x - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - digamma(x)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("trigamma") {
  CHECK(rel_err(trigamma(1.0), pi * pi / 6.0) < 1e-12);
  CHECK(rel_err(trigamma(0.5), pi * pi / 2.0) < 1e-12);
  const double h = 1e-5;
  for (double x = 0.1; x < 5.0; x += 0.07) {
    const double fd = (digamma(x + h) - digamma(x - h)) / (2.0 * h);
    CHECK(std::abs(fd - trigamma(x)) < 1e-6);
  }
}

TEST_CASE("zeta_int") {
  CHECK(rel_err(zeta_int(2), pi * pi / 6.0) < 1e-14);
  CHECK(rel_err(zeta_int(4), std::pow(pi, 4) / 90.0) < 1e-14);

  // Brute force: 10^7 terms summed small-to-large, then the Euler-Maclaurin tail.
  const long n = 10'000'000;
  long double s = 0.0L;
  for (long k = n; k >= 1; --k) {
    const long double kk = static_cast<long double>(k);
    s += 1.0L / (kk * kk * kk);
  }
  const long double nn = static_cast<long double>(n);
  s += 1.0L / (2.0L * nn * nn) - 1.0L / (2.0L * nn * nn * nn) + 1.0L / (4.0L * nn * nn * nn * nn);
  CHECK(std::abs(zeta_int(3) - static_cast<double>(s)) < 1e-12);

  CHECK_THROWS_AS(zeta_int(1), DomainError);
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(2) == ExactRational(1, 6));
  CHECK(bernoulli(4) == ExactRational(-1, 30));
  CHECK(bernoulli(12) == ExactRational(-691, 2730));
  CHECK(bernoulli(64) != ExactRational(0));
  CHECK_THROWS_AS(bernoulli(3), DomainError);
  CHECK_THROWS_AS(bernoulli(0), DomainError);
  CHECK_THROWS_AS(bernoulli(66), DomainError);

  double factorial = 1.0;
  for (int k = 1; k <= 8; ++k) {
    factorial *= (2.0 * k - 1.0) * (2.0 * k);
    const double via_zeta = 2.0 * factorial * zeta_int(2 * k) / std::pow(2.0 * pi, 2 * k);
    CHECK(rel_err(std::abs(bernoulli_real(2 * k)), via_zeta) < 1e-12);
    // Same identity read the other way round.
    const double zeta_closed = std::abs(bernoulli_real(2 * k)) * std::pow(2.0 * pi, 2 * k) /
                               (2.0 * factorial);
    CHECK(rel_err(zeta_int(2 * k), zeta_closed) < 1e-13);
  }
}

TEST_CASE("constants tie together") {
  const auto& k = kConstants;
  CHECK(std::abs(k.zeta_prime_neg1 - (1.0 / 12.0 - k.log_glaisher)) < 1e-16);
  CHECK(std::abs(k.log_2pi - std::log(2.0 * pi)) < 1e-15);
  CHECK(std::abs(k.log_pi - std::log(pi)) < 1e-15);

  // Euler-Maclaurin estimate of gamma from H_n - log n.
  const int n = 1000;
  long double h = 0.0L;
  for (int i = n; i >= 1; --i) h += 1.0L / i;
  const long double nn = n;
  const long double gamma = h - std::log(nn) - 1.0L / (2 * nn) + 1.0L / (12 * nn * nn) -
                            1.0L / (120 * nn * nn * nn * nn);
  CHECK(std::abs(k.euler_gamma - static_cast<double>(gamma)) < 1e-15);
}

TEST_CASE("integrate_semi_infinite") {
  CHECK(std::abs(integrate_semi_infinite([](double t) { return std::exp(-t); }).value - 1.0) < 1e-12);
  double gamma_n = 1.0;
  for (int n = 2; n <= 6; ++n) {
    gamma_n *= (n - 1);
    const auto r = integrate_semi_infinite(
        [n](double t) { return t > 0.0 ? std::pow(t, n - 1) * std::exp(-t) / -std::expm1(-t) : 0.0; });
    const double expected = zeta_int(n) * gamma_n;
    CHECK(std::abs(r.value - expected) <= std::max(1e-12, 1e-12 * expected));
    CHECK(r.err_est >= 0.0);
  }
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.abs_tol = 0.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = {};
  spec.small_t_crossover = 1.5;
  CHECK_THROWS_AS(spec.validate(), DomainError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(trigamma(-2.0), DomainError);
}
