#include "envdet/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "envdet/errors.hpp"

namespace envdet {
namespace {

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be a finite positive number, got " +
                      std::to_string(x));
  }
}

constexpr int kMaxBernoulliIndex = 64;

// Akiyama-Tanigawa; yields B_1 = +1/2, which is never used here.
std::array<ExactRational, kMaxBernoulliIndex / 2 + 1> make_even_bernoulli() {
  std::array<ExactRational, kMaxBernoulliIndex / 2 + 1> out;
  std::array<ExactRational, kMaxBernoulliIndex + 1> work;
  for (int m = 0; m <= kMaxBernoulliIndex; ++m) {
    work[m] = ExactRational(1, m + 1);
    for (int j = m; j >= 1; --j) {
      work[j - 1] = j * (work[j - 1] - work[j]);
    }
    if (m % 2 == 0) out[m / 2] = work[0];
  }
  return out;
}

const auto& even_bernoulli_table() {
  static const auto table = make_even_bernoulli();
  return table;
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  return boost::math::lgamma(x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  return boost::math::digamma(x);
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  return boost::math::trigamma(x);
}

double zeta_int(int k) {
  if (k < 2) throw DomainError("zeta_int: k must be >= 2, got " + std::to_string(k));
  return boost::math::zeta(static_cast<double>(k));
}

const ExactRational& bernoulli(int n) {
  if (n < 2 || n > kMaxBernoulliIndex || n % 2 != 0) {
    throw DomainError("bernoulli: index must be even and in [2, 64], got " + std::to_string(n));
  }
  return even_bernoulli_table()[n / 2];
}

double bernoulli_real(int n) { return static_cast<double>(bernoulli(n)); }

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("QuadratureSpec: tolerances must be positive");
  }
  if (!(small_t_crossover > 0.0 && small_t_crossover <= 1.0)) {
    throw DomainError("QuadratureSpec: small_t_crossover must lie in (0, 1]");
  }
  if (max_refinement_levels < 1) {
    throw DomainError("QuadratureSpec: max_refinement_levels must be >= 1");
  }
}

namespace {
constexpr double kTailCutoff = 750.0;
}  // namespace

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSpec& spec) {
  spec.validate();
  const double c = spec.small_t_crossover;
  // Ask the rules for a little more than the caller needs; their error
  // estimates are differences of successive levels.
  const double rule_tol = std::max(spec.rel_tol * 0.1, 4 * std::numeric_limits<double>::epsilon());

  double head_err = 0.0;
  double tail_err = 0.0;
  double head = 0.0;
  double tail = 0.0;
  try {
    head = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, 0.0, c, static_cast<unsigned>(spec.max_refinement_levels), rule_tol, &head_err);
    boost::math::quadrature::exp_sinh<double> rule(
        static_cast<std::size_t>(spec.max_refinement_levels));
    // Past kTailCutoff an e^{-t} decay is below the smallest denormal, so
    // the integrand is taken as zero there instead of risking inf * 0.
    auto clipped = [&f](double t) { return t > kTailCutoff ? 0.0 : f(t); };
    tail = rule.integrate(clipped, c, std::numeric_limits<double>::infinity(), rule_tol, &tail_err);
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("integrate_semi_infinite: ") + e.what());
  }

  QuadratureResult out{head + tail, head_err + tail_err};
  if (!std::isfinite(out.value)) {
    throw ConvergenceError("integrate_semi_infinite: non-finite result");
  }
  const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
  if (out.err_est > target) {
    throw ConvergenceError("integrate_semi_infinite: error estimate " +
                           std::to_string(out.err_est) + " exceeds tolerance " +
                           std::to_string(target));
  }
  return out;
}

}  // namespace envdet
