#include "kiang/errors.hpp"
#include "kiang/gamma_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kiang {

namespace {

// Shift argument up to this before using the asymptotic expansions.
constexpr double kAsymptoticStart = 12.0;

void require_positive(double x, const char *name) {
  if (!(x > 0) || !std::isfinite(x))
    throw DomainError(std::string(name) + " requires a positive finite argument");
}

} // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  // ln Gamma(x) = ln Gamma(x + k) - ln(x (x+1) ... (x+k-1))
  double shift = 0;
  double prod = 1;
  while (x < kAsymptoticStart) {
    prod *= x;
    x += 1;
    if (prod > 1e280) {
      shift += std::log(prod);
      prod = 1;
    }
  }
  shift += std::log(prod);

  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Stirling series
  const double series =
      inv * (1.0 / 12 +
             inv2 * (-1.0 / 360 +
                     inv2 * (1.0 / 1260 +
                             inv2 * (-1.0 / 1680 +
                                     inv2 * (1.0 / 1188 +
                                             inv2 * (-691.0 / 360360 +
                                                     inv2 * (1.0 / 156)))))));
  return (x - 0.5) * std::log(x) - x +
         0.5 * std::log(2 * std::numbers::pi) + series - shift;
}

double digamma(double x) {
  require_positive(x, "digamma");
  double acc = 0;
  while (x < kAsymptoticStart) {
    acc -= 1.0 / x;
    x += 1;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 -
                                                      inv2 * (1.0 / 12)))))));
  return acc + std::log(x) - 0.5 * inv - series;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double acc = 0;
  while (x < kAsymptoticStart) {
    acc += 1.0 / (x * x);
    x += 1;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // 1/x + 1/(2x^2) + sum B_2k / x^(2k+1)
  const double series =
      inv * inv2 *
      (1.0 / 6 -
       inv2 * (1.0 / 30 -
               inv2 * (1.0 / 42 -
                       inv2 * (1.0 / 30 -
                               inv2 * (5.0 / 66 -
                                       inv2 * (691.0 / 2730 -
                                               inv2 * (7.0 / 6)))))));
  return acc + inv + 0.5 * inv2 + series;
}

double gamma_p(double a, double x) {
  require_positive(a, "gamma_p");
  if (!(x >= 0) || std::isnan(x))
    throw DomainError("gamma_p requires x >= 0");
  if (x == 0)
    return 0;
  if (std::isinf(x))
    return 1;
  const double log_prefactor = -x + a * std::log(x) - log_gamma(a);

  if (x < a + 1) {
    // Series: P = e^-x x^a / Gamma(a) * sum x^n / (a (a+1) ... (a+n))
    double term = 1 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 1000; ++n) {
      ap += 1;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16)
        break;
    }
    return std::min(1.0, sum * std::exp(log_prefactor));
  }

  // Continued fraction for Q, modified Lentz.
  constexpr double kTiny = 1e-300;
  double b = x + 1 - a;
  double c = 1 / kTiny;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::abs(d) < kTiny)
      d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny)
      c = kTiny;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1) < 1e-16)
      break;
  }
  return std::max(0.0, 1 - std::exp(log_prefactor) * h);
}

} // namespace kiang
