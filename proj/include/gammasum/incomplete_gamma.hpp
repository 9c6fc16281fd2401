#pragma once

// Regularized incomplete Gamma functions P(a, x) and Q(a, x) for real a > 0,
// x >= 0: power series below x = a + 1, Lentz continued fraction above.

#include <cmath>
#include <limits>

#include "gammasum/errors.hpp"

namespace gammasum {

namespace detail {

inline constexpr int kIncGammaMaxIter = 100000;

inline double inc_gamma_prefactor(double a, double x) {
  return std::exp(a * std::log(x) - x - std::lgamma(a));
}

// P(a, x) by series, x < a + 1.
inline double inc_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kIncGammaMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) {
      return sum * inc_gamma_prefactor(a, x);
    }
  }
  throw NoConvergence("incomplete gamma series did not converge");
}

// Q(a, x) by continued fraction, x >= a + 1.
inline double inc_gamma_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kIncGammaMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return h * inc_gamma_prefactor(a, x);
  }
  throw NoConvergence("incomplete gamma continued fraction did not converge");
}

inline void check_inc_gamma_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("incomplete gamma: shape must be positive");
  }
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be >= 0");
}

}  // namespace detail

inline double regularized_gamma_p(double a, double x) {
  detail::check_inc_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return detail::inc_gamma_series(a, x);
  return 1.0 - detail::inc_gamma_cf(a, x);
}

inline double regularized_gamma_q(double a, double x) {
  detail::check_inc_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - detail::inc_gamma_series(a, x);
  return detail::inc_gamma_cf(a, x);
}

}  // namespace gammasum
