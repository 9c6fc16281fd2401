#pragma once

// Principal-branch complex log-Gamma and real powers of Gamma.
//
// log_gamma() is the analytic continuation of ln Gamma(x), x > 0, to the plane
// cut along (-inf, 0]. It is not log(Gamma(z)): the imaginary part grows
// without 2*pi jumps along vertical lines, which is what makes
// Gamma(z)^a = exp(a * log_gamma(z)) well defined for non-integer a.
//
// Evaluation:
//   Re z >= 0 : upward recurrence to |z| >= 15, then the Stirling series.
//   Re z <  0 : reflection with a log-sine that is continuous on the upper
//               half plane; the lower half plane follows by conjugation.
// On the negative real axis the value is the limit from above.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "gammasum/errors.hpp"

namespace gammasum {

using Complex = std::complex<double>;

namespace detail {

inline constexpr double kStirlingMin = 15.0;
inline constexpr double kPoleTolerance = 1e-10;

// B_{2k} / (2k (2k - 1)), k = 1..10
inline constexpr std::array<double, 10> kStirlingCoeffs = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

inline Complex log_gamma_stirling(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double c : kStirlingCoeffs) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z +
         0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// Re z >= 0.
inline Complex log_gamma_right(Complex z) {
  if (std::abs(z) >= kStirlingMin) return log_gamma_stirling(z);
  // ln Gamma(z) = ln Gamma(z + n) - sum_k Log(z + k); principal logs keep the
  // branch because Re(z + k) >= 0.
  Complex shift = 0.0;
  while (std::abs(z) < kStirlingMin) {
    shift += std::log(z);
    z += 1.0;
  }
  return log_gamma_stirling(z) - shift;
}

// log sin(pi z), continuous on Im z >= 0:
// sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}), |e^{2 pi i z}| <= 1.
inline Complex log_sin_pi_upper(Complex z) {
  using std::numbers::pi;
  const Complex i(0.0, 1.0);
  return std::log(0.5) + i * (pi / 2.0) - i * pi * z +
         std::log(1.0 - std::exp(2.0 * pi * i * z));
}

}  // namespace detail

inline bool is_gamma_pole(Complex z) {
  if (z.real() > detail::kPoleTolerance) return false;
  const double k = std::round(z.real());
  return k <= 0.0 && std::abs(z - Complex(k, 0.0)) < detail::kPoleTolerance;
}

inline Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("log_gamma: non-finite argument");
  }
  if (is_gamma_pole(z)) {
    std::ostringstream msg;
    msg << "log_gamma: argument (" << z.real() << ", " << z.imag()
        << ") is at a pole";
    throw PoleError(msg.str());
  }
  if (z.real() >= 0.0) return detail::log_gamma_right(z);

  const bool lower = z.imag() < 0.0;
  const Complex w = lower ? std::conj(z) : z;
  const Complex value = std::log(std::numbers::pi) -
                        detail::log_sin_pi_upper(w) -
                        detail::log_gamma_right(1.0 - w);
  return lower ? std::conj(value) : value;
}

inline Complex gamma_pow(Complex z, double a) {
  if (!(a > 0.0)) throw DomainError("gamma_pow: exponent must be positive");
  return std::exp(a * log_gamma(z));
}

}  // namespace gammasum
