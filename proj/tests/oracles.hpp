#pragma once

// Independent closed forms used as oracles by the unit and acceptance tests.

#include <cmath>
#include <span>

namespace oracle {

// Sum of two exponentials with means w1 != w2.
inline double exp_pair_pdf(double y, double w1, double w2) {
  return (std::exp(-y / w1) - std::exp(-y / w2)) / (w1 - w2);
}

// The same density written with eta_1, eta_2 as the two means; evaluated
// through expm1 so it does not share rounding with exp_pair_pdf.
inline double eta_pair_pdf(double y, double eta1, double eta2) {
  return std::exp(-y / eta1) * -std::expm1(y / eta1 - y / eta2) / (eta1 - eta2);
}

// Hypoexponential density, distinct means w_l:
//   sum_l prod_{k != l} w_l / (w_l - w_k) * e^{-y / w_l} / w_l
inline double hypoexp_pdf(double y, std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t l = 0; l < w.size(); ++l) {
    double c = 1.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k != l) c *= w[l] / (w[l] - w[k]);
    }
    sum += c * std::exp(-y / w[l]) / w[l];
  }
  return sum;
}

// The hypoexponential expression with the prefactor prod 1 / (w_k - 1 / w_l)
// exactly as it is commonly printed. It is not a density in general; kept to
// show the discrepancy.
inline double hypoexp_pdf_as_printed(double y, std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t l = 0; l < w.size(); ++l) {
    double c = 1.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k != l) c *= 1.0 / (w[k] - 1.0 / w[l]);
    }
    sum += c * std::exp(-y / w[l]) / w[l];
  }
  return sum;
}

// Erlang(k, rate) CDF.
inline double erlang_cdf(double y, int k, double rate) {
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i < k; ++i) {
    term *= rate * y / i;
    sum += term;
  }
  return 1.0 - std::exp(-rate * y) * sum;
}

// Gamma(m, omega) density.
inline double gamma_pdf(double y, double m, double omega) {
  const double x = m / omega;
  return std::exp(m * std::log(x) + (m - 1.0) * std::log(y) - x * y - std::lgamma(m));
}

// Rayleigh (m = 1, L = 1) BER at mean SNR g.
inline double rayleigh_coherent(double q, double g) {
  return 0.5 * (1.0 - std::sqrt(q * g / (1.0 + q * g)));
}
inline double rayleigh_noncoherent(double q, double g) { return 0.5 / (1.0 + q * g); }

}  // namespace oracle
