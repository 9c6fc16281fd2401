#pragma once

// Mellin-Barnes contour integrals
//
//     I(z) = 1/(2 pi i) * integral over C of M(s) z^s ds
//
// where M(s) is a quotient of (possibly fractional) powers of Gamma functions.
// The integrand is handled in log form: log M(s) + s ln z is exponentiated
// once per node, so neither z^s nor the Gamma products overflow on their own
// and arguments such as z = e^y are carried as ln z = y.
//
// Contour geometry (s plane, after orienting so that |z^s| decays to the left):
//
//   anchor - bend - iT --> anchor - iT --> anchor + iT --> anchor - bend + iT
//
// The horizontal legs pick up the factor e^{Re(s) ln z}. Beyond the ends the
// remaining path runs horizontally to -inf; its contribution is estimated from
// the local decay rate at the end points and reported as `tail_bound`. When
// ln z == 0 there is nothing to gain from bending, so the vertical line is
// integrated over its full length with the tails mapped onto (0, 1] through
// t = T / v^2.
//
// For ln z < 0 the integral is evaluated through s -> -s, which turns the
// decaying side into the left half plane. If the kernel grows on that side but
// decays on the other, the other orientation is used instead.
// ContourSpec::anchor always refers to the caller's s.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "gammasum/complex_gamma.hpp"
#include "gammasum/errors.hpp"
#include "gammasum/quadrature.hpp"

namespace gammasum {

// Position of a Gamma factor in the quotient:
//   NumUpper  Gamma(1 - alpha + A s)^a      NumLower  Gamma(beta - B s)^b
//   DenUpper  Gamma(alpha - A s)^a          DenLower  Gamma(1 - beta + B s)^b
enum class Slot { NumUpper, NumLower, DenUpper, DenLower };

struct GammaTermSpec {
  double alpha = 0.0;  // alpha_j or beta_j
  double scale = 1.0;  // A_j or B_j
  double exponent = 1.0;
  Slot slot = Slot::NumUpper;

  bool operator==(const GammaTermSpec&) const = default;
};

// Positive real argument z, stored as ln z.
class Argument {
 public:
  constexpr Argument() = default;

  static Argument from_value(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
      throw DomainError("Mellin-Barnes argument must be positive and finite");
    }
    return Argument(std::log(z));
  }
  static Argument from_log(double log_z) {
    if (!std::isfinite(log_z)) throw DomainError("ln z must be finite");
    return Argument(log_z);
  }

  double log() const { return log_z_; }
  double value() const { return std::exp(log_z_); }

  bool operator==(const Argument&) const = default;

 private:
  explicit constexpr Argument(double log_z) : log_z_(log_z) {}
  double log_z_ = 0.0;
};

struct ContourSpec {
  double anchor = 0.0;   // abscissa of the vertical segment
  double height = 100.0; // |Im s| where the contour bends
  double bend = 49.0;    // horizontal run toward the decaying side; 0 = none
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_refinements = 12;

  void validate() const {
    if (!(height > 0.0)) throw DomainError("contour height must be positive");
    if (!(bend >= 0.0)) throw DomainError("contour bend must be non-negative");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
      throw DomainError("contour tolerances must be positive");
    }
    if (max_refinements < 0) {
      throw DomainError("max_refinements must be non-negative");
    }
    if (!std::isfinite(anchor)) throw DomainError("contour anchor not finite");
  }

  bool operator==(const ContourSpec&) const = default;
};

struct EvalResult {
  double value = 0.0;
  double est_abs_error = 0.0;
  std::size_t n_evals = 0;
  double tail_bound = 0.0;
  double imag_part = 0.0;  // imaginary part discarded when casting to real
  int refinements = 0;
  bool bent = false;
};

// Open interval of admissible anchors. A side flagged `*_from_pole` is a real
// pole bound; the other side is a fallback placement.
struct Strip {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_from_pole = false;
  bool hi_from_pole = false;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool admits(double x) const {
    return (!lo_from_pole || x > lo) && (!hi_from_pole || x < hi);
  }
};

inline Complex gamma_argument(const GammaTermSpec& t, Complex s) {
  switch (t.slot) {
    case Slot::NumUpper:
    case Slot::DenLower:
      return 1.0 - t.alpha + t.scale * s;
    case Slot::NumLower:
    case Slot::DenUpper:
      return t.alpha - t.scale * s;
  }
  return {};
}

inline bool is_numerator(Slot slot) {
  return slot == Slot::NumUpper || slot == Slot::NumLower;
}

inline void validate_terms(std::span<const GammaTermSpec> terms) {
  for (const auto& t : terms) {
    if (!(t.scale > 0.0) || !std::isfinite(t.scale)) {
      throw DomainError("Gamma term scale must be positive");
    }
    if (!(t.exponent > 0.0) || !std::isfinite(t.exponent)) {
      throw DomainError("Gamma term exponent must be positive");
    }
    if (!std::isfinite(t.alpha)) throw DomainError("Gamma term offset not finite");
  }
}

// Numerator-upper poles lie at s <= (alpha - 1)/A, numerator-lower poles at
// s >= beta/B. A one-sided strip gets a fallback width (1 to the right of a
// left bound, 0.1 to the left of a right bound).
inline Strip pole_strip(std::span<const GammaTermSpec> terms) {
  if (terms.empty()) throw DomainError("pole_strip: empty term list");
  validate_terms(terms);
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lo = -inf;
  double hi = inf;
  for (const auto& t : terms) {
    if (t.slot == Slot::NumUpper) lo = std::max(lo, (t.alpha - 1.0) / t.scale);
    if (t.slot == Slot::NumLower) hi = std::min(hi, t.alpha / t.scale);
  }
  Strip strip{lo, hi, std::isfinite(lo), std::isfinite(hi)};
  if (!strip.lo_from_pole && strip.hi_from_pole) strip.lo = strip.hi - 0.1;
  if (strip.lo_from_pole && !strip.hi_from_pole) strip.hi = strip.lo + 1.0;
  if (!strip.lo_from_pole && !strip.hi_from_pole) {
    strip.lo = -0.5;
    strip.hi = 0.5;
  }
  if (!(strip.lo < strip.hi)) {
    std::ostringstream msg;
    msg << "Inconsistent coefficients: pole strip [" << strip.lo << ", "
        << strip.hi << "] is empty";
    throw InconsistentCoefficients(msg.str());
  }
  return strip;
}

// log M(s) for a term list. A denominator factor at a pole contributes -inf
// (1/Gamma vanishes there); a numerator factor at a pole raises PoleError.
inline Complex log_kernel(std::span<const GammaTermSpec> terms, Complex s) {
  Complex acc = 0.0;
  for (const auto& t : terms) {
    const Complex arg = gamma_argument(t, s);
    if (is_numerator(t.slot)) {
      acc += t.exponent * log_gamma(arg);
    } else {
      if (is_gamma_pole(arg)) {
        return {-std::numeric_limits<double>::infinity(), 0.0};
      }
      acc -= t.exponent * log_gamma(arg);
    }
  }
  return acc;
}

// Term list with unit-offset quotients folded: Gamma(w) / Gamma(w + 1) is
// 1 / w, and evaluating it as a logarithm keeps full precision for large w,
// where log Gamma(w) ~ w ln w leaves only ~1e-16 w ln w of absolute accuracy.
// A numerator and a denominator term pair up when their arguments have the
// same slope and their exponents agree.
class CompiledKernel {
 public:
  explicit CompiledKernel(std::span<const GammaTermSpec> terms) {
    validate_terms(terms);
    std::vector<bool> used(terms.size(), false);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!is_numerator(terms[i].slot)) continue;
      for (std::size_t j = 0; j < terms.size() && !used[i]; ++j) {
        if (used[j] || is_numerator(terms[j].slot)) continue;
        const auto& n = terms[i];
        const auto& d = terms[j];
        if (n.exponent != d.exponent || slope(n) != slope(d)) continue;
        const double cn = offset(n);
        const double cd = offset(d);
        const double tol = 1e-12 * std::max({1.0, std::abs(cn), std::abs(cd)});
        if (std::abs(cd - cn - 1.0) <= tol) {
          logs_.push_back({cn, slope(n), -n.exponent});  // 1 / w
        } else if (std::abs(cn - cd - 1.0) <= tol) {
          logs_.push_back({cd, slope(d), n.exponent});  // w
        } else {
          continue;
        }
        used[i] = used[j] = true;
      }
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!used[i]) gammas_.push_back(terms[i]);
    }
  }

  Complex operator()(Complex s) const {
    Complex acc = gammas_.empty() ? Complex(0.0) : log_kernel(gammas_, s);
    for (const auto& l : logs_) {
      const Complex w = l.offset + l.slope * s;
      if (w == Complex(0.0)) {
        if (l.weight < 0.0) throw PoleError("kernel pole on the contour");
        return {-std::numeric_limits<double>::infinity(), 0.0};
      }
      acc += l.weight * std::log(w);
    }
    return acc;
  }

  std::size_t folded() const { return logs_.size(); }

 private:
  struct LogFactor {
    double offset;
    double slope;
    double weight;
  };

  static double slope(const GammaTermSpec& t) {
    return t.slot == Slot::NumUpper || t.slot == Slot::DenLower ? t.scale : -t.scale;
  }
  static double offset(const GammaTermSpec& t) {
    return t.slot == Slot::NumUpper || t.slot == Slot::DenLower ? 1.0 - t.alpha : t.alpha;
  }

  std::vector<GammaTermSpec> gammas_;
  std::vector<LogFactor> logs_;
};

inline Complex integrand(std::span<const GammaTermSpec> terms, Argument z,
                         Complex s) {
  return std::exp(log_kernel(terms, s) + s * z.log());
}

inline Complex integrand(std::span<const GammaTermSpec> terms, double z,
                         Complex s) {
  return integrand(terms, Argument::from_value(z), s);
}

// Minimizer of Re log M(s) + s ln z on the real segment (lo, hi); either end
// may be infinite. Used to place the anchor where the integrand is smallest on
// the real axis, which limits cancellation along the contour.
template <typename LogKernel>
double real_axis_minimizer(LogKernel&& log_m, Argument z, double lo,
                           double hi) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto phi = [&](double x) {
    try {
      const double v = log_m(Complex(x, 0.0)).real() + x * z.log();
      return std::isnan(v) ? inf : v;
    } catch (const PoleError&) {
      return inf;
    }
  };

  double a = lo;
  double b = hi;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    // March away from the finite end until phi turns upward.
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      a = -1.0;
      b = 1.0;
    } else {
      const bool left_open = !std::isfinite(lo);
      const double base = left_open ? hi : lo;
      const double dir = left_open ? -1.0 : 1.0;
      double step = 1e-3;
      double best_x = base + dir * step;
      double best = phi(best_x);
      double prev_x = base;
      for (int k = 0; k < 80; ++k) {
        const double next_x = base + dir * step * 2.0;
        const double v = phi(next_x);
        if (v > best) {
          a = std::min(prev_x, next_x);
          b = std::max(prev_x, next_x);
          break;
        }
        prev_x = best_x;
        best_x = next_x;
        best = v;
        step *= 2.0;
        a = std::min(prev_x, best_x);
        b = std::max(prev_x, best_x);
      }
    }
  }

  // Coarse scan to pick the best bracket, then golden-section refinement.
  constexpr int kScan = 32;
  double best_x = 0.5 * (a + b);
  double best = inf;
  int best_i = kScan / 2;
  for (int i = 1; i < kScan; ++i) {
    const double x = a + (b - a) * i / kScan;
    const double v = phi(x);
    if (v < best) {
      best = v;
      best_x = x;
      best_i = i;
    }
  }
  double left = a + (b - a) * (best_i - 1) / kScan;
  double right = a + (b - a) * (best_i + 1) / kScan;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = right - ratio * (right - left);
  double x2 = left + ratio * (right - left);
  double f1 = phi(x1);
  double f2 = phi(x2);
  for (int it = 0; it < 60 && right - left > 1e-10 * (1.0 + std::abs(best_x));
       ++it) {
    if (f1 < f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - ratio * (right - left);
      f1 = phi(x1);
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + ratio * (right - left);
      f2 = phi(x2);
    }
  }
  const double x = 0.5 * (left + right);
  return phi(x) <= best ? x : best_x;
}

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr std::size_t kMaxSegments = 64000;

struct TailEstimate {
  double bound = 0.0;
  double rate = 0.0;  // smallest decay rate seen at the two end points
};

}  // namespace detail

// Generic engine over a log-kernel callable Complex -> Complex.
template <typename LogKernel>
EvalResult integrate_kernel(LogKernel&& log_m, Argument z,
                            const ContourSpec& contour) {
  contour.validate();
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double lambda = std::abs(z.log());
  std::size_t n_evals = 0;
  // Oriented variable u with s = sigma u. The preferred orientation makes
  // |z^s| decay to the left; the other one is used when only the kernel
  // decays, on the opposite side (e.g. G^{1,0}_{1,2} with z > 1).
  double sigma = z.log() < 0.0 ? -1.0 : 1.0;
  auto log_f = [&](Complex u) -> Complex {
    ++n_evals;
    const Complex s = sigma * u;
    return log_m(s) + s * z.log();
  };
  auto f = [&](Complex u) -> Complex {
    const Complex e = log_f(u);
    if (e.real() < -745.0) return 0.0;
    return std::exp(e);
  };

  // Bending pays only if |M(s) z^s| actually falls off along the horizontal
  // legs; kernels that grow to the left (e.g. Gamma(-s)) keep the straight
  // line.
  auto decays_leftward = [&]() {
    const double anchor = sigma * contour.anchor;
    for (double sign : {-1.0, 1.0}) {
      const double start = log_f(Complex(anchor, sign * contour.height)).real();
      double prev = start;
      for (int k = 1; k <= 4; ++k) {
        const double x = anchor - contour.bend * k / 4.0;
        const double cur = log_f(Complex(x, sign * contour.height)).real();
        if (!(cur <= prev + 1e-9 * std::abs(prev))) return false;
        prev = cur;
      }
      if (!(prev < start)) return false;
    }
    return true;
  };
  bool bend_mode = lambda > 0.0 && contour.bend > 0.0 && decays_leftward();
  if (lambda > 0.0 && contour.bend > 0.0 && !bend_mode) {
    sigma = -sigma;
    bend_mode = decays_leftward();
    if (!bend_mode) sigma = -sigma;
  }
  const double anchor = sigma * contour.anchor;

  double height = contour.height;
  if (bend_mode) {
    // Kernels that grow along the vertical (more Gamma factors in the
    // denominator than the numerator can balance) need the legs close to the
    // real axis; otherwise the vertical segment cancels to nothing.
    const double centre = log_f(Complex(anchor, 0.0)).real();
    auto grows = [&](double T) {
      return log_f(Complex(anchor, T)).real() > centre + 10.0 ||
             log_f(Complex(anchor, -T)).real() > centre + 10.0;
    };
    while (height > 1.0 && grows(height)) height *= 0.5;
  }
  double depth = bend_mode ? contour.bend : 0.0;
  std::size_t max_segments = 2000;
  double prev_quad_err = inf;
  EvalResult result;
  result.bent = bend_mode;

  for (int refinement = 0; refinement <= contour.max_refinements;
       ++refinement) {
    const double T = height;
    const double D = depth;
    quad::Result<Complex> q;
    if (bend_mode) {
      // tau in [0, D]: bottom leg, [D, D + 2T]: vertical, then the top leg.
      auto path = [&](double tau) -> Complex {
        if (tau <= D) return f(Complex(anchor - D + tau, -T));
        if (tau <= D + 2.0 * T) {
          return f(Complex(anchor, tau - D - T)) * Complex(0.0, 1.0);
        }
        return -f(Complex(anchor - (tau - D - 2.0 * T), T));
      };
      const quad::Interval pieces[] = {
          {0.0, D}, {D, D + T}, {D + T, D + 2.0 * T}, {D + 2.0 * T, 2.0 * D + 2.0 * T}};
      q = quad::integrate<Complex>(path, pieces, 0.5 * contour.abs_tol * detail::kTwoPi,
                                   0.5 * contour.rel_tol, max_segments);
    } else {
      // Full vertical line; tails |t| > T mapped through t = T / v^2.
      auto mapped_tail = [&](double v, double sign) -> Complex {
        const double t = T / (v * v);
        if (!std::isfinite(t)) return 0.0;
        const Complex fv = f(Complex(anchor, sign * t));
        if (fv == Complex(0.0)) return fv;
        const double jac = 2.0 * t / v;
        return fv * Complex(0.0, jac);
      };
      auto path = [&](double tau) -> Complex {
        if (tau < 1.0) {
          return mapped_tail(tau, -1.0);
        }
        if (tau <= 1.0 + 2.0 * T) {
          return f(Complex(anchor, tau - 1.0 - T)) * Complex(0.0, 1.0);
        }
        return mapped_tail(2.0 + 2.0 * T - tau, 1.0);
      };
      const quad::Interval pieces[] = {{0.0, 1.0},
                                       {1.0, 1.0 + T},
                                       {1.0 + T, 1.0 + 2.0 * T},
                                       {1.0 + 2.0 * T, 2.0 + 2.0 * T}};
      q = quad::integrate<Complex>(path, pieces, 0.5 * contour.abs_tol * detail::kTwoPi,
                                   0.5 * contour.rel_tol, max_segments);
    }

    // value = integral / (2 pi i)
    const Complex value = q.value / Complex(0.0, detail::kTwoPi);
    const double quad_err = q.abs_error / detail::kTwoPi;

    detail::TailEstimate tail;
    if (bend_mode) {
      const double d = anchor - D;
      const double delta = std::max(1.0, 0.05 * D);
      tail.rate = inf;
      for (double sign : {-1.0, 1.0}) {
        const double a0 = std::abs(f(Complex(d, sign * T)));
        if (a0 == 0.0) continue;
        const double a1 = std::abs(f(Complex(d - delta, sign * T)));
        const double rate = std::log(a0 / a1) / delta;
        if (!(rate > 0.0)) {
          tail.bound = inf;
          tail.rate = 0.0;
          break;
        }
        tail.bound += a0 / rate;
        tail.rate = std::min(tail.rate, rate);
      }
      tail.bound /= detail::kTwoPi;
    }

    result.value = value.real();
    result.imag_part = value.imag();
    result.tail_bound = tail.bound;
    result.est_abs_error = quad_err + tail.bound;
    result.refinements = refinement;
    result.n_evals = n_evals;

    const double target =
        std::max(contour.abs_tol, contour.rel_tol * std::abs(value.real()));
    const bool tail_ok = tail.bound <= 0.5 * target;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      break;
    }
    if (q.converged && tail_ok) {
      const double im_limit = std::max(1e-8, 1e-6 * std::abs(value.real()));
      if (std::abs(value.imag()) > im_limit) {
        std::ostringstream msg;
        msg << "Mellin-Barnes integral is not real: " << value.real() << " + "
            << value.imag() << "i";
        throw NoConvergence(msg.str());
      }
      return result;
    }
    if (!tail_ok) {
      if (tail.rate > 0.0 && std::isfinite(tail.rate) && std::isfinite(tail.bound)) {
        const double extra = std::log(tail.bound / (0.25 * target)) / tail.rate;
        depth += std::max(1.0, 1.1 * extra);
      } else {
        depth *= 2.0;
        height *= 2.0;
      }
    }
    if (!q.converged) {
      // More segments only help while the estimate keeps shrinking; a stalled
      // estimate is round-off, and the tolerance is out of reach.
      if (quad_err > 0.5 * prev_quad_err || max_segments >= detail::kMaxSegments) {
        break;
      }
      max_segments *= 2;
    }
    prev_quad_err = quad_err;
  }

  std::ostringstream msg;
  msg << "Mellin-Barnes integral did not converge: value " << result.value
      << ", estimated error " << result.est_abs_error << " (tail "
      << result.tail_bound << ") after " << result.refinements
      << " refinements";
  throw NoConvergence(msg.str());
}

inline ContourSpec default_contour(std::span<const GammaTermSpec> terms) {
  ContourSpec c;
  c.anchor = pole_strip(terms).mid();
  return c;
}

inline EvalResult integrate(std::span<const GammaTermSpec> terms, Argument z,
                            const ContourSpec& contour) {
  const Strip strip = pole_strip(terms);
  if (!strip.admits(contour.anchor)) {
    std::ostringstream msg;
    msg << "contour anchor " << contour.anchor << " outside pole strip ("
        << strip.lo << ", " << strip.hi << ")";
    throw InconsistentCoefficients(msg.str());
  }
  const CompiledKernel kernel(terms);
  return integrate_kernel(kernel, z, contour);
}

inline EvalResult integrate(std::span<const GammaTermSpec> terms, Argument z) {
  return integrate(terms, z, default_contour(terms));
}

}  // namespace gammasum
