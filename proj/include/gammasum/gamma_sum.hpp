#pragma once

// Distribution of Y = sum of independent Gamma(m_l, Omega_l) variates
// (shape m_l, mean Omega_l).
//
// With x_l = m_l / Omega_l the MGF is prod (x_l / (x_l + s))^{m_l}, and
//
//   p_Y(y) = 1/(2 pi i) * integral M(s) e^{s y} ds        (Re s > -min x_l)
//   F_Y(y) = 1/(2 pi i) * integral M(s) e^{s y} / s ds    (Re s > 0)
//
// The general path evaluates the reduced power form of M directly; the
// Gamma-quotient form Gamma^m(x + s) / Gamma^m(1 + x + s) is identical inside
// the strip and is what the H-bar / Meijer G blocks below encode. For integer
// m the Meijer G blocks are evaluated through eval_h.
//
// Contours sit at the real-axis minimizer of |M(s) e^{sy}| (a saddle point),
// so the integrand never exceeds the size of the result by much.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "gammasum/errors.hpp"
#include "gammasum/fox_h.hpp"
#include "gammasum/incomplete_gamma.hpp"
#include "gammasum/mellin_barnes.hpp"

namespace gammasum {

struct Branch {
  double m = 1.0;
  double omega = 1.0;

  double rate() const { return m / omega; }
  bool operator==(const Branch&) const = default;
};

class BranchParams {
 public:
  explicit BranchParams(std::vector<Branch> branches)
      : branches_(std::move(branches)) {
    if (branches_.empty()) throw DomainError("need at least one branch");
    for (std::size_t l = 0; l < branches_.size(); ++l) {
      const auto& b = branches_[l];
      if (!(b.m > 0.0) || !std::isfinite(b.m)) {
        std::ostringstream msg;
        msg << "branch " << l << ": fading figure m must be > 0";
        throw DomainError(msg.str());
      }
      if (!(b.omega > 0.0) || !std::isfinite(b.omega)) {
        std::ostringstream msg;
        msg << "branch " << l << ": omega must be > 0";
        throw DomainError(msg.str());
      }
    }
    for (const auto& b : branches_) kappa_ += b.m;
    integer_ = std::all_of(branches_.begin(), branches_.end(), [](const Branch& b) {
      return b.m == std::round(b.m);
    });
  }

  BranchParams(std::span<const double> m, std::span<const double> omega)
      : BranchParams(zip(m, omega)) {}

  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  const Branch& operator[](std::size_t l) const { return branches_[l]; }

  double kappa() const { return kappa_; }
  bool integer_m() const { return integer_; }

  double min_rate() const {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& b : branches_) r = std::min(r, b.rate());
    return r;
  }
  double mean() const {
    double s = 0.0;
    for (const auto& b : branches_) s += b.omega;
    return s;
  }
  double variance() const {
    double s = 0.0;
    for (const auto& b : branches_) s += b.omega * b.omega / b.m;
    return s;
  }
  // sum m_l ln(m_l / Omega_l)
  double log_prefactor() const {
    double s = 0.0;
    for (const auto& b : branches_) s += b.m * std::log(b.rate());
    return s;
  }

  std::vector<double> m_values() const {
    std::vector<double> v;
    for (const auto& b : branches_) v.push_back(b.m);
    return v;
  }
  std::vector<double> omega_values() const {
    std::vector<double> v;
    for (const auto& b : branches_) v.push_back(b.omega);
    return v;
  }

  bool operator==(const BranchParams& o) const { return branches_ == o.branches_; }

 private:
  static std::vector<Branch> zip(std::span<const double> m,
                                 std::span<const double> omega) {
    if (m.size() != omega.size()) {
      throw DomainError("m and omega lists differ in length");
    }
    std::vector<Branch> out;
    for (std::size_t l = 0; l < m.size(); ++l) out.push_back({m[l], omega[l]});
    return out;
  }

  std::vector<Branch> branches_;
  double kappa_ = 0.0;
  bool integer_ = false;
};

// Controls shared by the contour evaluations of this module and of mrc.
// Unset fields are chosen per evaluation: the anchor at the saddle point, the
// height and bend from the length scale 1/y of e^{s y}.
struct EvalOptions {
  bool force_general = false;
  std::optional<double> anchor;
  std::optional<double> height;
  std::optional<double> bend;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_refinements = 12;
};

namespace detail {

// log prod (x_l / (x_l + s))^{m_l}
inline Complex log_mgf(const BranchParams& params, Complex s) {
  Complex acc = 0.0;
  for (const auto& b : params.branches()) {
    const double x = b.rate();
    acc += b.m * (std::log(x) - std::log(x + s));
  }
  return acc;
}

// Width used in place of a missing right pole bound for inverse-Laplace
// contours. A fixed width would push the anchor so far from the branch point
// that e^{s y} inflates the integrand by e^{y w / 2}; 4 / y caps that at e^2.
inline double laplace_width(double y) { return std::min(1.0, 4.0 / y); }

// Anchor inside `strip`: the real-axis minimizer of log_m(s) + s * ln z,
// kept 30% of the width (or half the fallback width) from pole bounds.
template <typename LogKernel>
double saddle_anchor(LogKernel&& log_m, Argument z, const Strip& strip,
                     bool open_right) {
  const double hi = open_right ? std::numeric_limits<double>::infinity() : strip.hi;
  double x = real_axis_minimizer(log_m, z, strip.lo, hi);
  if (!std::isfinite(x)) x = strip.mid();
  const double w = strip.width();
  if (open_right) return std::max(x, strip.lo + 0.5 * w);
  return std::clamp(x, strip.lo + 0.3 * w, strip.hi - 0.3 * w);
}

inline void check_anchor(const Strip& strip, bool open_right, double anchor) {
  const bool ok = anchor > strip.lo && (open_right || anchor < strip.hi);
  if (!ok || !std::isfinite(anchor)) {
    std::ostringstream msg;
    msg << "contour anchor " << anchor << " outside admissible strip ("
        << strip.lo << ", " << (open_right ? std::numeric_limits<double>::infinity()
                                           : strip.hi)
        << ")";
    throw InconsistentCoefficients(msg.str());
  }
}

// Contour for a kernel whose leftmost singularity is strip.lo. Everything
// scales with 1/y: a fixed height would make the vertical segment cross
// ~ y T / (2 pi) oscillations of e^{i t y}, while the legs only need to run
// until e^{s y} has decayed.
inline ContourSpec laplace_contour(const EvalOptions& opt, const Strip& strip,
                                   double anchor, double y) {
  ContourSpec c;
  c.anchor = anchor;
  const double dist = anchor - strip.lo;
  c.height = opt.height ? *opt.height : 4.0 * dist + 30.0 / y;
  c.bend = opt.bend ? *opt.bend : dist + 40.0 / y;
  c.rel_tol = opt.rel_tol;
  c.abs_tol = opt.abs_tol;
  c.max_refinements = opt.max_refinements;
  return c;
}

// Fixed-geometry contour (z = 1 integrals) with the caller's tolerances.
inline ContourSpec plain_contour(const EvalOptions& opt, double anchor) {
  ContourSpec c;
  c.anchor = anchor;
  if (opt.height) c.height = *opt.height;
  if (opt.bend) c.bend = *opt.bend;
  c.rel_tol = opt.rel_tol;
  c.abs_tol = opt.abs_tol;
  c.max_refinements = opt.max_refinements;
  return c;
}

inline void check_y(double y, const char* what) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    std::ostringstream msg;
    msg << what << ": y must be positive and finite (got " << y << ")";
    throw DomainError(msg.str());
  }
}

inline EvalResult scaled(EvalResult r, double factor) {
  r.value *= factor;
  r.est_abs_error *= factor;
  r.tail_bound *= factor;
  r.imag_part *= factor;
  return r;
}

// abs_tol bounds both the raw contour integral and the scaled value.
inline ContourSpec unscaled_tol(ContourSpec c, double factor) {
  if (std::isfinite(factor) && factor > 1.0) {
    c.abs_tol = std::max(c.abs_tol / factor, std::numeric_limits<double>::min());
  }
  return c;
}

}  // namespace detail

// Admissible anchors of the PDF contour: right of every branch point
// s = -m_l / Omega_l. The right end is a fallback width, not a pole.
inline Strip pdf_strip(const BranchParams& params, double y) {
  detail::check_y(y, "pdf");
  const double lo = -params.min_rate();
  return {lo, lo + detail::laplace_width(y), true, false};
}

// CDF contours either run between the branch points and the pole at s = 0
// (giving F - 1) or right of s = 0 (giving F).
inline Strip cdf_strip_left(const BranchParams& params) {
  return {-params.min_rate(), 0.0, true, true};
}
inline Strip cdf_strip_right(double y) {
  return {0.0, detail::laplace_width(y), true, false};
}

// ---------------------------------------------------------------------------
// H-bar / Meijer G parameter blocks

// H-bar^{0,L}_{L,L}[e^y | (1 - x_l, 1, m_l); (-x_l, 1, m_l)], times
// prod x_l^{m_l}, is the PDF.
inline HFamilySpec pdf_hbar_spec(const BranchParams& params, double y) {
  HFamilySpec spec;
  spec.kind = HKind::FoxHBar;
  spec.m = 0;
  spec.n = static_cast<int>(params.size());
  for (const auto& b : params.branches()) {
    spec.upper.push_back({1.0 - b.rate(), 1.0, b.m});
    spec.lower.push_back({-b.rate(), 1.0, b.m});
  }
  spec.z = Argument::from_log(y);
  return spec;
}

// PDF block extended by (1, 1, 1) / (0, 1, 1), the 1/s factor of the CDF.
// Evaluated right of s = 0 it gives F(y); between the branch points and 0 it
// gives F(y) - 1.
inline HFamilySpec cdf_hbar_spec(const BranchParams& params, double y) {
  HFamilySpec spec = pdf_hbar_spec(params, y);
  spec.n += 1;
  spec.upper.push_back({1.0, 1.0, 1.0});
  spec.lower.push_back({0.0, 1.0, 1.0});
  return spec;
}

// G^{k,0}_{k,k}[e^{-y} | 1 + x_l (m_l times); x_l (m_l times)], k = sum m_l.
inline HFamilySpec pdf_meijer_spec(const BranchParams& params, double y) {
  if (!params.integer_m()) {
    throw DomainError("Meijer G path requires integer fading figures");
  }
  HFamilySpec spec;
  spec.kind = HKind::MeijerG;
  for (const auto& b : params.branches()) {
    for (int k = 0; k < static_cast<int>(b.m); ++k) {
      spec.upper.push_back({1.0 + b.rate()});
      spec.lower.push_back({b.rate()});
    }
  }
  spec.m = spec.q();
  spec.n = 0;
  spec.z = Argument::from_log(-y);
  return spec;
}

// G^{k+1,0}_{k+1,k+1}[e^{-y} | 1 + x_l ..., 1; x_l ..., 0]
inline HFamilySpec cdf_meijer_spec(const BranchParams& params, double y) {
  HFamilySpec spec = pdf_meijer_spec(params, y);
  spec.upper.push_back({1.0});
  spec.lower.push_back({0.0});
  spec.m = spec.q();
  return spec;
}

// ---------------------------------------------------------------------------
// PDF

// Anchor used when EvalOptions::anchor is unset.
inline double pdf_anchor(const BranchParams& params, double y) {
  auto log_m = [&params](Complex s) { return detail::log_mgf(params, s); };
  return detail::saddle_anchor(log_m, Argument::from_log(y), pdf_strip(params, y), true);
}

inline EvalResult pdf_general_result(const BranchParams& params, double y,
                                     const EvalOptions& opt = {}) {
  const Strip strip = pdf_strip(params, y);
  const Argument z = Argument::from_log(y);
  auto log_m = [&params](Complex s) { return detail::log_mgf(params, s); };
  const double anchor = opt.anchor ? *opt.anchor : pdf_anchor(params, y);
  detail::check_anchor(strip, true, anchor);
  return integrate_kernel(log_m, z, detail::laplace_contour(opt, strip, anchor, y));
}

namespace detail {

// The Gamma-quotient integrands of the Meijer G blocks subtract log-Gamma
// values of size ~|s| ln|s|, so their relative accuracy is about
// 1e-16 |s| ln|s| at the far end of the contour. Beyond this extent the
// dispatcher uses the reduced form instead.
inline constexpr double kGammaFormMaxExtent = 1e3;

inline double extent(const ContourSpec& c) {
  return std::abs(c.anchor) + c.height + c.bend;
}

// Contour of the integer-m PDF block, in the Laplace variable.
inline ContourSpec pdf_integer_contour(const BranchParams& params, double y,
                                       const EvalOptions& opt) {
  const Strip strip = pdf_strip(params, y);
  const double anchor = opt.anchor ? *opt.anchor : pdf_anchor(params, y);
  check_anchor(strip, true, anchor);
  return laplace_contour(opt, strip, anchor, y);
}

}  // namespace detail

inline EvalResult pdf_integer_result(const BranchParams& params, double y,
                                     const EvalOptions& opt = {}) {
  const HFamilySpec spec = pdf_meijer_spec(params, y);
  // The G block runs in the mirrored variable (argument e^{-y}).
  ContourSpec c = detail::pdf_integer_contour(params, y, opt);
  c.anchor = -c.anchor;
  const double factor = std::exp(params.log_prefactor());
  return detail::scaled(eval_h(spec, detail::unscaled_tol(c, factor)), factor);
}

inline EvalResult pdf_result(const BranchParams& params, double y,
                             const EvalOptions& opt = {}) {
  if (params.integer_m() && !opt.force_general &&
      detail::extent(detail::pdf_integer_contour(params, y, opt)) <=
          detail::kGammaFormMaxExtent) {
    return pdf_integer_result(params, y, opt);
  }
  return pdf_general_result(params, y, opt);
}

inline double pdf(const BranchParams& params, double y, const EvalOptions& opt = {}) {
  return pdf_result(params, y, opt).value;
}

inline double pdf_integer(const BranchParams& params, double y,
                          const EvalOptions& opt = {}) {
  return pdf_integer_result(params, y, opt).value;
}

// ---------------------------------------------------------------------------
// CDF

inline EvalResult cdf_general_result(const BranchParams& params, double y,
                                     const EvalOptions& opt = {}) {
  const Argument z = Argument::from_log(y);
  auto log_m = [&params](Complex s) {
    return detail::log_mgf(params, s) - std::log(s);
  };
  const Strip left = cdf_strip_left(params);
  const Strip right = cdf_strip_right(y);

  bool use_left = false;
  double anchor = 0.0;
  if (opt.anchor) {
    anchor = *opt.anchor;
    use_left = anchor < 0.0;
  } else {
    // Take the side whose saddle is lower: the integrand there is smaller
    // relative to the result, so less cancellation.
    const double a_left = detail::saddle_anchor(log_m, z, left, false);
    const double a_right = detail::saddle_anchor(log_m, z, right, true);
    auto phi = [&](double x) { return log_m(Complex(x, 0.0)).real() + x * y; };
    use_left = phi(a_left) < phi(a_right);
    anchor = use_left ? a_left : a_right;
  }
  const Strip& strip = use_left ? left : right;
  detail::check_anchor(strip, !use_left, anchor);
  ContourSpec c = detail::laplace_contour(opt, left, anchor, y);
  EvalResult r = integrate_kernel(log_m, z, c);
  if (use_left) r.value += 1.0;
  return r;
}

namespace detail {

inline ContourSpec cdf_integer_contour(const BranchParams& params, double y,
                                       const EvalOptions& opt) {
  auto log_m = [&params](Complex s) { return log_mgf(params, s) - std::log(s); };
  const Strip right = cdf_strip_right(y);
  const double anchor = opt.anchor
                            ? *opt.anchor
                            : saddle_anchor(log_m, Argument::from_log(y), right, true);
  check_anchor(right, true, anchor);
  return laplace_contour(opt, cdf_strip_left(params), anchor, y);
}

}  // namespace detail

inline EvalResult cdf_integer_result(const BranchParams& params, double y,
                                     const EvalOptions& opt = {}) {
  const HFamilySpec spec = cdf_meijer_spec(params, y);
  ContourSpec c = detail::cdf_integer_contour(params, y, opt);
  c.anchor = -c.anchor;
  const double factor = std::exp(params.log_prefactor());
  return detail::scaled(eval_h(spec, detail::unscaled_tol(c, factor)), factor);
}

inline EvalResult cdf_result(const BranchParams& params, double y,
                             const EvalOptions& opt = {}) {
  if (!(y >= 0.0) || std::isnan(y)) {
    throw DomainError("cdf: y must be >= 0");
  }
  if (y == 0.0) return {};
  if (std::isinf(y)) {
    EvalResult r;
    r.value = 1.0;
    return r;
  }
  const bool gamma_form =
      params.integer_m() && !opt.force_general &&
      detail::extent(detail::cdf_integer_contour(params, y, opt)) <=
          detail::kGammaFormMaxExtent;
  EvalResult r = gamma_form ? cdf_integer_result(params, y, opt)
                            : cdf_general_result(params, y, opt);
  r.value = std::clamp(r.value, 0.0, 1.0);
  return r;
}

inline double cdf(const BranchParams& params, double y, const EvalOptions& opt = {}) {
  return cdf_result(params, y, opt).value;
}

inline double cdf_integer(const BranchParams& params, double y,
                          const EvalOptions& opt = {}) {
  if (y == 0.0) return 0.0;
  return std::clamp(cdf_integer_result(params, y, opt).value, 0.0, 1.0);
}

// CDF of one Gamma(m, omega) variate: P(m, m gamma / omega).
inline double cdf_single(double m, double omega, double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("cdf_single: gamma must be >= 0");
  if (!(omega > 0.0)) throw DomainError("cdf_single: omega must be > 0");
  return regularized_gamma_p(m, m * gamma / omega);
}

// The same quantity through the single-branch Meijer G form (integer m).
inline double cdf_single_meijer(double m, double omega, double gamma) {
  if (m != std::round(m)) throw DomainError("Meijer G form needs integer m");
  return cdf(BranchParams({Branch{m, omega}}), gamma);
}

// ---------------------------------------------------------------------------
// Series oracle

struct OracleValue {
  double value = 0.0;
  double truncation_bound = 0.0;
};

// Confluent Lauricella series
//   p(y) = prod x_l^{m_l} y^{k-1} / Gamma(k) *
//          sum_{i} prod (m_l)_{i_l} (-x_l y)^{i_l} / i_l! / (k)_{|i|}
// grouped by total degree N = |i|; the degree-N coefficient is a convolution
// of the per-branch series. Alternating, so usable only while the terms stay
// well inside double range.
inline OracleValue pdf_lauricella_oracle(const BranchParams& params, double y,
                                         int max_terms = 200) {
  if (params.size() > 3) throw DomainError("series oracle supports L <= 3");
  detail::check_y(y, "pdf_lauricella_oracle");
  if (max_terms < 2) throw DomainError("max_terms must be >= 2");
  const auto n = static_cast<std::size_t>(max_terms);

  // Kummer-type shift: with sum b_l = c the series equals
  // e^{-x_min y} times the same series at arguments -(x_l - x_min) y, which
  // are all <= 0 and smaller in magnitude, so far less cancellation.
  const double x_min = params.min_rate();
  std::vector<double> conv(n, 0.0);
  conv[0] = 1.0;
  for (const auto& b : params.branches()) {
    const double t = -(b.rate() - x_min) * y;
    std::vector<double> series(n, 0.0);
    series[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
      series[i] = series[i - 1] * (b.m + static_cast<double>(i) - 1.0) * t /
                  static_cast<double>(i);
    }
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (conv[i] == 0.0) continue;
      for (std::size_t j = 0; i + j < n; ++j) next[i + j] += conv[i] * series[j];
    }
    conv = std::move(next);
  }
  const double kappa = params.kappa();
  double sum = 0.0;
  double largest = 0.0;
  double last = 0.0;
  double prev = 0.0;
  for (std::size_t N = 0; N < n; ++N) {
    // 1 / (kappa)_N through lgamma; the Pochhammer symbol overflows first.
    const double inv_poch =
        std::exp(std::lgamma(kappa) - std::lgamma(kappa + static_cast<double>(N)));
    const double term = conv[N] * inv_poch;
    if (!std::isfinite(term)) throw OracleDiverged("series terms overflowed");
    sum += term;
    largest = std::max(largest, std::abs(term));
    prev = last;
    last = term;
  }
  const double ratio = prev != 0.0 ? std::abs(last / prev) : 0.0;
  if (!(ratio < 1.0) || std::abs(last) > 1e-12 * std::abs(sum)) {
    throw OracleDiverged("series terms still significant at max_terms");
  }
  if (largest * 1e-15 > 1e-9 * std::abs(sum)) {
    throw OracleDiverged("series lost precision to cancellation");
  }
  const double tail = std::abs(last) * ratio / (1.0 - ratio);
  const double log_scale = params.log_prefactor() + (kappa - 1.0) * std::log(y) -
                           std::lgamma(kappa) - x_min * y;
  const double scale = std::exp(log_scale);
  return {scale * sum, scale * tail};
}

}  // namespace gammasum
