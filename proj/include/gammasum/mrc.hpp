#pragma once

// L-branch maximal ratio combining over Nakagami-m fading: the combiner SNR
// is the Gamma sum of gamma_sum.hpp, so outage is its CDF and the average BER
// is the CEP Gamma(p, q y) / (2 Gamma(p)) averaged over its PDF.
//
// Swapping the order of integration gives a Mellin-Barnes integral at z = 1
// with kernel
//   (q + s)^{-p} * (-1/s) * prod (x_l - s)^{-m_l},   -q < Re s < 0,
// times q^p / 2 * prod x_l^{m_l}. With z = 1 there is no exponential factor,
// so the integral runs along the full vertical line; the kernel decays like
// |t|^{-(1 + p + sum m)}.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "gammasum/errors.hpp"
#include "gammasum/fox_h.hpp"
#include "gammasum/gamma_sum.hpp"
#include "gammasum/incomplete_gamma.hpp"
#include "gammasum/mellin_barnes.hpp"
#include "gammasum/quadrature.hpp"

namespace gammasum {

enum class ModulationKind { CBFSK, CBPSK, NBFSK, DBPSK, Custom };

struct Modulation {
  ModulationKind kind = ModulationKind::Custom;
  double p = 1.0;
  double q = 1.0;

  static constexpr Modulation cbfsk() { return {ModulationKind::CBFSK, 0.5, 0.5}; }
  static constexpr Modulation cbpsk() { return {ModulationKind::CBPSK, 0.5, 1.0}; }
  static constexpr Modulation nbfsk() { return {ModulationKind::NBFSK, 1.0, 0.5}; }
  static constexpr Modulation dbpsk() { return {ModulationKind::DBPSK, 1.0, 1.0}; }

  static Modulation custom(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
      throw DomainError("modulation: p and q must be positive");
    }
    return {ModulationKind::Custom, p, q};
  }

  std::string name() const {
    switch (kind) {
      case ModulationKind::CBFSK: return "cbfsk";
      case ModulationKind::CBPSK: return "cbpsk";
      case ModulationKind::NBFSK: return "nbfsk";
      case ModulationKind::DBPSK: return "dbpsk";
      case ModulationKind::Custom: break;
    }
    return "custom";
  }

  bool operator==(const Modulation&) const = default;
};

inline constexpr std::array<Modulation, 4> kNamedModulations = {
    Modulation::cbfsk(), Modulation::cbpsk(), Modulation::nbfsk(),
    Modulation::dbpsk()};

inline std::optional<Modulation> modulation_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& mod : kNamedModulations) {
    if (mod.name() == lower) return mod;
  }
  return std::nullopt;
}

inline double outage(const BranchParams& params, double y_th,
                     const EvalOptions& opt = {}) {
  return cdf(params, y_th, opt);
}

// Gamma(p, q y) / (2 Gamma(p))
inline double cep(const Modulation& mod, double y) {
  if (!(y >= 0.0)) throw DomainError("cep: y must be >= 0");
  return 0.5 * regularized_gamma_q(mod.p, mod.q * y);
}

// 1/2 prod (1 + q Omega_l / m_l)^{-m_l}: the BER for p = 1, from the MGF.
inline double ber_p1_closed_form(const BranchParams& params, double q) {
  double log_v = 0.0;
  for (const auto& b : params.branches()) {
    log_v -= b.m * std::log1p(q / b.rate());
  }
  return 0.5 * std::exp(log_v);
}

// H-hat^{L+1,1}_{L+2,L+2}[1 | (1-q,1,p), (1+x_l,1,m_l)..., (1,1,1);
//                            (0,1,1), (x_l,1,m_l)..., (-q,1,p)]
inline HFamilySpec ber_hhat_spec(const BranchParams& params, const Modulation& mod) {
  HFamilySpec spec;
  spec.kind = HKind::ExtHHat;
  spec.n = 1;
  spec.m = static_cast<int>(params.size()) + 1;
  spec.upper.push_back({1.0 - mod.q, 1.0, mod.p});
  for (const auto& b : params.branches()) spec.upper.push_back({1.0 + b.rate(), 1.0, b.m});
  spec.upper.push_back({1.0, 1.0, 1.0});
  spec.lower.push_back({0.0, 1.0, 1.0});
  for (const auto& b : params.branches()) spec.lower.push_back({b.rate(), 1.0, b.m});
  spec.lower.push_back({-mod.q, 1.0, mod.p});
  spec.z = Argument::from_value(1.0);
  return spec;
}

// Integer-m coherent form: every branch entry repeated m_l times with unit
// exponent; only the (1-q) / (-q) pair keeps the exponent p, which sits on a
// numerator-upper / denominator-lower pair and so is H-bar representable.
inline HFamilySpec ber_coherent_spec(const BranchParams& params, const Modulation& mod) {
  if (!params.integer_m()) throw DomainError("integer-m BER form needs integer m");
  HFamilySpec spec;
  spec.kind = HKind::FoxHBar;
  spec.n = 1;
  spec.upper.push_back({1.0 - mod.q, 1.0, mod.p});
  spec.lower.push_back({0.0});
  for (const auto& b : params.branches()) {
    for (int k = 0; k < static_cast<int>(b.m); ++k) {
      spec.upper.push_back({1.0 + b.rate()});
      spec.lower.push_back({b.rate()});
    }
  }
  spec.upper.push_back({1.0});
  spec.lower.push_back({-mod.q, 1.0, mod.p});
  spec.m = spec.q() - 1;
  spec.z = Argument::from_value(1.0);
  return spec;
}

// Integer-m, p = 1: G^{k+1,1}_{k+2,k+2}[1 | 1-q, 1+x_l..., 1; 0, x_l..., -q]
inline HFamilySpec ber_noncoherent_spec(const BranchParams& params,
                                        const Modulation& mod) {
  if (mod.p != 1.0) throw DomainError("Meijer G BER form needs p = 1");
  HFamilySpec spec = ber_coherent_spec(params, mod);
  spec.kind = HKind::MeijerG;
  return spec;
}

namespace detail {

inline double ber_anchor(std::span<const GammaTermSpec> terms) {
  auto log_m = [&terms](Complex s) { return log_kernel(terms, s); };
  return saddle_anchor(log_m, Argument::from_value(1.0), pole_strip(terms), false);
}

inline void check_modulation(const Modulation& mod) {
  if (!(mod.p > 0.0) || !(mod.q > 0.0)) {
    throw DomainError("modulation: p and q must be positive");
  }
}

inline EvalResult eval_ber_spec(const BranchParams& params, const Modulation& mod,
                                const HFamilySpec& spec, const EvalOptions& opt) {
  const auto terms = to_terms(spec);
  const Strip strip = pole_strip(terms);
  double anchor = 0.0;
  if (opt.anchor) {
    anchor = *opt.anchor;
    check_anchor(strip, false, anchor);
  } else {
    anchor = ber_anchor(terms);
  }
  const ContourSpec c = plain_contour(opt, anchor);
  const double factor =
      0.5 * std::pow(mod.q, mod.p) * std::exp(params.log_prefactor());
  return scaled(eval_h(spec, unscaled_tol(c, factor)), factor);
}

}  // namespace detail

// Admissible anchors of every BER contour.
inline Strip ber_strip(const Modulation& mod) { return {-mod.q, 0.0, true, true}; }

// Anchor used when EvalOptions::anchor is unset.
inline double ber_anchor(const BranchParams& params, const Modulation& mod) {
  return detail::ber_anchor(to_terms(ber_hhat_spec(params, mod)));
}

inline EvalResult ber_general_result(const BranchParams& params, const Modulation& mod,
                                     const EvalOptions& opt = {}) {
  detail::check_modulation(mod);
  return detail::eval_ber_spec(params, mod, ber_hhat_spec(params, mod), opt);
}

inline EvalResult ber_integer_coherent_result(const BranchParams& params,
                                              const Modulation& mod,
                                              const EvalOptions& opt = {}) {
  detail::check_modulation(mod);
  if (mod.p != 0.5) throw DomainError("coherent BER form needs p = 1/2");
  return detail::eval_ber_spec(params, mod, ber_coherent_spec(params, mod), opt);
}

inline EvalResult ber_integer_noncoherent_result(const BranchParams& params,
                                                 const Modulation& mod,
                                                 const EvalOptions& opt = {}) {
  detail::check_modulation(mod);
  return detail::eval_ber_spec(params, mod, ber_noncoherent_spec(params, mod), opt);
}

inline EvalResult ber_result(const BranchParams& params, const Modulation& mod,
                             const EvalOptions& opt = {}) {
  detail::check_modulation(mod);
  if (params.integer_m() && !opt.force_general) {
    if (mod.p == 0.5) return ber_integer_coherent_result(params, mod, opt);
    if (mod.p == 1.0) return ber_integer_noncoherent_result(params, mod, opt);
  }
  return ber_general_result(params, mod, opt);
}

inline double ber(const BranchParams& params, const Modulation& mod,
                  const EvalOptions& opt = {}) {
  return ber_result(params, mod, opt).value;
}

inline double ber_integer_coherent(const BranchParams& params, const Modulation& mod,
                                   const EvalOptions& opt = {}) {
  return ber_integer_coherent_result(params, mod, opt).value;
}

inline double ber_integer_noncoherent(const BranchParams& params,
                                      const Modulation& mod,
                                      const EvalOptions& opt = {}) {
  return ber_integer_noncoherent_result(params, mod, opt).value;
}

// Direct average of cep * pdf over y. The range is cut where both factors
// have decayed by e^{-60}. Near zero the density behaves like y^{k - 1}
// (k = sum m), which y = a w^{1/k} turns into a smooth integrand in w.
inline double ber_quadrature_oracle(const BranchParams& params, const Modulation& mod,
                                    int max_segments = 2000, double rel_tol = 1e-10) {
  detail::check_modulation(mod);
  const double mean = params.mean();
  const double sd = std::sqrt(params.variance());
  const double decay = params.min_rate() + mod.q;
  const double y_hi = mean + 20.0 * sd + 60.0 / decay;
  EvalOptions inner;
  inner.force_general = true;
  inner.rel_tol = 1e-11;
  inner.abs_tol = 1e-300;
  auto f = [&](double y) { return cep(mod, y) * pdf(params, y, inner); };

  const double a = 0.25 * mean;
  const double k = 1.0 / std::min(1.0, params.kappa());
  auto near_zero = [&](double w) {
    if (w <= 0.0) return 0.0;
    return f(a * std::pow(w, k)) * a * k * std::pow(w, k - 1.0);
  };
  const auto segs = static_cast<std::size_t>(max_segments);
  const auto head = quad::integrate<double>(near_zero, 0.0, 1.0, 1e-300, rel_tol, segs);
  const quad::Interval pieces[] = {
      {a, mean}, {mean, mean + 4.0 * sd}, {mean + 4.0 * sd, y_hi}};
  const auto body = quad::integrate<double>(f, pieces, 1e-300, rel_tol, segs);
  if (!head.converged || !body.converged) {
    throw NoConvergence("ber quadrature oracle did not reach its tolerance");
  }
  return head.value + body.value;
}

}  // namespace gammasum
