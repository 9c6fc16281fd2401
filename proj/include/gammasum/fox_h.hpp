#pragma once

// Meijer G, Fox H, Fox H-bar and the extended H-hat function as parameter
// blocks over one Mellin-Barnes evaluator.
//
//   H^{m,n}_{p,q}[ z | (alpha_j, A_j, a_j)_{1..p} ; (beta_j, B_j, b_j)_{1..q} ]
//
// Upper entries 1..n and lower entries 1..m go to the numerator, the rest to
// the denominator. The kind only constrains which scales/exponents may differ
// from one; evaluation is identical for all four.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gammasum/errors.hpp"
#include "gammasum/mellin_barnes.hpp"

namespace gammasum {

enum class HKind { MeijerG, FoxH, FoxHBar, ExtHHat };

inline std::string_view to_string(HKind kind) {
  switch (kind) {
    case HKind::MeijerG: return "g";
    case HKind::FoxH: return "h";
    case HKind::FoxHBar: return "hbar";
    case HKind::ExtHHat: return "hhat";
  }
  return "?";
}

inline std::optional<HKind> parse_hkind(std::string_view name) {
  if (name == "g" || name == "meijer_g") return HKind::MeijerG;
  if (name == "h" || name == "fox_h") return HKind::FoxH;
  if (name == "hbar" || name == "fox_hbar") return HKind::FoxHBar;
  if (name == "hhat" || name == "ext_hhat") return HKind::ExtHHat;
  return std::nullopt;
}

// One (offset, scale, exponent) triplet.
struct HParam {
  double offset = 0.0;
  double scale = 1.0;
  double exponent = 1.0;

  bool operator==(const HParam&) const = default;
};

struct HFamilySpec {
  HKind kind = HKind::ExtHHat;
  int m = 0;
  int n = 0;
  std::vector<HParam> upper;  // length p
  std::vector<HParam> lower;  // length q
  Argument z;

  int p() const { return static_cast<int>(upper.size()); }
  int q() const { return static_cast<int>(lower.size()); }

  bool operator==(const HFamilySpec&) const = default;
};

// m = 0 is accepted: the inverse-Laplace forms (e.g. H-bar^{0,L}_{L,L}) have
// no numerator-lower factors.
inline void validate(const HFamilySpec& spec) {
  if (spec.m < 0 || spec.m > spec.q()) {
    throw DomainError("H-function: require 0 <= m <= q");
  }
  if (spec.n < 0 || spec.n > spec.p()) {
    throw DomainError("H-function: require 0 <= n <= p");
  }
  for (const auto* list : {&spec.upper, &spec.lower}) {
    for (const auto& e : *list) {
      if (!(e.scale > 0.0)) throw DomainError("H-function: scales must be > 0");
      if (!(e.exponent > 0.0)) {
        throw DomainError("H-function: exponents must be > 0");
      }
    }
  }
  auto all_of = [](std::span<const HParam> xs, auto pred) {
    return std::all_of(xs.begin(), xs.end(), pred);
  };
  auto unit_exp = [](const HParam& e) { return e.exponent == 1.0; };
  auto unit_scale = [](const HParam& e) { return e.scale == 1.0; };
  switch (spec.kind) {
    case HKind::MeijerG:
      if (!all_of(spec.upper, unit_scale) || !all_of(spec.lower, unit_scale) ||
          !all_of(spec.upper, unit_exp) || !all_of(spec.lower, unit_exp)) {
        throw DomainError("Meijer G: all scales and exponents must be 1");
      }
      break;
    case HKind::FoxH:
      if (!all_of(spec.upper, unit_exp) || !all_of(spec.lower, unit_exp)) {
        throw DomainError("Fox H: all exponents must be 1");
      }
      break;
    case HKind::FoxHBar: {
      const std::span<const HParam> up(spec.upper);
      const std::span<const HParam> lo(spec.lower);
      if (!all_of(up.subspan(static_cast<std::size_t>(spec.n)), unit_exp) ||
          !all_of(lo.first(static_cast<std::size_t>(spec.m)), unit_exp)) {
        throw DomainError(
            "Fox H-bar: exponents must be 1 on denominator-upper and "
            "numerator-lower entries");
      }
      break;
    }
    case HKind::ExtHHat:
      break;
  }
}

inline std::vector<GammaTermSpec> to_terms(const HFamilySpec& spec) {
  validate(spec);
  std::vector<GammaTermSpec> terms;
  terms.reserve(spec.upper.size() + spec.lower.size());
  for (int j = 0; j < spec.p(); ++j) {
    const auto& e = spec.upper[static_cast<std::size_t>(j)];
    terms.push_back({e.offset, e.scale, e.exponent,
                     j < spec.n ? Slot::NumUpper : Slot::DenUpper});
  }
  for (int j = 0; j < spec.q(); ++j) {
    const auto& e = spec.lower[static_cast<std::size_t>(j)];
    terms.push_back({e.offset, e.scale, e.exponent,
                     j < spec.m ? Slot::NumLower : Slot::DenLower});
  }
  return terms;
}

inline HFamilySpec reduce_kind(HFamilySpec spec) {
  auto unit = [](const HParam& e) { return e.exponent == 1.0; };
  auto unit_scale = [](const HParam& e) { return e.scale == 1.0; };
  const bool exps = std::all_of(spec.upper.begin(), spec.upper.end(), unit) &&
                    std::all_of(spec.lower.begin(), spec.lower.end(), unit);
  if (!exps) return spec;
  const bool scales =
      std::all_of(spec.upper.begin(), spec.upper.end(), unit_scale) &&
      std::all_of(spec.lower.begin(), spec.lower.end(), unit_scale);
  spec.kind = scales ? HKind::MeijerG : HKind::FoxH;
  return spec;
}

inline EvalResult eval_h(const HFamilySpec& spec,
                         const std::optional<ContourSpec>& contour_override = {}) {
  const auto terms = to_terms(spec);
  if (terms.empty()) throw DomainError("H-function: no parameters");
  const ContourSpec contour =
      contour_override ? *contour_override : default_contour(terms);
  return integrate(terms, spec.z, contour);
}

}  // namespace gammasum
