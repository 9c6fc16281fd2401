#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gammasum/fox_h.hpp"

using namespace gammasum;

namespace {

HFamilySpec spec(HKind kind, int m, int n, std::vector<HParam> upper, std::vector<HParam> lower,
                 double z) {
  return {kind, m, n, std::move(upper), std::move(lower), Argument::from_value(z)};
}

}  // namespace

TEST(FoxH, CahenMellin) {
  const auto s = spec(HKind::MeijerG, 1, 0, {}, {{0.0}}, 1.0);
  EXPECT_NEAR(eval_h(s).value, 0.3678794412, 1e-10);
}

TEST(FoxH, BesselK) {
  // G^{2,0}_{0,2}[z | 0, 3/2] = 2 z^{3/4} K_{3/2}(2 sqrt z)
  const auto s = spec(HKind::MeijerG, 2, 0, {}, {{0.0}, {1.5}}, 2.0);
  EXPECT_NEAR(eval_h(s).value, 0.200537239577565953, 1e-10);
}

TEST(FoxH, ExponentialPairBlock) {
  // G^{2,0}_{2,2}[e^{-y} | 1 + x1, 1 + x2; x1, x2] x1 x2 with x = 1 / Omega
  const double x1 = 1.0;
  const double x2 = 0.5;
  const auto s = spec(HKind::MeijerG, 2, 0, {{1 + x1}, {1 + x2}}, {{x1}, {x2}}, std::exp(-1.0));
  EXPECT_NEAR(eval_h(s).value * x1 * x2, 0.2386512185, 1e-10);
}

TEST(FoxH, ScaledEntry) {
  // H^{1,0}_{0,1}[z | (0, 2)] = exp(-sqrt z) / 2
  for (double z : {0.5, 2.0, 9.0}) {
    const auto s = spec(HKind::FoxH, 1, 0, {}, {{0.0, 2.0}}, z);
    EXPECT_NEAR(eval_h(s).value, 0.5 * std::exp(-std::sqrt(z)), 1e-10) << z;
  }
}

TEST(FoxH, IntegerExponentOnNumerator) {
  // {Gamma(-s)}^2 is the kernel of G^{2,0}_{0,2}[z | 0, 0] = 2 K_0(2 sqrt z)
  const auto hat = spec(HKind::ExtHHat, 1, 0, {}, {{0.0, 1.0, 2.0}}, 1.5);
  const auto g = spec(HKind::MeijerG, 2, 0, {}, {{0.0}, {0.0}}, 1.5);
  EXPECT_NEAR(eval_h(hat).value, eval_h(g).value, 1e-10);
}

TEST(FoxH, FourWayAgreement) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> zd(0.2, 3.0);
  for (int i = 0; i < 20; ++i) {
    // G^{m,n}_{p,q} with p < q so the integral converges for every z
    const int q = 2 + i % 2;
    const int p = 1;
    std::vector<HParam> upper = {{u(rng) - 0.5}};
    std::vector<HParam> lower;
    for (int j = 0; j < q; ++j) lower.push_back({u(rng) + 0.6});
    const int m = 1 + i % q;
    const int n = i % 2;
    const double z = zd(rng);
    const double g = eval_h(spec(HKind::MeijerG, m, n, upper, lower, z)).value;
    const double h = eval_h(spec(HKind::FoxH, m, n, upper, lower, z)).value;
    const double hbar = eval_h(spec(HKind::FoxHBar, m, n, upper, lower, z)).value;
    const double hhat = eval_h(spec(HKind::ExtHHat, m, n, upper, lower, z)).value;
    EXPECT_NEAR(h, g, 1e-10 * std::max(1.0, std::abs(g))) << i;
    EXPECT_NEAR(hbar, h, 1e-10 * std::max(1.0, std::abs(g))) << i;
    EXPECT_NEAR(hhat, hbar, 1e-10 * std::max(1.0, std::abs(g))) << i;
  }
}

TEST(FoxH, PermutationWithinBlocks) {
  const auto a = spec(HKind::MeijerG, 2, 1, {{0.3}, {1.7}}, {{0.5}, {1.2}, {0.1}}, 0.8);
  const auto b = spec(HKind::MeijerG, 2, 1, {{0.3}, {1.7}}, {{1.2}, {0.5}, {0.1}}, 0.8);
  EXPECT_NEAR(eval_h(a).value, eval_h(b).value, 1e-12);
}

TEST(FoxH, FractionalExponentsBetweenIntegerOnes) {
  // Gamma(-s)^a z^s with a = 1 and a = 2 bracket a = 1.5 at z = 1 on the real line
  auto v = [](double a) {
    return eval_h(spec(HKind::ExtHHat, 1, 0, {}, {{0.0, 1.0, a}}, 1.0)).value;
  };
  const double lo = std::min(v(1.0), v(2.0));
  const double hi = std::max(v(1.0), v(2.0));
  const double mid = v(1.5);
  EXPECT_GT(mid, 0.5 * lo);
  EXPECT_LT(mid, 2.0 * hi);
}

TEST(FoxH, ContourOverride) {
  const auto s = spec(HKind::MeijerG, 1, 0, {}, {{0.0}}, 2.0);
  ContourSpec c;
  c.anchor = -0.05;
  c.height = 80.0;
  EXPECT_NEAR(eval_h(s, c).value, std::exp(-2.0), 1e-10);
}

TEST(ReduceKind, Chain) {
  auto s = spec(HKind::ExtHHat, 1, 0, {}, {{0.0, 2.0, 1.0}}, 1.0);
  EXPECT_EQ(reduce_kind(s).kind, HKind::FoxH);
  s.lower[0].scale = 1.0;
  EXPECT_EQ(reduce_kind(s).kind, HKind::MeijerG);
  s.lower[0].exponent = 0.6;
  EXPECT_EQ(reduce_kind(s).kind, HKind::ExtHHat);
}

TEST(Validate, Rejects) {
  EXPECT_THROW(validate(spec(HKind::MeijerG, 2, 0, {}, {{0.0}}, 1.0)), DomainError);
  EXPECT_THROW(validate(spec(HKind::MeijerG, 1, 1, {}, {{0.0}}, 1.0)), DomainError);
  EXPECT_THROW(validate(spec(HKind::MeijerG, 1, 0, {}, {{0.0, 2.0}}, 1.0)), DomainError);
  EXPECT_THROW(validate(spec(HKind::FoxH, 1, 0, {}, {{0.0, 1.0, 0.5}}, 1.0)), DomainError);
  // H-bar allows exponents only on numerator-upper and denominator-lower entries
  EXPECT_THROW(validate(spec(HKind::FoxHBar, 1, 0, {}, {{0.0, 1.0, 0.5}}, 1.0)), DomainError);
  EXPECT_NO_THROW(validate(spec(HKind::FoxHBar, 1, 1, {{0.2, 1.0, 0.5}}, {{0.0}, {0.1, 1.0, 0.3}},
                                1.0)));
  EXPECT_THROW(validate(spec(HKind::ExtHHat, 1, 0, {}, {{0.0, -1.0}}, 1.0)), DomainError);
}

TEST(HKindNames, RoundTrip) {
  for (auto k : {HKind::MeijerG, HKind::FoxH, HKind::FoxHBar, HKind::ExtHHat}) {
    EXPECT_EQ(parse_hkind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_hkind("x").has_value());
}
