#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gammasum/gamma_sum.hpp"
#include "gammasum/quadrature.hpp"
#include "oracles.hpp"

using namespace gammasum;

namespace {

EvalOptions general() {
  EvalOptions o;
  o.force_general = true;
  return o;
}

}  // namespace

TEST(BranchParams, Validation) {
  EXPECT_THROW(BranchParams({}), DomainError);
  EXPECT_THROW(BranchParams({{0.0, 1.0}}), DomainError);
  EXPECT_THROW(BranchParams({{1.0, -1.0}}), DomainError);
  const double m[] = {1.0, 2.0};
  const double w[] = {1.0};
  EXPECT_THROW(BranchParams(m, w), DomainError);
  const BranchParams p({{2, 1}, {3, 2}});
  EXPECT_TRUE(p.integer_m());
  EXPECT_DOUBLE_EQ(p.kappa(), 5.0);
  EXPECT_DOUBLE_EQ(p.mean(), 3.0);
  EXPECT_DOUBLE_EQ(p.variance(), 0.5 + 4.0 / 3.0);
  EXPECT_FALSE(BranchParams({{0.5, 1}}).integer_m());
}

TEST(Pdf, Examples) {
  EXPECT_NEAR(pdf(BranchParams({{1, 1}}), 1.0), 0.3678794412, 1e-10);
  EXPECT_NEAR(pdf(BranchParams({{1, 1}, {1, 2}}), 1.0), 0.2386512185, 1e-10);
  EXPECT_NEAR(pdf(BranchParams({{1, 1}, {1, 2}, {1, 3}}), 2.0), 0.1020344378, 1e-10);
}

TEST(Pdf, SingleBranchIsGammaDensity) {
  for (double m : {0.4, 0.55, 1.5, 4.5}) {
    const BranchParams p({{m, 2.0}});
    for (double y : {0.01, 0.5, 2.0, 9.0}) {
      const double want = oracle::gamma_pdf(y, m, 2.0);
      EXPECT_NEAR(pdf(p, y), want, 1e-9 * want + 1e-13) << m << " " << y;
    }
  }
}

TEST(Pdf, ReducedVsGammaFormOnHundredPoints) {
  const BranchParams p({{2, 1}, {3, 2}});
  for (int i = 0; i < 100; ++i) {
    const double y = 0.05 + 12.0 * i / 99.0;
    const double a = pdf_integer(p, y);
    const double b = pdf(p, y, general());
    EXPECT_NEAR(a, b, 1e-8 * b) << y;
  }
}

TEST(Pdf, IntegerExamples) {
  EXPECT_NEAR(pdf_integer(BranchParams({{1, 1}, {1, 2}}), 1.0), 0.2386512185, 1e-10);
  EXPECT_NEAR(pdf_integer(BranchParams({{2, 2}}), 1.0), 0.3678794412, 1e-10);
  EXPECT_THROW(pdf_integer(BranchParams({{1.5, 1}}), 1.0), DomainError);
}

TEST(Pdf, PermutationInvariant) {
  const BranchParams a({{0.6, 1}, {1.1, 2}, {2, 0.7}});
  const BranchParams b({{2, 0.7}, {0.6, 1}, {1.1, 2}});
  for (double y : {0.3, 2.0, 6.0}) EXPECT_NEAR(pdf(a, y), pdf(b, y), 1e-12);
}

TEST(Pdf, Scaling) {
  // Y scaled by c has density p(y / c) / c
  const BranchParams a({{0.6, 1}, {1.1, 2}, {2, 0.7}});
  const double c = 3.0;
  const BranchParams b({{0.6, c}, {1.1, 2 * c}, {2, 0.7 * c}});
  for (double y : {0.3, 2.0, 6.0}) EXPECT_NEAR(pdf(b, c * y), pdf(a, y) / c, 1e-11);
}

TEST(Pdf, SmallShapeSum) {
  // sum of m below 1: the density is unbounded at 0
  const BranchParams p({{0.3, 1}, {0.4, 2}});
  EXPECT_GT(pdf(p, 1e-6), pdf(p, 1e-3));
  EXPECT_NEAR(pdf(p, 1.0), pdf_lauricella_oracle(p, 1.0).value, 1e-9);
}

TEST(Pdf, Domain) {
  const BranchParams p({{1, 1}});
  EXPECT_THROW(pdf(p, 0.0), DomainError);
  EXPECT_THROW(pdf(p, -1.0), DomainError);
}

TEST(Pdf, Normalization) {
  const BranchParams p({{0.6, 1}, {1.1, 1}, {2, 1}, {3.4, 1}, {4.5, 1}});
  const double hi = p.mean() + 12.0 * std::sqrt(p.variance());
  const auto r =
      quad::integrate<double>([&](double y) { return y > 0.0 ? pdf(p, y) : 0.0; }, 0.0, hi, 1e-12,
                              1e-9);
  EXPECT_NEAR(r.value, 1.0, 1e-5);
}

TEST(Pdf, ReportsErrorEstimate) {
  const auto r = pdf_result(BranchParams({{0.6, 1}, {1.1, 2}}), 1.0);
  EXPECT_GT(r.n_evals, 0u);
  EXPECT_GT(r.est_abs_error, 0.0);
  EXPECT_LT(r.est_abs_error, 1e-9);
}

TEST(Pdf, ExplicitAnchor) {
  const BranchParams p({{0.6, 1}, {1.1, 2}});
  const Strip s = pdf_strip(p, 2.0);
  EvalOptions o;
  o.anchor = s.lo + 0.5 * s.width();
  EXPECT_NEAR(pdf(p, 2.0, o), pdf(p, 2.0), 1e-11);
  o.anchor = s.lo - 0.1;
  EXPECT_THROW(pdf(p, 2.0, o), InconsistentCoefficients);
}

TEST(Cdf, Examples) {
  EXPECT_NEAR(cdf(BranchParams({{1, 1}}), 1.0), 0.6321205588, 1e-10);
  EXPECT_EQ(cdf(BranchParams({{0.7, 3}}), 0.0), 0.0);
  EXPECT_NEAR(cdf(BranchParams({{1, 1}, {1, 1}}), 2.0), 0.5939941503, 1e-10);
  EXPECT_NEAR(cdf(BranchParams({{1, 1}, {1, 1}}), 2.0), oracle::erlang_cdf(2.0, 2, 1.0), 1e-10);
  EXPECT_EQ(cdf(BranchParams({{1, 1}}), INFINITY), 1.0);
  EXPECT_THROW(cdf(BranchParams({{1, 1}}), -1.0), DomainError);
}

TEST(Cdf, MatchesSingleBranch) {
  for (double m : {0.55, 1.0, 2.0, 3.7}) {
    for (double y : {0.1, 1.0, 3.0, 10.0}) {
      EXPECT_NEAR(cdf(BranchParams({{m, 2.0}}), y), cdf_single(m, 2.0, y), 1e-10);
    }
  }
  EXPECT_NEAR(cdf_single(1, 1, 1), 0.6321205588, 1e-10);
  EXPECT_NEAR(cdf_single(2, 2, 2), 0.5939941503, 1e-10);
  EXPECT_EQ(cdf_single(2, 2, 0), 0.0);
  EXPECT_NEAR(cdf_single_meijer(2, 2, 2), 0.5939941503, 1e-10);
  EXPECT_THROW(cdf_single_meijer(1.5, 2, 2), DomainError);
}

TEST(Cdf, IntegerVsGeneral) {
  const BranchParams p({{1, 0.7}, {2, 1.3}, {1, 2.1}});
  for (double y : {0.05, 0.5, 2.0, 5.0, 12.0}) {
    EXPECT_NEAR(cdf_integer(p, y), cdf(p, y, general()), 1e-10) << y;
  }
}

TEST(Cdf, Properties) {
  const BranchParams p({{0.6, 1}, {1.1, 1}, {2, 1}});
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double y = 0.25 * i;
    const double f = cdf(p, y);
    EXPECT_GE(f, prev) << y;
    EXPECT_LE(f, 1.0);
    const double h = 1e-3;
    const double d = (cdf(p, y + h) - cdf(p, y - h)) / (2 * h);
    EXPECT_NEAR(d, pdf(p, y), 1e-3 * pdf(p, y) + 1e-9) << y;
    prev = f;
  }
  EXPECT_GT(prev, 1.0 - 1e-4);
}

TEST(Cdf, ComplementSideConsistent) {
  // forcing the anchor on either side of s = 0 gives the same F
  const BranchParams p({{0.6, 1}, {1.1, 2}});
  for (double y : {0.5, 3.0}) {
    EvalOptions left;
    left.anchor = -0.5 * p.min_rate();
    EvalOptions right;
    right.anchor = 0.5 * cdf_strip_right(y).width();
    EXPECT_NEAR(cdf(p, y, left), cdf(p, y, right), 1e-10) << y;
  }
}

TEST(Lauricella, MatchesPdf) {
  // y^{1/2} (3/4)^{3/2} e^{-3/4} / Gamma(3/2)
  const double direct =
      std::pow(0.75, 1.5) * std::exp(-0.75) / std::tgamma(1.5);
  const auto one = pdf_lauricella_oracle(BranchParams({{1.5, 2}}), 1.0);
  EXPECT_NEAR(one.value, direct, 1e-12);
  EXPECT_NEAR(one.value, 0.3461992263, 1e-10);
  const BranchParams two({{0.6, 1}, {1.1, 1}});
  EXPECT_NEAR(pdf_lauricella_oracle(two, 2.0).value, pdf(two, 2.0), 1e-6);
  const BranchParams three({{0.6, 1}, {1.1, 2}, {2, 0.5}});
  for (double y : {0.2, 1.0, 4.0}) {
    const auto o = pdf_lauricella_oracle(three, y);
    EXPECT_NEAR(o.value, pdf(three, y), 1e-9) << y;
    EXPECT_GE(o.truncation_bound, 0.0);
  }
}

TEST(Lauricella, VanishesAtOrigin) {
  const BranchParams p({{1.5, 1}, {1.1, 2}});
  EXPECT_LT(pdf_lauricella_oracle(p, 1e-8).value, 1e-10);
}

TEST(Lauricella, Limits) {
  EXPECT_THROW(pdf_lauricella_oracle(BranchParams({{1, 1}, {1, 1}, {1, 1}, {1, 1}}), 1.0),
               DomainError);
}

TEST(HFamilySpecs, ValidForTheirKinds) {
  const BranchParams p({{0.6, 1}, {2, 2}});
  EXPECT_NO_THROW(to_terms(pdf_hbar_spec(p, 1.0)));
  EXPECT_NO_THROW(to_terms(cdf_hbar_spec(p, 1.0)));
  const BranchParams q({{1, 1}, {2, 2}});
  EXPECT_EQ(pdf_meijer_spec(q, 1.0).kind, HKind::MeijerG);
  EXPECT_EQ(pdf_meijer_spec(q, 1.0).q(), 3);
  EXPECT_THROW(pdf_meijer_spec(p, 1.0), DomainError);
}
