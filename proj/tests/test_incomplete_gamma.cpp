#include <gtest/gtest.h>

#include <cmath>

#include "gammasum/incomplete_gamma.hpp"

using namespace gammasum;

TEST(IncompleteGamma, ClosedForms) {
  for (double x : {0.0, 0.1, 1.0, 2.0, 7.5, 40.0}) {
    EXPECT_NEAR(regularized_gamma_p(1.0, x), -std::expm1(-x), 1e-14) << x;
    EXPECT_NEAR(regularized_gamma_q(2.0, x), std::exp(-x) * (1.0 + x), 1e-14) << x;
    EXPECT_NEAR(regularized_gamma_q(0.5, x), std::erfc(std::sqrt(x)), 1e-14) << x;
  }
}

TEST(IncompleteGamma, Complementary) {
  for (double a : {0.3, 1.7, 12.0, 80.0}) {
    for (double x : {0.05, 1.0, a, a + 1.0, 3.0 * a}) {
      EXPECT_NEAR(regularized_gamma_p(a, x) + regularized_gamma_q(a, x), 1.0, 1e-13);
    }
  }
}

TEST(IncompleteGamma, Domain) {
  EXPECT_THROW(regularized_gamma_p(0.0, 1.0), DomainError);
  EXPECT_THROW(regularized_gamma_q(1.0, -1.0), DomainError);
  EXPECT_EQ(regularized_gamma_p(3.0, 0.0), 0.0);
  EXPECT_EQ(regularized_gamma_q(3.0, 0.0), 1.0);
}
