#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gammasum/quadrature.hpp"

namespace quad = gammasum::quad;

TEST(Quadrature, SmoothIntegrand) {
  const auto r = quad::integrate<double>([](double x) { return std::exp(x); }, 0.0, 1.0, 0.0,
                                         1e-13);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
  EXPECT_LE(r.abs_error, 1e-12);
  EXPECT_EQ(r.n_evals % 21, 0u);
}

TEST(Quadrature, EndpointSingularity) {
  const auto r = quad::integrate<double>([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                                         1e-12, 1e-10);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(Quadrature, PiecesAreSummed) {
  const quad::Interval pieces[] = {{0.0, 1.0}, {1.0, 3.0}, {3.0, 3.5}};
  const auto r = quad::integrate<double>([](double x) { return x * x; }, pieces, 0.0, 1e-13);
  EXPECT_NEAR(r.value, 3.5 * 3.5 * 3.5 / 3.0, 1e-12);
}

TEST(Quadrature, ComplexIntegrand) {
  using C = std::complex<double>;
  const auto r = quad::integrate<C>([](double t) { return std::exp(C(0.0, t)); }, 0.0,
                                    std::numbers::pi, 0.0, 1e-13);
  EXPECT_NEAR(r.value.real(), 0.0, 1e-13);
  EXPECT_NEAR(r.value.imag(), 2.0, 1e-13);
}

TEST(Quadrature, SemiInfinite) {
  const auto r = quad::integrate_to_infinity<double>([](double x) { return std::exp(-x); }, 1.0,
                                                     0.0, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::exp(-1.0), 1e-12);
}

TEST(Quadrature, ReportsNonConvergence) {
  // highly oscillatory, with a tiny segment budget
  const auto r = quad::integrate<double>([](double x) { return std::sin(1e4 * x); }, 0.0, 1.0,
                                         1e-15, 1e-15, 4);
  EXPECT_FALSE(r.converged);
}
