#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "belltomo/quadrature.hpp"

using namespace belltomo;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int n = 1; n <= 24; ++n) {
    const QuadratureRule r = gauss_legendre(n);
    for (int deg = 0; deg < 2 * n; ++deg) {
      double sum = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i], deg);
      const double want = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(sum, want, 1e-13) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(GaussLegendre, NodesAscendingAndSymmetric) {
  const QuadratureRule r = gauss_legendre(9);
  for (std::size_t i = 1; i < r.nodes.size(); ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
  EXPECT_EQ(r.nodes[4], 0.0);
  EXPECT_EQ(r.nodes[0], -r.nodes[8]);
  EXPECT_THROW(gauss_legendre(0), InvalidInput);
}

TEST(Trapezoid, ExactForTrigPolynomials) {
  const QuadratureRule r = trapezoid_periodic(8);
  for (int k = 0; k < 8; ++k) {
    double c = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) c += r.weights[i] * std::cos(k * r.nodes[i]);
    EXPECT_NEAR(c, k == 0 ? 2 * std::numbers::pi : 0.0, 1e-13);
  }
}

TEST(Integrate, FiniteInterval) {
  const Estimate e = integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(e.value, std::exp(1.0) - 1.0, 1e-12);
  EXPECT_LE(e.error, 1e-12);
  EXPECT_GT(e.evaluations, 0u);
  const Estimate rev = integrate([](double x) { return std::exp(x); }, 1.0, 0.0, 1e-12);
  EXPECT_NEAR(rev.value, 1.0 - std::exp(1.0), 1e-12);
}

TEST(Integrate, GaussianOverRealLine) {
  const auto g = [](double x) { return std::exp(-x * x); };
  EXPECT_NEAR(integrate(g, -INFINITY, INFINITY, 1e-10).value, std::sqrt(std::numbers::pi), 1e-10);
  EXPECT_NEAR(integrate(g, 0.0, INFINITY, 1e-10).value, std::sqrt(std::numbers::pi) / 2, 1e-10);
  EXPECT_NEAR(integrate(g, -INFINITY, 1.0, 1e-10).value, std::sqrt(std::numbers::pi) / 2 * (1 + std::erf(1.0)), 1e-10);
}

TEST(Integrate, NestedEstimatesPropagateError) {
  // int_0^1 int_0^1 x y dy dx = 1/4
  auto outer = [](double x) { return integrate([x](double y) { return x * y; }, 0.0, 1.0, 1e-12); };
  const Estimate e = integrate(outer, 0.0, 1.0, 1e-11);
  EXPECT_NEAR(e.value, 0.25, 1e-12);
  EXPECT_LE(e.error, 1e-11);
}

TEST(Integrate, ThrowsWhenToleranceUnreachable) {
  const auto bad = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); };
  EXPECT_THROW(integrate(bad, 0.0, 1.0, 1e-14, 300), AccuracyError);
  try {
    integrate(bad, 0.0, 1.0, 1e-14, 300);
  } catch (const AccuracyError& e) {
    EXPECT_GT(e.residual(), 1e-14);
  }
  EXPECT_THROW(integrate([](double) { return 1.0; }, NAN, 1.0), InvalidInput);
}
