#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "belltomo/optical.hpp"

using namespace belltomo;

namespace {

const double kPi = std::numbers::pi;

// Quadrature wavefunctions of |0> and |1>.
double psi0(double x) { return std::pow(kPi, -0.25) * std::exp(-x * x / 2); }
double psi1(double x) { return std::sqrt(2.0) * x * psi0(x); }

// Independent oracle: |prod psi0 + e^{i sum theta} prod psi1|^2 / 2.
double tomogram_oracle(std::span<const double> x, std::span<const double> theta) {
  double p0 = 1, p1 = 1, phase = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    p0 *= psi0(x[k]);
    p1 *= psi1(x[k]);
    phase += theta[k];
  }
  return 0.5 * std::norm(p0 + std::polar(p1, phase));
}

// signed integral int sign(X - x) f(X) dX using exp-sinh on each half line
template <class F>
double signed_integral(F f, double x) {
  boost::math::quadrature::exp_sinh<double> es;
  const double up = es.integrate([&](double t) { return f(x + t); });
  const double down = es.integrate([&](double t) { return f(x - t); });
  return up - down;
}

}  // namespace

TEST(OpticalTomogram, MatchesWavefunctionOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ux(-3, 3), ut(-4, 4);
  for (int n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<double> x, t;
      for (int k = 0; k < n; ++k) {
        x.push_back(ux(rng));
        t.push_back(ut(rng));
      }
      const double want = tomogram_oracle(x, t);
      EXPECT_NEAR(optical_tomogram(GhzState(n), x, t), want, 1e-14 * std::max(1.0, want));
    }
}

TEST(OpticalTomogram, RejectsMismatchedSizes) {
  const std::vector<double> two(2, 0.0), three(3, 0.0);
  EXPECT_THROW(optical_tomogram(GhzState(2), two, three), InvalidInput);
  EXPECT_THROW(optical_tomogram(GhzState(3), two, two), InvalidInput);
}

TEST(OpticalMoments, MatchFrozenValues) {
  const OpticalMoments m = optical_ab(1.0);
  EXPECT_NEAR(m.a0, -0.42135039647485743467, 1e-15);
  EXPECT_NEAR(m.a1, -0.21379664776456008300, 1e-15);
  EXPECT_NEAR(m.b0, 0.14676266317373989989, 1e-15);
}

TEST(OpticalMoments, MatchQuadratureOracle) {
  for (double x : {-2.5, -1.0, -0.2, 0.0, 0.4, 1.3, 3.0}) {
    const OpticalMoments m = optical_ab(x);
    EXPECT_NEAR(2 * m.a0, signed_integral([](double X) { return psi0(X) * psi0(X); }, x), 1e-12) << x;
    EXPECT_NEAR(2 * m.a1, signed_integral([](double X) { return psi1(X) * psi1(X); }, x), 1e-12) << x;
    EXPECT_NEAR(2 * m.b0, signed_integral([](double X) { return psi0(X) * psi1(X); }, x), 1e-12) << x;
  }
}

TEST(OpticalMoments, InfiniteThresholds) {
  const OpticalMoments hi = optical_ab(INFINITY), lo = optical_ab(-INFINITY);
  EXPECT_EQ(hi.a0, -0.5);
  EXPECT_EQ(lo.a1, 0.5);
  EXPECT_EQ(hi.b0, 0.0);
  EXPECT_THROW(optical_ab(NAN), InvalidInput);
}

TEST(OpticalCorrelation, ClosedFormMatchesBranchRoute) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> ux(-2, 2), ut(-4, 4);
  for (int n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> t;
      for (int k = 0; k < n; ++k) t.push_back(ut(rng));
      const double x = ux(rng);
      const std::vector<double> xs(static_cast<std::size_t>(n), x);
      EXPECT_NEAR(optical_correlation(GhzState(n), t, x), optical_correlation(GhzState(n), t, xs), 1e-14);
    }
}

TEST(OpticalCorrelation, TomogramIntegrationMatchesClosedForm) {
  const std::vector<double> t2{0.4, -1.1}, x2{0.3, -0.7};
  const Estimate e2 = optical_correlation_from_tomogram(GhzState(2), t2, x2, 1e-9);
  EXPECT_NEAR(e2.value, optical_correlation(GhzState(2), t2, x2), 1e-8);
  EXPECT_LE(e2.error, 1e-9);

  const std::vector<double> t3{0.2, 0.9, -0.5}, x3(3, 0.25);
  const Estimate e3 = optical_correlation_from_tomogram(GhzState(3), t3, x3, 1e-7);
  EXPECT_NEAR(e3.value, optical_correlation(GhzState(3), t3, 0.25), 1e-7);
}

TEST(OpticalFn, FrozenValues) {
  EXPECT_NEAR(optical_fn(2, 0.0), 4.0 / kPi, 1e-14);
  EXPECT_NEAR(optical_fn(2, 0.0), 1.2732395447351626862, 1e-14);
  EXPECT_NEAR(optical_fn(2, -3.0), 1.9990763330474448077, 1e-13);
  EXPECT_NEAR(optical_fn(3, 0.0), 2.0317963498957110331, 1e-14);
  EXPECT_NEAR(optical_fn(3, -3.0), 1.9986147613363205686, 1e-13);
  EXPECT_THROW(optical_fn(1, 0.0), InvalidInput);
}

TEST(OpticalFn, EvenCaseIsSymmetric) {
  for (double x : {0.3, 1.1, 2.7}) EXPECT_NEAR(optical_fn(2, x), optical_fn(2, -x), 1e-14);
}
