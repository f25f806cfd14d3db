#ifndef BELLTOMO_OPTICAL_HPP
#define BELLTOMO_OPTICAL_HPP

// Homodyne (optical) tomography of the GHZ state built from vacuum and
// one-photon Fock states.

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "belltomo/error.hpp"
#include "belltomo/ghz.hpp"
#include "belltomo/quadrature.hpp"
#include "belltomo/specfun.hpp"

namespace belltomo {

/// Per-party optical phase theta in radians.
struct OpticalPhase {
  double theta = 0.0;
};

/// p(X, theta) for the GHZ state.
inline double optical_tomogram(const GhzState& state, std::span<const double> x,
                               std::span<const double> theta) {
  const int n = state.n();
  if (x.size() != static_cast<std::size_t>(n) || theta.size() != x.size())
    throw InvalidInput("optical_tomogram: one quadrature value and one phase per party required");
  double x2prod = 1.0, xprod = 1.0, xsq = 0.0, phase = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    x2prod *= x[k] * x[k];
    xprod *= x[k];
    xsq += x[k] * x[k];
    phase += theta[k];
  }
  const double bracket =
      1.0 + std::ldexp(x2prod, n) + std::pow(2.0, (n + 2) / 2.0) * xprod * std::cos(phase);
  return bracket * std::exp(-xsq) / (2.0 * std::pow(std::numbers::pi, n / 2.0));
}

struct OpticalMoments {
  double a0 = 0.0;
  double a1 = 0.0;
  double b0 = 0.0;
};

inline OpticalMoments optical_ab(double x) {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) throw InvalidInput("optical_ab: NaN threshold");
    const double half = x > 0 ? -0.5 : 0.5;
    return {half, half, 0.0};
  }
  const double e = erf(x);
  const double g = std::exp(-x * x);
  return {-0.5 * e, -0.5 * e + x * g / std::sqrt(std::numbers::pi), g / std::sqrt(2.0 * std::numbers::pi)};
}

/// 2^(n-1)(a0^n + a1^n) + 2^n b0^n cos(theta_1 + ... + theta_n), common threshold x.
inline double optical_correlation(const GhzState& state, std::span<const double> theta, double x) {
  const int n = state.n();
  if (theta.size() != static_cast<std::size_t>(n)) throw InvalidInput("optical_correlation: one phase per party required");
  const OpticalMoments m = optical_ab(x);
  double phase = 0.0;
  for (double t : theta) phase += t;
  return std::ldexp(std::pow(m.a0, n) + std::pow(m.a1, n), n - 1) +
         std::ldexp(std::pow(m.b0, n), n) * std::cos(phase);
}

/// Branch matrix of the threshold observable sign(X - x) after the phase shift.
inline BranchMatrix optical_branch_matrix(double theta, double x) {
  const OpticalMoments m = optical_ab(x);
  BranchMatrix o;
  o(0, 0) = 2.0 * m.a0;
  o(1, 1) = 2.0 * m.a1;
  o(0, 1) = 2.0 * m.b0 * std::complex<double>(std::cos(theta), std::sin(theta));
  o(1, 0) = std::conj(o(0, 1));
  return o;
}

/// Same as optical_correlation but with a threshold per party.
inline double optical_correlation(const GhzState& state, std::span<const double> theta,
                                  std::span<const double> thresholds) {
  if (theta.size() != static_cast<std::size_t>(state.n()) || thresholds.size() != theta.size())
    throw InvalidInput("optical_correlation: one phase and one threshold per party required");
  std::vector<BranchMatrix> ops;
  for (std::size_t k = 0; k < theta.size(); ++k) ops.push_back(optical_branch_matrix(theta[k], thresholds[k]));
  return ghz_expectation(ops);
}

/// Maximal value of the Mermin left-hand side at threshold x, in the
/// odd/even closed form.
inline double optical_fn(int n, double x) {
  if (n < 2) throw InvalidInput("optical_fn: n must be >= 2");
  const OpticalMoments m = optical_ab(x);
  const double a_term = std::ldexp(std::abs(std::pow(m.a0, n) + std::pow(m.a1, n)), n);
  const double b_exp = n % 2 == 1 ? n + (n + 1) / 2.0 : n + n / 2.0;
  return a_term + std::pow(2.0, b_exp) * std::abs(std::pow(m.b0, n));
}

/// Sum over orthants of the binned tomogram, integrated numerically:
/// E = sum_eps prod eps_k int p dX with Y_k = [x_k, inf) -> +1.
inline Estimate optical_correlation_from_tomogram(const GhzState& state, std::span<const double> theta,
                                                  std::span<const double> thresholds,
                                                  double tol = kDefaultAbsTol) {
  const int n = state.n();
  if (theta.size() != static_cast<std::size_t>(n) || thresholds.size() != theta.size())
    throw InvalidInput("optical_correlation_from_tomogram: one phase and one threshold per party required");
  std::vector<double> point(static_cast<std::size_t>(n));
  std::size_t leaf_evals = 0;
  const double inf = std::numeric_limits<double>::infinity();
  // Each half line gets half the level budget. Nested integrals get a
  // smaller share because their errors are integrated over the outer axis.
  std::function<Estimate(std::size_t, double)> level = [&](std::size_t k, double level_tol) -> Estimate {
    auto inner = [&, k, level_tol](double xk) -> Estimate {
      point[k] = xk;
      if (k + 1 == point.size()) {
        ++leaf_evals;
        return Estimate{optical_tomogram(state, point, theta), 0.0, 1};
      }
      return level(k + 1, level_tol / 16.0);
    };
    const Estimate up = integrate(inner, thresholds[k], inf, level_tol / 2);
    const Estimate down = integrate(inner, -inf, thresholds[k], level_tol / 2);
    return Estimate{up.value - down.value, up.error + down.error, up.evaluations + down.evaluations};
  };
  Estimate r = level(0, tol);
  r.evaluations = leaf_evals;
  return r;
}

}  // namespace belltomo

#endif  // BELLTOMO_OPTICAL_HPP
