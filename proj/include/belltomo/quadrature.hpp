#ifndef BELLTOMO_QUADRATURE_HPP
#define BELLTOMO_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "belltomo/error.hpp"

namespace belltomo {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// N-point Gauss-Legendre rule on [-1, 1] via the Golub-Welsch eigenproblem.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvalidInput("gauss_legendre: need at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = 2.0 * v0 * v0;
  }
  // symmetrize to kill eigen-solver round-off
  for (int i = 0; i < n / 2; ++i) {
    auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
    const double x = 0.5 * (rule.nodes[hi] - rule.nodes[lo]);
    const double w = 0.5 * (rule.weights[hi] + rule.weights[lo]);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

/// Uniform rule for a periodic integrand over [0, period).
inline QuadratureRule trapezoid_periodic(int n, double period = 2.0 * std::numbers::pi) {
  if (n < 1) throw InvalidInput("trapezoid_periodic: need at least one node");
  QuadratureRule rule;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(period * i / n);
    rule.weights.push_back(period / n);
  }
  return rule;
}

/// Value with an absolute error bound.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

inline constexpr double kDefaultAbsTol = 1e-8;
inline constexpr std::size_t kMaxEvaluationsPerAxis = std::size_t{1} << 15;

namespace detail {

template <class F>
Estimate evaluate_point(F& f, double x) {
  using R = std::invoke_result_t<F&, double>;
  if constexpr (std::is_same_v<R, Estimate>) {
    return f(x);
  } else {
    return Estimate{static_cast<double>(f(x)), 0.0, 1};
  }
}

struct Panel {
  double a, b;
  double value;
  double error;  // discretization error, drives subdivision
  double inner;  // propagated error of nested integrals
  bool operator<(const Panel& o) const { return error < o.error; }
};

// G7-K15 on [a, b]. The integrand may return a double or an Estimate (nested
// integrals); inner errors are integrated with the Kronrod weights.
template <class F>
Panel gk15(F& f, double a, double b, std::size_t& evals) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& kx = gauss_kronrod<double, 15>::abscissa();
  const auto& kw = gauss_kronrod<double, 15>::weights();
  const auto& gw = gauss<double, 7>::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const Estimate f0 = evaluate_point(f, mid);
  double k = kw[0] * f0.value;
  double g = gw[0] * f0.value;
  double inner = kw[0] * f0.error;
  for (std::size_t i = 1; i < kx.size(); ++i) {
    const Estimate lo = evaluate_point(f, mid - half * kx[i]);
    const Estimate hi = evaluate_point(f, mid + half * kx[i]);
    k += kw[i] * (lo.value + hi.value);
    inner += kw[i] * (lo.error + hi.error);
    if (i % 2 == 0) g += gw[i / 2] * (lo.value + hi.value);  // Gauss nodes sit at even Kronrod slots
  }
  evals += 15;
  k *= half;
  g *= half;
  inner *= std::abs(half);
  return Panel{a, b, k, std::abs(k - g), inner};
}

template <class F>
Estimate adaptive(F& f, double a, double b, double tol, std::size_t cap) {
  std::size_t evals = 0;
  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b, evals);
  double total_err = first.error;
  double total_inner = first.inner;
  heap.push(first);
  // Subdivision only reduces the discretization part; half the budget is
  // left for the nested part, which the caller controls.
  while (total_err > (total_inner > 0.0 ? 0.5 * tol : tol) && evals + 30 <= cap) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid, evals);
    Panel right = gk15(f, mid, worst.b, evals);
    total_err += left.error + right.error - worst.error;
    total_inner += left.inner + right.inner - worst.inner;
    heap.push(left);
    heap.push(right);
  }
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  Estimate out;
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error += p.error + p.inner;
  }
  out.evaluations = evals;
  return out;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b]; either end may be
/// infinite. Throws AccuracyError when `tol` is not reached within `cap`
/// evaluations.
template <class F>
Estimate integrate(F&& f, double a, double b, double tol = kDefaultAbsTol,
                   std::size_t cap = kMaxEvaluationsPerAxis) {
  if (std::isnan(a) || std::isnan(b)) throw InvalidInput("integrate: NaN bound");
  if (a == b) return {};
  if (a > b) {
    Estimate r = integrate(f, b, a, tol, cap);
    r.value = -r.value;
    return r;
  }
  Estimate r;
  const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    Estimate left = integrate(f, a, 0.0, tol / 2, cap / 2);
    Estimate right = integrate(f, 0.0, b, tol / 2, cap / 2);
    return {left.value + right.value, left.error + right.error, left.evaluations + right.evaluations};
  }
  if (hi_inf) {
    auto g = [&f, a](double t) {
      const double s = 1.0 / (1.0 - t);
      auto v = detail::evaluate_point(f, a + t * s);
      return Estimate{v.value * s * s, v.error * s * s, v.evaluations};
    };
    r = detail::adaptive(g, 0.0, 1.0, tol, cap);
  } else if (lo_inf) {
    auto g = [&f, b](double t) {
      const double s = 1.0 / (1.0 - t);
      auto v = detail::evaluate_point(f, b - t * s);
      return Estimate{v.value * s * s, v.error * s * s, v.evaluations};
    };
    r = detail::adaptive(g, 0.0, 1.0, tol, cap);
  } else {
    r = detail::adaptive(f, a, b, tol, cap);
  }
  if (!(r.error <= tol)) throw AccuracyError("integrate: tolerance not reached", r.error);
  return r;
}

}  // namespace belltomo

#endif  // BELLTOMO_QUADRATURE_HPP
