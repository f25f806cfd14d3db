#ifndef BELLTOMO_OPTIMIZE_HPP
#define BELLTOMO_OPTIMIZE_HPP

// Deterministic maximization: coarse grid (or seeded random sampling in high
// dimension) followed by Nelder-Mead refinement from the top-K points.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "belltomo/error.hpp"
#include "belltomo/inequalities.hpp"
#include "belltomo/multiindex.hpp"
#include "belltomo/optical.hpp"
#include "belltomo/parallel.hpp"
#include "belltomo/schemes.hpp"

namespace belltomo {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ParameterBox {
  double lo = 0.0;
  double hi = kTwoPi;
  bool periodic = true;
};

struct SearchSpace {
  std::vector<ParameterBox> boxes;
  /// Points per axis of the coarse grid; 0 picks the largest g with g^d <= max_coarse_points.
  int grid = 0;
  /// Coarse budget; when even 3 points per axis exceed it the coarse phase
  /// draws this many seeded random points instead.
  std::size_t max_coarse_points = 20000;
  /// Always sample max_coarse_points random points, whatever the grid would be.
  bool random_coarse = false;
  std::size_t top_k = 8;
  int max_iterations = 500;
  int restarts = 4;
  std::uint64_t seed = 1;

  void validate() const {
    if (boxes.empty()) throw InvalidInput("SearchSpace: no parameters");
    for (const auto& b : boxes)
      if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.hi > b.lo))
        throw InvalidInput("SearchSpace: each box must be finite and nonempty");
    if (grid < 0 || grid == 1) throw InvalidInput("SearchSpace: grid must be 0 (auto) or >= 2");
    if (max_coarse_points < 1 || top_k < 1 || max_iterations < 1 || restarts < 0)
      throw InvalidInput("SearchSpace: budgets must be positive");
  }
};

struct SearchResult {
  std::vector<double> best;
  double value = 0.0;
  std::size_t evaluations = 0;
  std::size_t failed = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

namespace detail {

inline double reduce_angle(double x, const ParameterBox& b) {
  if (!b.periodic) return x;
  const double period = b.hi - b.lo;
  double r = std::fmod(x - b.lo, period);
  if (r < 0) r += period;
  if (r >= period) r = 0.0;
  return b.lo + r;
}

inline void project(std::vector<double>& x, std::span<const ParameterBox> boxes) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!boxes[i].periodic) x[i] = std::clamp(x[i], boxes[i].lo, boxes[i].hi);
}

struct Evaluator {
  const Objective& f;
  std::size_t evaluations = 0;
  std::size_t failed = 0;

  double operator()(std::span<const double> x) {
    ++evaluations;
    try {
      const double v = f(x);
      if (std::isfinite(v)) return v;
    } catch (const Error&) {
    }
    ++failed;
    return -std::numeric_limits<double>::infinity();
  }
};

struct LocalResult {
  std::vector<double> x;
  double value = -std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Nelder-Mead maximization with coefficients 1 / 2 / 0.5 and shrink 0.5.
inline LocalResult nelder_mead(Evaluator& eval, std::vector<double> start, std::span<const double> step,
                               std::span<const ParameterBox> boxes, int max_iterations) {
  const std::size_t d = start.size();
  std::vector<std::vector<double>> pts(d + 1, start);
  std::vector<double> val(d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    pts[i + 1][i] += step[i];
    if (!boxes[i].periodic && pts[i + 1][i] > boxes[i].hi) pts[i + 1][i] = start[i] - step[i];
    project(pts[i + 1], boxes);
  }
  for (std::size_t i = 0; i <= d; ++i) val[i] = eval(pts[i]);

  std::vector<std::size_t> order(d + 1);
  bool converged = false;
  for (int it = 0; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[d - 1];

    double size = 0.0;
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t k = 0; k < d; ++k) size = std::max(size, std::abs(pts[i][k] - pts[best][k]));
    if (std::isfinite(val[worst]) && val[best] - val[worst] <= 1e-15 * (1.0 + std::abs(val[best])) && size < 1e-9) {
      converged = true;
      break;
    }

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < d; ++k) centroid[k] += pts[i][k] / static_cast<double>(d);
    auto along = [&](double t) {
      std::vector<double> p(d);
      for (std::size_t k = 0; k < d; ++k) p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      project(p, boxes);
      return p;
    };

    std::vector<double> refl = along(-1.0);
    const double fr = eval(refl);
    if (fr > val[best]) {
      std::vector<double> exp = along(-2.0);
      const double fe = eval(exp);
      if (fe > fr) {
        pts[worst] = std::move(exp);
        val[worst] = fe;
      } else {
        pts[worst] = std::move(refl);
        val[worst] = fr;
      }
      continue;
    }
    if (fr > val[second]) {
      pts[worst] = std::move(refl);
      val[worst] = fr;
      continue;
    }
    const bool outside = fr > val[worst];
    std::vector<double> con = along(outside ? -0.5 : 0.5);
    const double fc = eval(con);
    if (fc > std::max(fr, val[worst]) || (outside && fc >= fr)) {
      pts[worst] = std::move(con);
      val[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < d; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      project(pts[i], boxes);
      val[i] = eval(pts[i]);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= d; ++i)
    if (val[i] > val[best]) best = i;
  return LocalResult{pts[best], val[best], converged};
}

}  // namespace detail

/// Maximizes `objective` over `space`. Deterministic for a fixed space.
inline SearchResult maximize(const Objective& objective, const SearchSpace& space) {
  space.validate();
  const std::size_t d = space.boxes.size();
  const std::span<const ParameterBox> boxes(space.boxes);

  // Coarse phase.
  std::size_t g = static_cast<std::size_t>(space.grid);
  bool random = space.random_coarse;
  if (random) {
    g = 0;
  } else if (g == 0) {
    g = 1;
    while (std::pow(static_cast<double>(g + 1), static_cast<double>(d)) <= static_cast<double>(space.max_coarse_points))
      ++g;
    if (g < 3) random = true;
  } else if (std::pow(static_cast<double>(g), static_cast<double>(d)) > 1e8) {
    throw CapacityError("maximize: coarse grid has more than 1e8 points");
  }
  std::size_t count = 1;
  if (random) {
    count = space.max_coarse_points;
  } else {
    for (std::size_t i = 0; i < d; ++i) count *= g;
  }

  std::vector<std::vector<double>> points(count, std::vector<double>(d));
  if (random) {
    std::mt19937_64 rng(space.seed);
    for (auto& p : points)
      for (std::size_t i = 0; i < d; ++i) {
        std::uniform_real_distribution<double> u(boxes[i].lo, boxes[i].hi);
        p[i] = u(rng);
      }
  } else {
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rest = idx;
      for (std::size_t i = d; i-- > 0;) {
        const std::size_t cell = rest % g;
        rest /= g;
        points[idx][i] = boxes[i].lo + (static_cast<double>(cell) + 0.5) * (boxes[i].hi - boxes[i].lo) / static_cast<double>(g);
      }
    }
  }

  std::vector<double> coarse(count);
  std::vector<unsigned char> coarse_failed(count, 0);
  parallel_for(count, [&](std::size_t i) {
    try {
      const double v = objective(points[i]);
      if (std::isfinite(v)) {
        coarse[i] = v;
        return;
      }
    } catch (const Error&) {
    }
    coarse[i] = -std::numeric_limits<double>::infinity();
    coarse_failed[i] = 1;
  });
  SearchResult result;
  result.evaluations = count;
  result.failed = static_cast<std::size_t>(std::count(coarse_failed.begin(), coarse_failed.end(), 1));
  if (result.failed == count) throw SearchError("maximize: every coarse evaluation failed");

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t k = std::min(space.top_k, count - result.failed);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) { return coarse[a] > coarse[b] || (coarse[a] == coarse[b] && a < b); });

  // Refinement phase: one Nelder-Mead run per start, then restarts around the best.
  std::vector<double> step(d);
  for (std::size_t i = 0; i < d; ++i)
    step[i] = (boxes[i].hi - boxes[i].lo) / (random ? 10.0 : 2.0 * static_cast<double>(g));

  std::vector<detail::LocalResult> local(k);
  std::vector<std::size_t> local_evals(k), local_failed(k);
  parallel_for(k, [&](std::size_t s) {
    detail::Evaluator eval{objective};
    detail::LocalResult r = detail::nelder_mead(eval, points[order[s]], step, boxes, space.max_iterations);
    std::vector<double> st(step);
    for (int rs = 0; rs < space.restarts; ++rs) {
      for (double& v : st) v *= 0.5;
      detail::LocalResult next = detail::nelder_mead(eval, r.x, st, boxes, space.max_iterations);
      if (next.value >= r.value) {
        const bool stalled = next.value - r.value <= 1e-15 * (1.0 + std::abs(r.value));
        r = std::move(next);
        if (stalled && r.converged) break;
      }
    }
    local[s] = std::move(r);
    local_evals[s] = eval.evaluations;
    local_failed[s] = eval.failed;
  });

  std::size_t best = 0;
  for (std::size_t s = 0; s < k; ++s) {
    result.evaluations += local_evals[s];
    result.failed += local_failed[s];
    if (local[s].value > local[best].value) best = s;
  }
  if (!std::isfinite(local[best].value)) throw SearchError("maximize: refinement found no finite value");

  result.best = local[best].x;
  for (std::size_t i = 0; i < d; ++i) result.best[i] = detail::reduce_angle(result.best[i], boxes[i]);
  result.converged = local[best].converged;

  // Soundness: the reported value is recomputed at the reported point.
  const double recheck = objective(result.best);
  ++result.evaluations;
  if (!(std::abs(recheck - local[best].value) <= 1e-12 * std::max(1.0, std::abs(recheck))))
    throw ConsistencyError("maximize: best value does not reproduce at the reported parameters");
  result.value = recheck;
  return result;
}

// ---------------------------------------------------------------------------
// Bell expressions over tomographic settings
// ---------------------------------------------------------------------------

/// Two settings per party: settings[k][j - 1].
using SettingPairs = std::vector<std::array<PartySetting, 2>>;

inline std::size_t params_per_setting(Scheme s) { return s == Scheme::optical ? 1 : 2; }

/// Parameter layout: party-major, then setting, then (phi, psi) for spin,
/// theta for optical, (re, im) for photon number.
inline SettingPairs settings_from_params(Scheme scheme, int n, std::span<const double> p) {
  const std::size_t per = params_per_setting(scheme);
  if (p.size() != static_cast<std::size_t>(2 * n) * per) throw InvalidInput("settings_from_params: wrong parameter count");
  SettingPairs out(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t j = 0; j < 2; ++j) {
      const double* q = p.data() + (2 * k + j) * per;
      switch (scheme) {
        case Scheme::spin: out[k][j] = EulerAngles{q[0], q[1], 0.0}; break;
        case Scheme::optical: out[k][j] = OpticalPhase{q[0]}; break;
        case Scheme::photon_number: out[k][j] = Displacement{q[0], q[1]}; break;
      }
    }
  return out;
}

/// Correlation vector e_j = E(settings_{1, j_1}, ..., settings_{n, j_n}).
inline std::vector<double> correlation_vector(const SchemeConfig& config, const GhzState& state,
                                              const SettingPairs& settings) {
  const int n = state.n();
  if (settings.size() != static_cast<std::size_t>(n)) throw InvalidInput("correlation_vector: one setting pair per party required");
  const std::size_t len = std::size_t{1} << n;
  std::vector<double> e(len);
  std::vector<PartySetting> chosen(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < len; ++j) {
    for (int k = 0; k < n; ++k) chosen[static_cast<std::size_t>(k)] = settings[static_cast<std::size_t>(k)][(j >> (n - 1 - k)) & 1u];
    e[j] = correlation(config, state, chosen);
  }
  return e;
}

/// sum_j a_j E_j at the given settings (signed).
inline double bell_value(const SchemeConfig& config, const BellExpression& expr, const SettingPairs& settings) {
  const GhzState state(expr.n);
  return expr.evaluate(correlation_vector(config, state, settings));
}

inline SearchSpace default_search_space(Scheme scheme, int n, double box = 2.0) {
  SearchSpace s;
  const std::size_t count = static_cast<std::size_t>(2 * n) * params_per_setting(scheme);
  if (scheme == Scheme::photon_number) {
    if (!(box > 0.0)) throw InvalidInput("default_search_space: box must be positive");
    s.boxes.assign(count, ParameterBox{-box, box, false});
  } else {
    s.boxes.assign(count, ParameterBox{0.0, kTwoPi, true});
  }
  return s;
}

/// Maximizes |sum_j a_j E_j| over the settings.
inline SearchResult maximize_bell(const SchemeConfig& config, int n, const BellExpression& expr,
                                  const SearchSpace& space) {
  config.validate();
  if (expr.n != n) throw InvalidInput("maximize_bell: inequality dimension does not match n");
  const std::size_t expected = static_cast<std::size_t>(2 * n) * params_per_setting(config.scheme);
  if (space.boxes.size() != expected) throw InvalidInput("maximize_bell: search space has the wrong dimension");
  const GhzState state(n);
  const Objective f = [&](std::span<const double> p) {
    const SettingPairs s = settings_from_params(config.scheme, n, p);
    return std::abs(expr.evaluate(correlation_vector(config, state, s)));
  };
  return maximize(f, space);
}

// ---------------------------------------------------------------------------
// Cosine lemma and f_n scans
// ---------------------------------------------------------------------------

/// (1/2^n) |sum_j a_j cos(theta_1^(j_1) + ... + theta_n^(j_n))|, theta in party-major order.
inline double cosine_sum(std::span<const double> a, int n, std::span<const double> theta) {
  const std::size_t len = std::size_t{1} << n;
  if (a.size() != len || theta.size() != static_cast<std::size_t>(2 * n)) throw InvalidInput("cosine_sum: size mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < len; ++j) {
    if (a[j] == 0.0) continue;
    double phase = 0.0;
    for (int k = 0; k < n; ++k) phase += theta[static_cast<std::size_t>(2 * k) + ((j >> (n - 1 - k)) & 1u)];
    s += a[j] * std::cos(phase);
  }
  return std::abs(s) / static_cast<double>(len);
}

/// Maximizes cosine_sum over all 2n angles. `a` uses the Hadamard-form scale (bound 2^n).
inline SearchResult verify_appendix_lemma(int n, std::span<const double> a, const SearchSpace* space = nullptr) {
  if (n < 1) throw InvalidInput("verify_appendix_lemma: n must be >= 1");
  SearchSpace s;
  if (space) {
    s = *space;
  } else {
    s.boxes.assign(static_cast<std::size_t>(2 * n), ParameterBox{0.0, kTwoPi, true});
    s.restarts = 6;
  }
  std::vector<double> coeff(a.begin(), a.end());
  const Objective f = [coeff, n](std::span<const double> t) { return cosine_sum(coeff, n, t); };
  return maximize(f, s);
}

inline SearchResult verify_appendix_lemma(int n) {
  const BellExpression m = mermin_inequality(n);
  std::vector<double> a(m.coefficients);
  for (double& v : a) v *= m.scale;
  return verify_appendix_lemma(n, a);
}

struct FnScan {
  std::vector<std::array<double, 2>> rows;
  double max = -std::numeric_limits<double>::infinity();
  double argmax = 0.0;
};

inline FnScan scan_fn(int n, double xmin, double xmax, int steps) {
  if (steps < 2) throw InvalidInput("scan_fn: steps must be >= 2");
  if (!(xmin < xmax)) throw InvalidInput("scan_fn: xmin must be below xmax");
  FnScan out;
  out.rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double x = i == steps - 1 ? xmax : xmin + (xmax - xmin) * i / (steps - 1);
    const double f = optical_fn(n, x);
    out.rows.push_back({x, f});
    if (f > out.max) {
      out.max = f;
      out.argmax = x;
    }
  }
  return out;
}

}  // namespace belltomo

#endif  // BELLTOMO_OPTIMIZE_HPP
