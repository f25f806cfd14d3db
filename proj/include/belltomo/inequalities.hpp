#ifndef BELLTOMO_INEQUALITIES_HPP
#define BELLTOMO_INEQUALITIES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "belltomo/error.hpp"
#include "belltomo/multiindex.hpp"

namespace belltomo {

/// Largest n for which every inequality is enumerated (2^16 at n = 4).
inline constexpr int kMaxEnumeratedParties = 4;
/// Largest n for classical vertex enumeration.
inline constexpr int kMaxVertexParties = 5;
inline constexpr double kMembershipTolerance = 1e-12;

/// The 2^n correlation functions E(j_1, ..., j_n) in setting order.
class CorrelationVector {
 public:
  CorrelationVector(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 1) throw InvalidInput("CorrelationVector: n must be >= 1");
    if (n > kMaxIndexDigits) throw CapacityError("CorrelationVector: n too large");
    if (entries_.size() != (std::size_t{1} << n))
      throw InvalidInput("CorrelationVector: expected 2^n entries");
    for (double v : entries_)
      if (!std::isfinite(v) || std::abs(v) > 1.0 + kMembershipTolerance)
        throw InvalidInput("CorrelationVector: entry outside [-1, 1]");
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  int n_;
  std::vector<double> entries_;
};

/// (e, H c) <= 2^n with a = H c stored in setting order.
struct BellInequality {
  int n = 0;
  std::vector<int> c;
  std::vector<std::int64_t> a;
  std::int64_t bound = 0;
  bool trivial = false;
  /// Enumeration index k: c_i = -1 iff bit (2^n - 1 - i) of k is set.
  std::uint64_t index = 0;
};

/// A linear functional sum a_j E_j with a stated bound; `scale` times
/// the coefficients gives the Hadamard-form inequality with bound 2^n.
struct BellExpression {
  int n = 0;
  std::vector<double> coefficients;
  double bound = 0.0;
  double scale = 1.0;
  std::string label;

  double evaluate(std::span<const double> e) const {
    if (e.size() != coefficients.size()) throw InvalidInput("BellExpression: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) s += coefficients[i] * e[i];
    return s;
  }

  double abs_sum() const {
    double s = 0.0;
    for (double v : coefficients) s += std::abs(v);
    return s;
  }
};

namespace detail {

inline std::size_t setting_count(int n) { return std::size_t{1} << n; }

inline bool has_bit(std::size_t value, int bit) { return (value >> bit) & 1u; }

}  // namespace detail

/// c for enumeration index k.
inline std::vector<int> sign_vector(std::uint64_t k, int n) {
  if (n < 1) throw InvalidInput("sign_vector: n must be >= 1");
  if (n > 5) throw CapacityError("sign_vector: 2^n exceeds 64-bit index");
  const std::size_t len = detail::setting_count(n);
  if (len < 64 && k >= (std::uint64_t{1} << len)) throw InvalidInput("sign_vector: index out of range");
  std::vector<int> c(len);
  for (std::size_t i = 0; i < len; ++i) c[i] = ((k >> (len - 1 - i)) & 1u) ? -1 : 1;
  return c;
}

/// a_j = sum_eps c(eps) eps_1^{j_1 - 1} ... eps_n^{j_n - 1}; c is indexed with
/// eps_k = -1 as bit 1, first party most significant, so that a = H c.
inline BellInequality inequality_from_c(std::span<const int> c, int n) {
  if (n < 1) throw InvalidInput("inequality_from_c: n must be >= 1");
  if (n > kMaxMatrixParties) throw CapacityError("inequality_from_c: n too large");
  const std::size_t len = detail::setting_count(n);
  if (c.size() != len) throw InvalidInput("inequality_from_c: c must have 2^n entries");
  for (int v : c)
    if (v != 1 && v != -1) throw InvalidInput("inequality_from_c: entries of c must be +-1");

  BellInequality out;
  out.n = n;
  out.c.assign(c.begin(), c.end());
  out.a.assign(len, 0);
  out.bound = static_cast<std::int64_t>(len);
  for (std::size_t j = 0; j < len; ++j) {
    // setting digit j_k - 1 is bit (n - 1 - k) of j
    std::int64_t sum = 0;
    for (std::size_t eps = 0; eps < len; ++eps) {
      int prod = c[eps];
      for (int k = 0; k < n; ++k) {
        const int bit = n - 1 - k;
        if (detail::has_bit(j, bit) && detail::has_bit(eps, bit)) prod = -prod;
      }
      sum += prod;
    }
    out.a[j] = sum;
  }

  const IntMatrix h = hadamard(n);
  for (std::size_t r = 0; r < len; ++r) {
    std::int64_t hc = 0;
    for (std::size_t k = 0; k < len; ++k) hc += h(r, k) * c[k];
    if (hc != out.a[r]) throw ConsistencyError("inequality_from_c: coefficients differ from H c");
  }

  out.trivial = std::count_if(out.a.begin(), out.a.end(), [](std::int64_t v) { return v != 0; }) == 1;
  if (len <= 64) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < len; ++i)
      if (c[i] == -1) k |= std::uint64_t{1} << (len - 1 - i);
    out.index = k;
  }
  return out;
}

inline BellInequality inequality_from_index(std::uint64_t k, int n) {
  const std::vector<int> c = sign_vector(k, n);
  return inequality_from_c(c, n);
}

/// All 2^(2^n) inequalities in enumeration order.
inline std::vector<BellInequality> all_inequalities(int n) {
  if (n < 1) throw InvalidInput("all_inequalities: n must be >= 1");
  if (n > kMaxEnumeratedParties) throw CapacityError("all_inequalities: n > 4 is not supported");
  const std::uint64_t count = std::uint64_t{1} << detail::setting_count(n);
  std::vector<BellInequality> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(inequality_from_index(k, n));
  return out;
}

/// (e, H c) - 2^n; positive means violation.
inline double margin(const CorrelationVector& e, const BellInequality& ineq) {
  if (e.n() != ineq.n || e.size() != ineq.a.size()) throw InvalidInput("margin: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) s += static_cast<double>(ineq.a[i]) * e[i];
  return s - static_cast<double>(ineq.bound);
}

struct Membership {
  bool member = false;
  BellInequality worst;
  double margin = 0.0;
};

/// Tests e against every inequality. Since (e, H c) = (H e, c), the largest
/// margin is sum |(H e)_i| - 2^n, attained at c_i = sign((H e)_i); exact zeros
/// pick +1, giving the smallest enumeration index among ties.
inline Membership is_member(const CorrelationVector& e, double tol = kMembershipTolerance) {
  const int n = e.n();
  if (n > kMaxMatrixParties) throw CapacityError("is_member: n too large");
  const std::size_t len = e.size();
  const IntMatrix h = hadamard(n);
  std::vector<int> c(len);
  for (std::size_t i = 0; i < len; ++i) {
    double he = 0.0;
    for (std::size_t k = 0; k < len; ++k) he += h(i, k) * e[k];
    c[i] = he < 0.0 ? -1 : 1;
  }
  Membership out;
  out.worst = inequality_from_c(c, n);
  out.margin = margin(e, out.worst);
  out.member = out.margin <= tol;
  return out;
}

// ---------------------------------------------------------------------------
// Mermin family
// ---------------------------------------------------------------------------

namespace detail {

// Im prod_k (z1 if j_k = 1 else z2) for z1, z2 in {1, i}.
inline int im_product(std::span<const int> digits, bool swapped) {
  std::complex<int> prod{1, 0};
  for (int d : digits) {
    const bool imaginary = swapped ? (d == 1) : (d == 2);
    prod *= imaginary ? std::complex<int>{0, 1} : std::complex<int>{1, 0};
  }
  return prod.imag();
}

}  // namespace detail

/// Unscaled Mermin expression: odd n uses Im prod (A_k(1) + i A_k(2)) with
/// bound 2^((n-1)/2); even n combines the (n-1)-party polynomial and its
/// swapped partner with the last party's A(1) +- A(2), bound 2^(n/2).
inline BellExpression mermin_inequality(int n) {
  if (n < 2) throw InvalidInput("mermin_inequality: n must be >= 2");
  if (n > kMaxIndexDigits) throw CapacityError("mermin_inequality: n too large");
  const std::size_t len = detail::setting_count(n);
  BellExpression out;
  out.n = n;
  out.coefficients.resize(len);
  out.label = "mermin";
  for (std::size_t j = 0; j < len; ++j) {
    const std::vector<int> digits = decode_setting(j + 1, n);
    if (n % 2 == 1) {
      out.coefficients[j] = detail::im_product(digits, false);
    } else {
      const std::span<const int> head(digits.data(), digits.size() - 1);
      const int plain = detail::im_product(head, false);
      const int swapped = detail::im_product(head, true);
      out.coefficients[j] = digits.back() == 1 ? swapped + plain : swapped - plain;
    }
  }
  if (n % 2 == 1) {
    out.bound = std::ldexp(1.0, (n - 1) / 2);
    out.scale = std::ldexp(1.0, (n + 1) / 2);
  } else {
    out.bound = std::ldexp(1.0, n / 2);
    out.scale = std::ldexp(1.0, n / 2);
  }
  return out;
}

/// c with a = H c, or nullopt when H a / 2^n is not a +-1 vector.
inline std::optional<std::vector<int>> recover_c(std::span<const double> a, int n) {
  if (n < 1 || n > kMaxMatrixParties) return std::nullopt;
  const std::size_t len = detail::setting_count(n);
  if (a.size() != len) return std::nullopt;
  const IntMatrix h = hadamard(n);
  std::vector<int> c(len);
  for (std::size_t i = 0; i < len; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += h(i, k) * a[k];
    s /= static_cast<double>(len);
    if (std::abs(s - 1.0) < 1e-9)
      c[i] = 1;
    else if (std::abs(s + 1.0) < 1e-9)
      c[i] = -1;
    else
      return std::nullopt;
  }
  return c;
}

inline std::optional<std::vector<int>> recover_c(std::span<const std::int64_t> a, int n) {
  std::vector<double> d(a.begin(), a.end());
  return recover_c(std::span<const double>(d), n);
}

/// The Mermin expression scaled to Hadamard form.
inline BellInequality mermin_bell_inequality(int n) {
  const BellExpression m = mermin_inequality(n);
  std::vector<double> scaled(m.coefficients);
  for (double& v : scaled) v *= m.scale;
  const auto c = recover_c(scaled, n);
  if (!c) throw ConsistencyError("mermin_bell_inequality: scaled coefficients are not of the form H c");
  return inequality_from_c(*c, n);
}

inline BellExpression to_expression(const BellInequality& ineq, std::string label = "inequality") {
  BellExpression out;
  out.n = ineq.n;
  out.coefficients.assign(ineq.a.begin(), ineq.a.end());
  out.bound = static_cast<double>(ineq.bound);
  out.scale = 1.0;
  out.label = std::move(label);
  return out;
}

// ---------------------------------------------------------------------------
// Classical strategies
// ---------------------------------------------------------------------------

/// Deterministic local strategy: assignment[2k + j - 1] is party k's
/// outcome for setting j.
struct StrategyVertex {
  std::vector<int> assignment;
  std::vector<int> e;
};

inline std::vector<StrategyVertex> strategy_vertices(int n) {
  if (n < 1) throw InvalidInput("strategy_vertices: n must be >= 1");
  if (n > kMaxVertexParties) throw CapacityError("strategy_vertices: n > 5 is not supported");
  const std::size_t count = std::size_t{1} << (2 * n);
  std::vector<StrategyVertex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    StrategyVertex v;
    v.assignment = decode_outcome(i + 1, n);
    v.e = kronecker_pairs<int>(v.assignment);
    out.push_back(std::move(v));
  }
  return out;
}

/// Distinct correlation vectors of deterministic strategies, sorted.
inline std::vector<std::vector<int>> classical_vertices(int n) {
  std::set<std::vector<int>> distinct;
  for (const StrategyVertex& v : strategy_vertices(n)) distinct.insert(v.e);
  return {distinct.begin(), distinct.end()};
}

/// Per-party single-tomogram differences q(1), q(2).
struct LocalResponse {
  double q1 = 0.0;
  double q2 = 0.0;
};

/// e = sum_i w_i (q_1^(i)(1), q_1^(i)(2)) (x) ... (x) (q_n^(i)(1), q_n^(i)(2)).
inline CorrelationVector separable_e(std::span<const double> weights,
                                     std::span<const std::vector<LocalResponse>> terms) {
  if (weights.empty() || weights.size() != terms.size())
    throw InvalidInput("separable_e: one weight per term required");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidInput("separable_e: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("separable_e: weights must sum to 1");
  const std::size_t n = terms.front().size();
  if (n < 1) throw InvalidInput("separable_e: at least one party required");
  std::vector<double> e(std::size_t{1} << n, 0.0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].size() != n) throw InvalidInput("separable_e: party count differs between terms");
    std::vector<double> pairs;
    pairs.reserve(2 * n);
    for (const LocalResponse& q : terms[i]) {
      if (std::abs(q.q1) > 1.0 || std::abs(q.q2) > 1.0)
        throw InvalidInput("separable_e: local response outside [-1, 1]");
      pairs.push_back(q.q1);
      pairs.push_back(q.q2);
    }
    const std::vector<double> prod = kronecker_pairs<double>(pairs);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += weights[i] * prod[k];
  }
  return CorrelationVector(static_cast<int>(n), std::move(e));
}

}  // namespace belltomo

#endif  // BELLTOMO_INEQUALITIES_HPP
