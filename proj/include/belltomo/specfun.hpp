#ifndef BELLTOMO_SPECFUN_HPP
#define BELLTOMO_SPECFUN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "belltomo/error.hpp"

namespace belltomo {

using cplx = std::complex<double>;

/// Exact half-integer stored as twice its value.
struct HalfInteger {
  int twice = 0;

  static constexpr HalfInteger from_twice(int t) { return HalfInteger{t}; }
  static constexpr HalfInteger from_int(int v) { return HalfInteger{2 * v}; }

  constexpr double value() const { return twice / 2.0; }
  constexpr bool is_integer() const { return twice % 2 == 0; }
  constexpr HalfInteger operator-() const { return HalfInteger{-twice}; }
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return {a.twice + b.twice}; }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return {a.twice - b.twice}; }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
};

inline constexpr HalfInteger kHalf{1};

/// Euler angles of the rotation e^{i theta S_z} e^{-i psi S_y} e^{i phi S_z}.
struct EulerAngles {
  double phi = 0.0;
  double psi = 0.0;
  double theta = 0.0;

  /// phi, theta in [0, 2pi), psi in [0, pi]. A psi outside [0, pi] is folded by
  /// psi -> -psi with (phi, theta) -> (phi - pi, theta + pi), which is exact;
  /// a 2pi shift of psi changes K by (-1)^{2j}, invisible in tomograms.
  EulerAngles canonical() const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto wrap = [](double a) {
      double r = std::fmod(a, two_pi);
      if (r < 0) r += two_pi;
      if (r >= two_pi) r = 0.0;
      return r;
    };
    if (!std::isfinite(phi) || !std::isfinite(psi) || !std::isfinite(theta))
      throw InvalidInput("EulerAngles: non-finite angle");
    double p = wrap(psi), f = phi, t = theta;
    if (p > std::numbers::pi) {
      p = two_pi - p;
      f -= std::numbers::pi;
      t += std::numbers::pi;
    }
    return {wrap(f), p, wrap(t)};
  }
};

// ---------------------------------------------------------------------------
// Error function
// ---------------------------------------------------------------------------

/// erf with a positive-term series for |x| <= 2 and a Lentz continued
/// fraction for erfc beyond.
inline double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  const double sgn = x < 0 ? -1.0 : 1.0;
  if (ax <= 2.0) {
    // erf(x) = 2/sqrt(pi) e^{-x^2} sum 2^k x^{2k+1} / (2k+1)!!
    const double x2 = ax * ax;
    double term = ax, sum = ax;
    for (int k = 1; k < 200; ++k) {
      term *= 2.0 * x2 / (2.0 * k + 1.0);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return sgn * std::exp(-x2) * sum * 2.0 / std::sqrt(std::numbers::pi);
  }
  if (ax > 6.5) return sgn;  // erfc < 1e-19
  // erfc(x) = e^{-x^2}/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  constexpr double tiny = 1e-300;
  double f = ax, c = ax, d = 0.0;
  for (int k = 1; k < 500; ++k) {
    const double a = k / 2.0;
    d = ax + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = ax + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double erfc = std::exp(-ax * ax) / std::sqrt(std::numbers::pi) / f;
  return sgn * (1.0 - erfc);
}

// ---------------------------------------------------------------------------
// Factorials
// ---------------------------------------------------------------------------

inline constexpr int kMaxFactorial = 170;

namespace detail {
inline constexpr std::array<double, kMaxFactorial + 1> factorial_table = [] {
  std::array<double, kMaxFactorial + 1> t{};
  t[0] = 1.0;
  for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
  return t;
}();
}  // namespace detail

inline double factorial(int k) {
  if (k < 0) throw InvalidInput("factorial: negative argument");
  if (k > kMaxFactorial) throw CapacityError("factorial: argument > 170 overflows double");
  return detail::factorial_table[static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------
// Jacobi polynomials
// ---------------------------------------------------------------------------

inline double jacobi(int n, double alpha, double beta, double x) {
  if (n < 0) throw InvalidInput("jacobi: degree must be >= 0");
  if (n == 0) return 1.0;
  const double ab = alpha + beta;
  double p_prev = 1.0;
  double p = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
  for (int k = 2; k <= n; ++k) {
    const double t = 2.0 * k + ab;
    const double lead = 2.0 * k * (k + ab) * (t - 2.0);
    if (lead == 0.0)
      throw InvalidInput("jacobi: recurrence degenerates for alpha + beta = " + std::to_string(ab));
    const double next =
        ((t - 1.0) * (t * (t - 2.0) * x + alpha * alpha - beta * beta) * p -
         2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * t * p_prev) /
        lead;
    p_prev = p;
    p = next;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Rotation matrix elements
// ---------------------------------------------------------------------------

namespace detail {

inline void check_projection(HalfInteger j, HalfInteger m, const char* what) {
  if (j.twice < 0) throw InvalidInput(std::string(what) + ": j must be >= 0");
  if (std::abs(m.twice) > j.twice || (j.twice - m.twice) % 2 != 0)
    throw InvalidInput(std::string(what) + ": projection outside {-j, ..., j}");
}

inline double parity_sign(int twice_exponent) {
  // (-1)^{e} for the integer e = twice_exponent / 2
  return ((twice_exponent / 2) % 2 == 0) ? 1.0 : -1.0;
}

// d^j_{mp,m}(beta) for m >= |mp|: all Jacobi parameters are then nonnegative.
inline double wigner_d_canonical(int tj, int tmp, int tm, double beta) {
  const int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
  const int jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
  const int a = (tm - tmp) / 2, b = (tm + tmp) / 2;
  const double norm = std::sqrt(factorial(jpm) / factorial(jpmp) * (factorial(jmm) / factorial(jmmp)));
  const double c = std::cos(beta / 2.0), s = std::sin(beta / 2.0);
  return norm * std::pow(s, a) * std::pow(c, b) * jacobi(jmm, a, b, std::cos(beta));
}

}  // namespace detail

/// Wigner small-d element d^j_{mp,m}(beta) = <j,mp| e^{-i beta S_y} |j,m>.
inline double wigner_d(HalfInteger j, HalfInteger mp, HalfInteger m, double beta) {
  detail::check_projection(j, mp, "wigner_d");
  detail::check_projection(j, m, "wigner_d");
  const int s = mp.twice, sp = m.twice;
  if (std::abs(sp) >= std::abs(s)) {
    if (sp >= 0) return detail::wigner_d_canonical(j.twice, s, sp, beta);
    return detail::parity_sign(sp - s) * detail::wigner_d_canonical(j.twice, -s, -sp, beta);
  }
  if (s >= 0) return detail::parity_sign(sp - s) * detail::wigner_d_canonical(j.twice, sp, s, beta);
  return detail::wigner_d_canonical(j.twice, -sp, -s, beta);
}

/// <j,s|K(omega)|j,s'> = e^{i(s theta + s' phi)} d^j_{s,s'}(psi).
inline cplx wigner_K(HalfInteger j, HalfInteger s, HalfInteger sp, const EulerAngles& omega) {
  const double d = wigner_d(j, s, sp, omega.psi);
  const double angle = s.value() * omega.theta + sp.value() * omega.phi;
  return {d * std::cos(angle), d * std::sin(angle)};
}

/// Full (2j+1)x(2j+1) K matrix; row/column index i carries projection j - i.
inline Eigen::MatrixXcd rotation_matrix(HalfInteger j, const EulerAngles& omega) {
  if (j.twice < 0) throw InvalidInput("rotation_matrix: j must be >= 0");
  const int dim = j.twice + 1;
  Eigen::MatrixXcd k(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      k(r, c) = wigner_K(j, HalfInteger{j.twice - 2 * r}, HalfInteger{j.twice - 2 * c}, omega);
  return k;
}

// ---------------------------------------------------------------------------
// Wigner 3j symbols (Racah formula, exact rational arithmetic)
// ---------------------------------------------------------------------------

inline constexpr int kMax3jTwice = 20;

namespace detail {

inline boost::multiprecision::cpp_int big_factorial(int k) {
  boost::multiprecision::cpp_int r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace detail

inline double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1,
                        HalfInteger m2, HalfInteger m3) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  const int tj1 = j1.twice, tj2 = j2.twice, tj3 = j3.twice;
  const int tm1 = m1.twice, tm2 = m2.twice, tm3 = m3.twice;
  if (tj1 < 0 || tj2 < 0 || tj3 < 0) throw InvalidInput("wigner_3j: negative j");
  if (tj1 > kMax3jTwice || tj2 > kMax3jTwice || tj3 > kMax3jTwice)
    throw CapacityError("wigner_3j: j > 10 is not supported");
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if ((tj1 + tm1) % 2 || (tj2 + tm2) % 2 || (tj3 + tm3) % 2) return 0.0;
  if ((tj1 + tj2 + tj3) % 2) return 0.0;
  if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2)) return 0.0;

  // All quantities below are integers.
  const int a = (tj1 + tj2 - tj3) / 2;
  const int b = (tj1 - tj2 + tj3) / 2;
  const int c = (-tj1 + tj2 + tj3) / 2;
  const int total = (tj1 + tj2 + tj3) / 2 + 1;
  const int t1 = (tj3 - tj2 + tm1) / 2;  // j3 - j2 + m1
  const int t2 = (tj3 - tj1 - tm2) / 2;  // j3 - j1 - m2
  const int t3 = a;                      // j1 + j2 - j3
  const int t4 = (tj1 - tm1) / 2;        // j1 - m1
  const int t5 = (tj2 + tm2) / 2;        // j2 + m2

  const int kmin = std::max({0, -t1, -t2});
  const int kmax = std::min({t3, t4, t5});
  cpp_rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    const cpp_int den = detail::big_factorial(k) * detail::big_factorial(t1 + k) *
                        detail::big_factorial(t2 + k) * detail::big_factorial(t3 - k) *
                        detail::big_factorial(t4 - k) * detail::big_factorial(t5 - k);
    const cpp_rational term(cpp_int(1), den);
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  if (sum == 0) return 0.0;

  const cpp_rational delta(detail::big_factorial(a) * detail::big_factorial(b) * detail::big_factorial(c),
                           detail::big_factorial(total));
  const cpp_int moments = detail::big_factorial((tj1 + tm1) / 2) * detail::big_factorial((tj1 - tm1) / 2) *
                          detail::big_factorial((tj2 + tm2) / 2) * detail::big_factorial((tj2 - tm2) / 2) *
                          detail::big_factorial((tj3 + tm3) / 2) * detail::big_factorial((tj3 - tm3) / 2);
  const cpp_rational squared = delta * cpp_rational(moments) * sum * sum;
  const double magnitude = std::sqrt(squared.convert_to<double>());
  const int phase = (tj1 - tj2 - tm3) / 2;  // (-1)^{j1 - j2 - m3}
  const double sign = ((phase % 2 == 0) ? 1.0 : -1.0) * (sum > 0 ? 1.0 : -1.0);
  return sign * magnitude;
}

}  // namespace belltomo

#endif  // BELLTOMO_SPECFUN_HPP
