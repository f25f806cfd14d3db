#ifndef BELLTOMO_SPIN_HPP
#define BELLTOMO_SPIN_HPP

// Spin-1/2 tomography of GHZ and product states. Qubit |0> is the
// projection -1/2 and |1> is +1/2.

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "belltomo/error.hpp"
#include "belltomo/ghz.hpp"
#include "belltomo/specfun.hpp"

namespace belltomo {

namespace detail {

inline void check_spin_projections(std::span<const HalfInteger> s, std::size_t parties) {
  if (s.size() != parties) throw InvalidInput("spin: one projection per party required");
  for (HalfInteger v : s)
    if (v.twice != 1 && v.twice != -1) throw InvalidInput("spin: projection must be +-1/2");
}

inline void check_settings_count(std::size_t got, int n) {
  if (got != static_cast<std::size_t>(n)) throw InvalidInput("one setting per party required");
}

// <s|K|b> with branch b = 0 (-1/2) or 1 (+1/2)
inline cplx spin_amplitude(HalfInteger s, int branch, const EulerAngles& omega) {
  return wigner_K(kHalf, s, HalfInteger{branch == 0 ? -1 : 1}, omega);
}

}  // namespace detail

/// p(s_1..s_n, Omega) = |prod <s_k|K_k|-1/2> + prod <s_k|K_k|+1/2>|^2 / 2.
inline double spin_tomogram(const GhzState& state, std::span<const HalfInteger> s,
                            std::span<const EulerAngles> settings) {
  detail::check_settings_count(settings.size(), state.n());
  detail::check_spin_projections(s, settings.size());
  cplx down = 1, up = 1;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    down *= detail::spin_amplitude(s[k], 0, settings[k]);
    up *= detail::spin_amplitude(s[k], 1, settings[k]);
  }
  return 0.5 * std::norm(down + up);
}

/// Tomogram of a pure n-qubit vector; local index 0 is +1/2, party 1 most significant.
inline double spin_tomogram(const Eigen::VectorXcd& psi, std::span<const HalfInteger> s,
                            std::span<const EulerAngles> settings) {
  const std::size_t n = settings.size();
  if (psi.size() != (Eigen::Index{1} << n)) throw InvalidInput("spin_tomogram: state size must be 2^n");
  detail::check_spin_projections(s, n);
  // amplitude = sum_b prod_k <s_k|K_k|b_k> psi_b
  cplx amp = 0;
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    cplx prod = psi(b);
    for (std::size_t k = 0; k < n; ++k) {
      const int bit = static_cast<int>((b >> (n - 1 - k)) & 1);
      prod *= wigner_K(kHalf, s[k], HalfInteger{bit == 0 ? 1 : -1}, settings[k]);
    }
    amp += prod;
  }
  return std::norm(amp);
}

/// <s|K rho K^dagger|s> for a single spin-1/2 density matrix (index 0 = +1/2).
inline double spin_tomogram(const Eigen::Matrix2cd& rho, HalfInteger s, const EulerAngles& omega) {
  if (s.twice != 1 && s.twice != -1) throw InvalidInput("spin_tomogram: projection must be +-1/2");
  const Eigen::MatrixXcd k = rotation_matrix(kHalf, omega);
  const Eigen::Index row = s.twice == 1 ? 0 : 1;
  const Eigen::MatrixXcd rotated = k * rho * k.adjoint();
  return rotated(row, row).real();
}

/// Branch matrix of sign(s) after the rotation K.
inline BranchMatrix spin_branch_matrix(const EulerAngles& omega) {
  BranchMatrix o = BranchMatrix::Zero();
  for (int tw : {1, -1}) {
    const HalfInteger s{tw};
    const double sign = tw > 0 ? 1.0 : -1.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        o(a, b) += sign * std::conj(detail::spin_amplitude(s, a, omega)) * detail::spin_amplitude(s, b, omega);
  }
  return o;
}

/// Correlation with Y = {+1/2} -> +1, Z = {-1/2} -> -1, via branch matrices.
inline double spin_correlation(const GhzState& state, std::span<const EulerAngles> settings) {
  detail::check_settings_count(settings.size(), state.n());
  std::vector<BranchMatrix> ops;
  ops.reserve(settings.size());
  for (const EulerAngles& o : settings) ops.push_back(spin_branch_matrix(o));
  return ghz_expectation(ops);
}

/// Closed forms for n = 2 and n = 3.
inline double spin_correlation_closed_form(std::span<const EulerAngles> settings) {
  if (settings.size() == 2) {
    const auto& a = settings[0];
    const auto& b = settings[1];
    return std::cos(a.psi) * std::cos(b.psi) + std::sin(a.psi) * std::sin(b.psi) * std::cos(a.phi + b.phi);
  }
  if (settings.size() == 3) {
    double prod = -1.0, phase = 0.0;
    for (const auto& o : settings) {
      prod *= std::sin(o.psi);
      phase += o.phi;
    }
    return prod * std::cos(phase);
  }
  throw InvalidInput("spin_correlation_closed_form: only n = 2 and n = 3 have closed forms");
}

/// Sum over all 2^n projection tuples of p * prod sign(s_k).
inline double spin_correlation_from_tomogram(const GhzState& state, std::span<const EulerAngles> settings) {
  detail::check_settings_count(settings.size(), state.n());
  const std::size_t n = settings.size();
  if (n > 30) throw CapacityError("spin_correlation_from_tomogram: too many parties");
  std::vector<HalfInteger> s(n);
  double e = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
      const bool down = (mask >> (n - 1 - k)) & 1u;
      s[k] = HalfInteger{down ? -1 : 1};
      if (down) sign = -sign;
    }
    e += sign * spin_tomogram(state, s, settings);
  }
  return e;
}

}  // namespace belltomo

#endif  // BELLTOMO_SPIN_HPP
