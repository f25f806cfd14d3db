#ifndef BELLTOMO_PHOTON_NUMBER_HPP
#define BELLTOMO_PHOTON_NUMBER_HPP

// Photon-number tomography of the GHZ state after per-party displacement.

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "belltomo/error.hpp"
#include "belltomo/ghz.hpp"
#include "belltomo/quadrature.hpp"
#include "belltomo/specfun.hpp"

namespace belltomo {

using Displacement = std::complex<double>;

inline constexpr double kTruncationTolerance = 1e-8;

struct FockAmplitudes {
  std::vector<cplx> vacuum;  // <m|D(alpha)|0>
  std::vector<cplx> one;     // <m|D(alpha)|1>
};

/// Amplitudes for m = 0..max_m. <m|D|1> = sqrt(m) <m-1|D|0> - conj(alpha) <m|D|0>,
/// which is regular at alpha = 0.
inline FockAmplitudes fock_amplitudes(Displacement alpha, int max_m) {
  if (max_m < 0) throw InvalidInput("fock_amplitudes: max_m must be >= 0");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw InvalidInput("fock_amplitudes: non-finite displacement");
  FockAmplitudes out;
  out.vacuum.resize(static_cast<std::size_t>(max_m) + 1);
  out.one.resize(out.vacuum.size());
  out.vacuum[0] = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t m = 1; m < out.vacuum.size(); ++m)
    out.vacuum[m] = out.vacuum[m - 1] * alpha / std::sqrt(static_cast<double>(m));
  for (std::size_t m = 0; m < out.one.size(); ++m) {
    out.one[m] = -std::conj(alpha) * out.vacuum[m];
    if (m > 0) out.one[m] += std::sqrt(static_cast<double>(m)) * out.vacuum[m - 1];
  }
  return out;
}

/// p(m, alpha) = |prod <m_k|D_k|0> + prod <m_k|D_k|1>|^2 / 2.
inline double pn_tomogram(const GhzState& state, std::span<const int> m, std::span<const Displacement> alpha) {
  const int n = state.n();
  if (m.size() != static_cast<std::size_t>(n) || alpha.size() != m.size())
    throw InvalidInput("pn_tomogram: one photon number and one displacement per party required");
  cplx p0 = 1, p1 = 1;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] < 0) throw InvalidInput("pn_tomogram: photon numbers must be >= 0");
    const FockAmplitudes a = fock_amplitudes(alpha[k], m[k]);
    p0 *= a.vacuum.back();
    p1 *= a.one.back();
  }
  return 0.5 * std::norm(p0 + p1);
}

/// The displayed product formula, (1/2) prod |a|^{2m-2}/m! e^{-|a|^2} |prod a + prod (m - |a|^2)|^2.
/// Singular where some alpha_k = 0 and m_k = 0.
inline double pn_tomogram_closed_form(std::span<const int> m, std::span<const Displacement> alpha) {
  if (m.size() != alpha.size() || m.empty()) throw InvalidInput("pn_tomogram_closed_form: size mismatch");
  double weight = 1.0;
  cplx pa = 1;
  double pm = 1.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double r2 = std::norm(alpha[k]);
    if (r2 == 0.0 && m[k] == 0) throw InvalidInput("pn_tomogram_closed_form: singular at alpha = 0, m = 0");
    weight *= std::pow(r2, m[k] - 1) / factorial(m[k]) * std::exp(-r2);
    pa *= alpha[k];
    pm *= m[k] - r2;
  }
  return 0.5 * weight * std::norm(pa + pm);
}

/// Branch matrix of the cutoff observable (+1 above m, -1 for 0..m).
inline BranchMatrix pn_branch_matrix(Displacement alpha, int cutoff) {
  if (cutoff < 0) throw InvalidInput("pn_branch_matrix: cutoff must be >= 0");
  const FockAmplitudes a = fock_amplitudes(alpha, cutoff);
  BranchMatrix o = BranchMatrix::Identity();
  for (std::size_t m = 0; m < a.vacuum.size(); ++m) {
    const cplx amp[2] = {a.vacuum[m], a.one[m]};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) o(r, c) -= 2.0 * std::conj(amp[r]) * amp[c];
  }
  return o;
}

/// Closed forms for cutoff 0 at n = 2 and n = 3.
inline double pn_correlation_closed_form(std::span<const Displacement> alpha) {
  if (alpha.size() == 2) {
    const double x1 = std::norm(alpha[0]), x2 = std::norm(alpha[1]);
    const double re = (alpha[0] * alpha[1]).real();
    return std::exp(-x1 - x2) * (2.0 + 4.0 * re + 2.0 * x1 * x2 - (1.0 + x2) * std::exp(x1) -
                                 (1.0 + x1) * std::exp(x2) + std::exp(x1 + x2));
  }
  if (alpha.size() == 3) {
    const double x1 = std::norm(alpha[0]), x2 = std::norm(alpha[1]), x3 = std::norm(alpha[2]);
    const double re = (alpha[0] * alpha[1] * alpha[2]).real();
    const double e1 = std::exp(x1), e2 = std::exp(x2), e3 = std::exp(x3);
    return std::exp(-x1 - x2 - x3) *
           (-4.0 + 8.0 * re - 4.0 * x1 * x2 * x3 + 2.0 * (e1 + e2 + e3) + 2.0 * x2 * x3 * e1 +
            2.0 * x1 * x2 * e3 + 2.0 * x1 * x3 * e2 - (1.0 + x1) * e2 * e3 - (1.0 + x2) * e1 * e3 -
            (1.0 + x3) * e1 * e2 + e1 * e2 * e3);
  }
  throw InvalidInput("pn_correlation_closed_form: only n = 2 and n = 3 have closed forms");
}

/// Correlation with Z = {0..cutoff} -> -1, Y = {cutoff+1, ...} -> +1.
/// Cutoff 0 at n = 2, 3 uses the closed forms, everything else the exact
/// branch-matrix route.
inline double pn_correlation(const GhzState& state, std::span<const Displacement> alpha, int cutoff = 0) {
  if (alpha.size() != static_cast<std::size_t>(state.n())) throw InvalidInput("pn_correlation: one displacement per party required");
  if (cutoff < 0) throw InvalidInput("pn_correlation: cutoff must be >= 0");
  if (cutoff == 0 && (state.n() == 2 || state.n() == 3)) return pn_correlation_closed_form(alpha);
  std::vector<BranchMatrix> ops;
  for (Displacement a : alpha) ops.push_back(pn_branch_matrix(a, cutoff));
  return ghz_expectation(ops);
}

/// Truncated outcome summation. The truncation level grows until the
/// missing probability mass (a bound on the error of E) is below `tol`.
inline Estimate pn_correlation_from_tomogram(const GhzState& state, std::span<const Displacement> alpha,
                                             int cutoff = 0, double tol = kTruncationTolerance) {
  const std::size_t n = alpha.size();
  if (n != static_cast<std::size_t>(state.n())) throw InvalidInput("pn_correlation_from_tomogram: one displacement per party required");
  if (cutoff < 0) throw InvalidInput("pn_correlation_from_tomogram: cutoff must be >= 0");
  double rmax = 0.0;
  for (Displacement a : alpha) rmax = std::max(rmax, std::abs(a));
  int max_m = std::max(cutoff + 1, static_cast<int>(std::ceil(rmax * rmax + 8.0 * rmax + 12.0)));
  constexpr int kMaxTruncation = 160;
  for (;;) {
    max_m = std::min(max_m, kMaxTruncation);
    std::vector<FockAmplitudes> amps;
    for (Displacement a : alpha) amps.push_back(fock_amplitudes(a, max_m));
    const std::size_t per = static_cast<std::size_t>(max_m) + 1;
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= per;
    double e = 0.0, mass = 0.0;
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t t = 0; t < total; ++t) {
      cplx p0 = 1, p1 = 1;
      int sign = 1;
      for (std::size_t k = 0; k < n; ++k) {
        p0 *= amps[k].vacuum[idx[k]];
        p1 *= amps[k].one[idx[k]];
        if (static_cast<int>(idx[k]) <= cutoff) sign = -sign;
      }
      const double p = 0.5 * std::norm(p0 + p1);
      e += sign * p;
      mass += p;
      for (std::size_t k = n; k-- > 0;) {
        if (++idx[k] < per) break;
        idx[k] = 0;
      }
    }
    const double missing = std::abs(1.0 - mass);
    if (missing <= tol) return Estimate{e, missing, total};
    if (max_m == kMaxTruncation)
      throw AccuracyError("pn_correlation_from_tomogram: truncation limit reached", missing);
    max_m *= 2;
  }
}

}  // namespace belltomo

#endif  // BELLTOMO_PHOTON_NUMBER_HPP
