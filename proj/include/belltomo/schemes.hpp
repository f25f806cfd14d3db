#ifndef BELLTOMO_SCHEMES_HPP
#define BELLTOMO_SCHEMES_HPP

// Scheme-independent view: one setting per party, one binning per scheme.

#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "belltomo/error.hpp"
#include "belltomo/ghz.hpp"
#include "belltomo/optical.hpp"
#include "belltomo/photon_number.hpp"
#include "belltomo/quadrature.hpp"
#include "belltomo/spin.hpp"

namespace belltomo {

enum class Scheme { spin, optical, photon_number };

inline std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::spin: return "spin";
    case Scheme::optical: return "optical";
    case Scheme::photon_number: return "pn";
  }
  return "unknown";
}

inline Scheme parse_scheme(const std::string& name) {
  if (name == "spin") return Scheme::spin;
  if (name == "optical") return Scheme::optical;
  if (name == "pn" || name == "photon-number") return Scheme::photon_number;
  throw InvalidInput("unknown scheme '" + name + "'");
}

/// Y = {+1/2}, Z = {-1/2}.
struct SpinBins {};

/// Y_k = [x_k, inf), Z_k = (-inf, x_k); `per_party` overrides `x` when set.
struct ThresholdBins {
  double x = 0.0;
  std::vector<double> per_party;

  double at(std::size_t k) const { return per_party.empty() ? x : per_party.at(k); }
  bool uniform() const { return per_party.empty(); }
};

/// Z = {0..m}, Y = {m+1, ...}.
struct CutoffBins {
  int m = 0;
};

using BinSpec = std::variant<SpinBins, ThresholdBins, CutoffBins>;
using PartySetting = std::variant<EulerAngles, OpticalPhase, Displacement>;

struct SchemeConfig {
  Scheme scheme = Scheme::spin;
  BinSpec bins = SpinBins{};

  static SchemeConfig spin() { return {Scheme::spin, SpinBins{}}; }
  static SchemeConfig optical(double x = 0.0) { return {Scheme::optical, ThresholdBins{x, {}}}; }
  static SchemeConfig photon_number(int cutoff = 0) { return {Scheme::photon_number, CutoffBins{cutoff}}; }

  void validate() const {
    const bool ok = (scheme == Scheme::spin && std::holds_alternative<SpinBins>(bins)) ||
                    (scheme == Scheme::optical && std::holds_alternative<ThresholdBins>(bins)) ||
                    (scheme == Scheme::photon_number && std::holds_alternative<CutoffBins>(bins));
    if (!ok) throw InvalidInput("SchemeConfig: binning does not match the scheme");
    if (const auto* c = std::get_if<CutoffBins>(&bins); c && c->m < 0)
      throw InvalidInput("SchemeConfig: cutoff must be >= 0");
  }
};

namespace detail {

template <class T>
std::vector<T> unpack_settings(std::span<const PartySetting> settings, const char* scheme) {
  std::vector<T> out;
  out.reserve(settings.size());
  for (const PartySetting& s : settings) {
    const T* v = std::get_if<T>(&s);
    if (!v) throw InvalidInput(std::string("setting type does not match the ") + scheme + " scheme");
    out.push_back(*v);
  }
  return out;
}

inline std::vector<double> phases(std::span<const PartySetting> settings) {
  std::vector<double> out;
  for (const OpticalPhase& p : unpack_settings<OpticalPhase>(settings, "optical")) out.push_back(p.theta);
  return out;
}

inline std::vector<double> thresholds(const ThresholdBins& bins, std::size_t n) {
  if (!bins.uniform() && bins.per_party.size() != n)
    throw InvalidInput("ThresholdBins: one threshold per party required");
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(bins.at(k));
  return out;
}

}  // namespace detail

/// Fast correlation: closed forms where available, branch matrices otherwise.
inline double correlation(const SchemeConfig& config, const GhzState& state,
                          std::span<const PartySetting> settings) {
  config.validate();
  if (settings.size() != static_cast<std::size_t>(state.n()))
    throw InvalidInput("correlation: one setting per party required");
  switch (config.scheme) {
    case Scheme::spin: {
      const auto angles = detail::unpack_settings<EulerAngles>(settings, "spin");
      if (state.n() == 2 || state.n() == 3) return spin_correlation_closed_form(angles);
      return spin_correlation(state, angles);
    }
    case Scheme::optical: {
      const auto& bins = std::get<ThresholdBins>(config.bins);
      const auto theta = detail::phases(settings);
      if (bins.uniform()) return optical_correlation(state, theta, bins.x);
      const auto x = detail::thresholds(bins, theta.size());
      return optical_correlation(state, theta, std::span<const double>(x));
    }
    case Scheme::photon_number: {
      const auto alpha = detail::unpack_settings<Displacement>(settings, "photon-number");
      return pn_correlation(state, alpha, std::get<CutoffBins>(config.bins).m);
    }
  }
  throw InvalidInput("correlation: unknown scheme");
}

/// Generic path: sum_eps p_eps eps_1 ... eps_n from the tomogram itself, by
/// summation (spin, photon number) or orthant quadrature (optical).
inline Estimate correlation_from_tomogram(const SchemeConfig& config, const GhzState& state,
                                          std::span<const PartySetting> settings) {
  config.validate();
  if (settings.size() != static_cast<std::size_t>(state.n()))
    throw InvalidInput("correlation_from_tomogram: one setting per party required");
  switch (config.scheme) {
    case Scheme::spin: {
      const auto angles = detail::unpack_settings<EulerAngles>(settings, "spin");
      return Estimate{spin_correlation_from_tomogram(state, angles), 0.0, std::size_t{1} << state.n()};
    }
    case Scheme::optical: {
      const auto theta = detail::phases(settings);
      const auto x = detail::thresholds(std::get<ThresholdBins>(config.bins), theta.size());
      return optical_correlation_from_tomogram(state, theta, x);
    }
    case Scheme::photon_number: {
      const auto alpha = detail::unpack_settings<Displacement>(settings, "photon-number");
      return pn_correlation_from_tomogram(state, alpha, std::get<CutoffBins>(config.bins).m);
    }
  }
  throw InvalidInput("correlation_from_tomogram: unknown scheme");
}

}  // namespace belltomo

#endif  // BELLTOMO_SCHEMES_HPP
