#ifndef BELLTOMO_GHZ_HPP
#define BELLTOMO_GHZ_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "belltomo/error.hpp"

namespace belltomo {

/// (|0...0> + |1...1>) / sqrt(2) on n parties.
class GhzState {
 public:
  explicit GhzState(int n) : n_(n) {
    if (n < 1) throw InvalidInput("GhzState: n must be >= 1");
  }
  int n() const noexcept { return n_; }

 private:
  int n_;
};

/// Local +-1 observable restricted to span{|0>, |1>}: entry (a, b) = <a|A|b>.
using BranchMatrix = Eigen::Matrix2cd;

/// <GHZ| A_1 (x) ... (x) A_n |GHZ>
///   = (prod O_00 + prod O_11 + prod O_01 + prod O_10) / 2.
inline double ghz_expectation(std::span<const BranchMatrix> parties) {
  if (parties.empty()) throw InvalidInput("ghz_expectation: no parties");
  std::complex<double> p00 = 1, p11 = 1, p01 = 1, p10 = 1;
  for (const BranchMatrix& o : parties) {
    p00 *= o(0, 0);
    p11 *= o(1, 1);
    p01 *= o(0, 1);
    p10 *= o(1, 0);
  }
  return 0.5 * (p00 + p11 + p01 + p10).real();
}

}  // namespace belltomo

#endif  // BELLTOMO_GHZ_HPP
