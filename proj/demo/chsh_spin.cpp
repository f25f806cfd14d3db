// CHSH for a spin pair in the GHZ (Bell) state: the known optimal angles, then a blind search.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "belltomo/belltomo.hpp"

using namespace belltomo;

int main() {
  const double pi = std::numbers::pi;
  const BellExpression chsh = mermin_inequality(2);
  const SchemeConfig spin = SchemeConfig::spin();

  const double phi = 0.25;
  const SettingPairs known = {{EulerAngles{phi, -pi / 8, 0}, EulerAngles{phi, 3 * pi / 8, 0}},
                              {EulerAngles{-phi, pi / 8, 0}, EulerAngles{-phi, -3 * pi / 8, 0}}};
  std::printf("known angles  : %.12f\n", bell_value(spin, chsh, known));

  const SearchResult r = maximize_bell(spin, 2, chsh, default_search_space(Scheme::spin, 2));
  std::printf("search        : %.12f after %zu evaluations\n", r.value, r.evaluations);
  std::printf("Tsirelson     : %.12f\n", 2 * std::sqrt(2.0));
  std::printf("local bound   : %.1f\n", chsh.bound);
  return 0;
}
