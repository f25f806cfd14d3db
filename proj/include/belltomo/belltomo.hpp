#ifndef BELLTOMO_BELLTOMO_HPP
#define BELLTOMO_BELLTOMO_HPP

#include "belltomo/error.hpp"
#include "belltomo/ghz.hpp"
#include "belltomo/inequalities.hpp"
#include "belltomo/multiindex.hpp"
#include "belltomo/optical.hpp"
#include "belltomo/optimize.hpp"
#include "belltomo/parallel.hpp"
#include "belltomo/photon_number.hpp"
#include "belltomo/quadrature.hpp"
#include "belltomo/reconstruct.hpp"
#include "belltomo/schemes.hpp"
#include "belltomo/specfun.hpp"
#include "belltomo/spin.hpp"

namespace belltomo {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace belltomo

#endif  // BELLTOMO_BELLTOMO_HPP
