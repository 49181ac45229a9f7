// SPDX-License-Identifier: Apache-2.0
#include "maopt/rng.hpp"

#include <cmath>

namespace maopt {

double SubstreamRng::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit(); // in (0,1], so log(u1) is finite
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

} // namespace maopt
