// SPDX-License-Identifier: Apache-2.0
#include "maopt/errors.hpp"

namespace maopt {

const char* errc_name(errc code) {
    switch (code) {
        case errc::zf_infeasible: return "zf_infeasible";
        case errc::overlapping_regions: return "overlapping_regions";
        case errc::nonpositive_power: return "nonpositive_power";
        case errc::invalid_outage_target: return "invalid_outage_target";
        case errc::invalid_field: return "invalid_field";
        case errc::ill_conditioned: return "ill_conditioned";
        case errc::nonpositive_variance: return "nonpositive_variance";
        case errc::degenerate_distribution: return "degenerate_distribution";
        case errc::nonpositive_rate_argument: return "nonpositive_rate_argument";
        case errc::combinatorial_limit: return "combinatorial_limit";
    }
    return "unknown";
}

} // namespace maopt
