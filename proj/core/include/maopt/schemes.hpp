// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_SCHEMES_HPP
#define MAOPT_SCHEMES_HPP

#include <cstdint>
#include <vector>

#include "maopt/outage_rate.hpp"
#include "maopt/system_config.hpp"

namespace maopt {

/// Antennas beyond this count make the C(2N, N) antenna-selection search
/// impractical; as_best refuses rather than stall.
inline constexpr int kSelectionEnumerationCap = 12;

/// Uniform linear array along x with 0.5-wavelength spacing, y = 0.
/// Rigid-array baselines ignore the per-antenna moving regions.
AntennaLayout fpa_layout(int num_antennas);

struct RapResult {
    AntennaLayout layout;
    double sum_rate = 0.0;
};

/// Best of `realizations` layouts drawn uniformly within the regions,
/// under the closed-form sum rate. Realization k uses substream (seed, k).
RapResult rap_best(const SystemConfig& cfg,
                   const InverseGammaLinearization& lin, int realizations,
                   std::uint64_t seed);

struct SelectionResult {
    std::vector<int> selected; // N indices into the 2N-element ULA, ascending
    double sum_rate = 0.0;
    long long subsets_evaluated = 0;
};

/// Exhaustive antenna selection: the best N of a 2N-element 0.5-wavelength
/// ULA. Ties keep the lexicographically smallest index set. Throws
/// numerical_error(combinatorial_limit) above kSelectionEnumerationCap.
SelectionResult as_best(const SystemConfig& cfg,
                        const InverseGammaLinearization& lin);

struct RotationResult {
    double angle = 0.0; // radians
    double sum_rate = 0.0;
};

/// ULA rotated rigidly about the first antenna through angle_count angles
/// spanning [-pi, pi]; returns the best angle and its rate.
RotationResult rula_best(const SystemConfig& cfg,
                         const InverseGammaLinearization& lin,
                         int angle_count);

/// The rotated ULA layout itself (exposed for direct evaluation in tests).
AntennaLayout rula_layout(int num_antennas, double angle);

} // namespace maopt

#endif
