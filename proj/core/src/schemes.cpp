// SPDX-License-Identifier: Apache-2.0
#include "maopt/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maopt/errors.hpp"
#include "maopt/optimizer.hpp"
#include "maopt/rng.hpp"

namespace maopt {

AntennaLayout fpa_layout(int num_antennas) {
    AntennaLayout t(2, num_antennas, arma::fill::zeros);
    for (int n = 0; n < num_antennas; ++n) t(0, n) = 0.5 * n;
    return t;
}

RapResult rap_best(const SystemConfig& cfg,
                   const InverseGammaLinearization& lin, int realizations,
                   std::uint64_t seed) {
    RapResult best;
    best.sum_rate = -1.0;
    for (int k = 0; k < realizations; ++k) {
        SubstreamRng rng(seed, 0x5241u /* realization stream tag */, k);
        const AntennaLayout t = random_layout(cfg.regions, rng);
        const double rate = evaluate_sum_rate(cfg, t, lin).total;
        if (rate > best.sum_rate) {
            best.sum_rate = rate;
            best.layout = t;
        }
    }
    return best;
}

SelectionResult as_best(const SystemConfig& cfg,
                        const InverseGammaLinearization& lin) {
    const int n = cfg.num_antennas;
    if (n > kSelectionEnumerationCap) {
        throw numerical_error(errc::combinatorial_limit,
                              "antenna selection enumerates C(2N, N); N=" +
                              std::to_string(n) + " exceeds the cap of " +
                              std::to_string(kSelectionEnumerationCap));
    }
    const int total = 2 * n;
    const AntennaLayout ula = fpa_layout(total);

    SelectionResult best;
    best.sum_rate = -1.0;

    std::vector<int> pick(n);
    for (int i = 0; i < n; ++i) pick[i] = i;
    // Lexicographic subset enumeration; the first-found maximum therefore
    // already carries the lexicographically smallest index set on ties.
    while (true) {
        AntennaLayout t(2, n);
        for (int i = 0; i < n; ++i) t.col(i) = ula.col(pick[i]);
        const double rate = evaluate_sum_rate(cfg, t, lin).total;
        ++best.subsets_evaluated;
        if (rate > best.sum_rate) {
            best.sum_rate = rate;
            best.selected = pick;
        }
        int i = n - 1;
        while (i >= 0 && pick[i] == total - n + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

AntennaLayout rula_layout(int num_antennas, double angle) {
    AntennaLayout t(2, num_antennas);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (int n = 0; n < num_antennas; ++n) {
        const double r = 0.5 * n; // pivot on the first antenna at the origin
        t(0, n) = r * c;
        t(1, n) = r * s;
    }
    return t;
}

RotationResult rula_best(const SystemConfig& cfg,
                         const InverseGammaLinearization& lin,
                         int angle_count) {
    RotationResult best;
    best.sum_rate = -1.0;
    for (int k = 0; k < angle_count; ++k) {
        const double angle =
            (angle_count == 1)
                ? -M_PI
                : -M_PI + 2.0 * M_PI * k / static_cast<double>(angle_count - 1);
        const double rate =
            evaluate_sum_rate(cfg, rula_layout(cfg.num_antennas, angle), lin)
                .total;
        if (rate > best.sum_rate) {
            best.sum_rate = rate;
            best.angle = angle;
        }
    }
    return best;
}

} // namespace maopt
