// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_OPTIMIZER_HPP
#define MAOPT_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "maopt/outage_rate.hpp"
#include "maopt/rng.hpp"
#include "maopt/system_config.hpp"

namespace maopt {

struct PgaConfig {
    double step_size = 0.015;  // wavelengths per unit gradient
    int max_iters = 10000;
    int conv_window = 50;      // iterations over which the plateau is measured
    double conv_tol = 1e-6;    // bits/s/Hz
    int num_starts = 5;        // random initial layouts
    bool line_search = false;  // Armijo backtracking instead of a fixed step
    double armijo_c = 1e-4;    // sufficient-increase fraction, in (0,1)
    double backtrack = 0.5;    // step shrink factor per rejected trial
    int max_backtracks = 30;
};

struct PgaTrace {
    std::vector<double> objective; // length iterations + 1
    AntennaLayout final_layout;
    double final_objective = 0.0;
    int iterations = 0;
    int start_index = 0;
    bool converged = false; // false when max_iters was exhausted
};

/// Per-coordinate clamp of every antenna into its region. Idempotent.
AntennaLayout project_layout(const AntennaLayout& t,
                             const std::vector<Region>& regions);

/// One antenna layout drawn uniformly within each region.
AntennaLayout random_layout(const std::vector<Region>& regions,
                            SubstreamRng& rng);

/// Projected gradient ascent from one start:
///   t <- project(t + step * grad)
/// until the objective changes by less than conv_tol across conv_window
/// iterations or max_iters is reached. Infeasible starts are projected onto
/// the regions first. With line_search on, each step must satisfy an Armijo
/// sufficient-increase condition, making the recorded objective sequence
/// nondecreasing.
PgaTrace pga_run(const SystemConfig& cfg, const AntennaLayout& start,
                 const InverseGammaLinearization& lin, const PgaConfig& pga);

struct MultiStartResult {
    PgaTrace best;
    std::vector<PgaTrace> traces;
};

/// Runs num_starts random starts (uniform in each region, substream keyed by
/// start index) followed by any explicitly supplied starts, concurrently, and
/// returns the trace with the maximum final objective. Ties keep the lowest
/// start index. Identical (seed, config) reproduce identical traces.
MultiStartResult multi_start(const SystemConfig& cfg,
                             const InverseGammaLinearization& lin,
                             const PgaConfig& pga, std::uint64_t seed,
                             const std::vector<AntennaLayout>& extra_starts = {});

} // namespace maopt

#endif
