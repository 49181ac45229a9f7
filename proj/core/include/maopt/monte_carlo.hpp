// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_MONTE_CARLO_HPP
#define MAOPT_MONTE_CARLO_HPP

#include <cstdint>
#include <vector>

#include "maopt/sinr_statistics.hpp"
#include "maopt/system_config.hpp"

namespace maopt {

/// Sorted SINR samples of one user under fixed LoS beamformers and fresh
/// NLoS fading per trial.
struct EmpiricalDistribution {
    std::vector<double> samples; // ascending
    std::uint64_t seed = 0;
};

/// num_trials independent SINR draws for user m. Trial i uses the
/// counter-based substream (seed, m, i), so results are identical for any
/// worker count and match draw_channel(seed, i) for the same user.
EmpiricalDistribution sample_sinr(const SystemConfig& cfg,
                                  const AntennaLayout& t, int m,
                                  int num_trials, std::uint64_t seed);

/// Fraction of samples <= v.
double empirical_cdf(const EmpiricalDistribution& dist, double v);

/// Order-statistic quantile with linear interpolation (type-7 convention).
double empirical_quantile(const EmpiricalDistribution& dist, double q);

/// log2(1 + empirical_quantile(delta)).
double empirical_outage_rate(const EmpiricalDistribution& dist, double delta);

/// Kolmogorov-Smirnov statistic between the empirical CDF and a Gamma fit.
double cdf_distance(const EmpiricalDistribution& dist, const GammaFit& fit);

} // namespace maopt

#endif
