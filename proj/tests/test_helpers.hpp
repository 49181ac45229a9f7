// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_TEST_HELPERS_HPP
#define MAOPT_TEST_HELPERS_HPP

#include <armadillo>

#include "maopt/channel.hpp"
#include "maopt/optimizer.hpp"
#include "maopt/outage_rate.hpp"
#include "maopt/rng.hpp"
#include "maopt/system_config.hpp"

namespace testutil {

// The simulation scenario used across the experiments: four users on a
// 1 km circle (beta = 1e-3 * r^-2 = 1e-9), 10 dBm per user, -90 dBm noise,
// published departure angles, tiled moving regions of side L.
inline maopt::SystemConfig scenario_config(int num_antennas = 5,
                                           double side_length = 1.0,
                                           double rician_k = 15.0,
                                           double outage_target = 0.2) {
    maopt::SystemConfig cfg;
    cfg.num_antennas = num_antennas;
    cfg.num_users = 4;
    cfg.tx_power_mw = arma::vec(4, arma::fill::value(10.0));
    cfg.large_scale_gain = arma::vec(4, arma::fill::value(1e-9));
    cfg.rician_k = arma::vec(4, arma::fill::value(rician_k));
    cfg.noise_power_mw = 1e-9;
    cfg.elevation_aod = arma::vec{0.8676, 0.9879, 1.2720, 0.4021};
    cfg.azimuth_aod = arma::vec{0.2852, 1.1165, 1.0048, 1.2045};
    cfg.outage_target = outage_target;
    cfg.regions = maopt::tiled_regions(num_antennas, side_length);
    return maopt::validate_config(cfg);
}

// The CDF-validation scenario: same powers and fading, but users at
// theta_m = phi_m in {0, 0.5, 1, 1.5} and a fixed five-antenna layout.
inline maopt::SystemConfig cdf_scenario_config(double rician_k = 15.0,
                                               double outage_target = 0.2) {
    maopt::SystemConfig cfg = scenario_config(5, 1.0, rician_k, outage_target);
    cfg.elevation_aod = arma::vec{0.0, 0.5, 1.0, 1.5};
    cfg.azimuth_aod = arma::vec{0.0, 0.5, 1.0, 1.5};
    return maopt::validate_config(cfg);
}

inline maopt::AntennaLayout cdf_scenario_layout() {
    return maopt::AntennaLayout{{0.0, 0.0, 0.5, 0.5, 1.0},
                                {0.0, 0.5, 0.0, 0.5, 0.0}};
}

// The four published optimizer starts (slightly outside the tiled regions
// for antennas 3 and 5; pga_run projects them on entry).
inline std::vector<maopt::AntennaLayout> published_starts() {
    return {
        maopt::AntennaLayout{{0.4, 2.3, 4.7, 5.5, 7.4},
                             {0.4, 0.3, 0.6, 0.8, 0.8}},
        maopt::AntennaLayout{{0.8, 2.5, 4.2, 5.8, 7.1},
                             {0.4, 0.3, 0.6, 0.5, 0.5}},
        maopt::AntennaLayout{{0.7, 2.1, 3.8, 5.5, 7.15},
                             {0.6, 0.3, 0.4, 0.5, 0.9}},
        maopt::AntennaLayout{{0.5, 2.5, 4.5, 5.22, 7.13},
                             {0.47, 0.33, 0.69, 0.88, 0.82}},
    };
}

inline maopt::AntennaLayout random_feasible_layout(
    const maopt::SystemConfig& cfg, std::uint64_t seed, std::uint64_t index) {
    maopt::SubstreamRng rng(seed, 0x7e57u, index);
    return maopt::random_layout(cfg.regions, rng);
}

inline double rel_err(double got, double want, double abs_floor = 1e-10) {
    return std::abs(got - want) / std::max(std::abs(want), abs_floor);
}

} // namespace testutil

#endif
