// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_SYSTEM_CONFIG_HPP
#define MAOPT_SYSTEM_CONFIG_HPP

#include <armadillo>
#include <string>
#include <vector>

#include "maopt/errors.hpp"

namespace maopt {

/// Axis-aligned moving region for one antenna, in wavelength units.
struct Region {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool contains(double x, double y, double tol = 0.0) const {
        return x >= x_min - tol && x <= x_max + tol && y >= y_min - tol &&
               y <= y_max + tol;
    }
    bool overlaps(const Region& other) const {
        return x_min < other.x_max && other.x_min < x_max &&
               y_min < other.y_max && other.y_min < y_max;
    }
};

/// Antenna positions, one column [x_n, y_n] per antenna, in wavelength units.
using AntennaLayout = arma::mat;

/// All scenario constants. Positions and region bounds are normalized to
/// wavelength units at ingestion (the channel phase depends only on t/lambda),
/// and dBm powers are converted to linear milliwatts, so every downstream
/// computation is unit-free.
struct SystemConfig {
    int num_antennas = 0;        // N
    int num_users = 0;           // M
    double wavelength = 1.0;     // carrier wavelength of the ingested scenario
    arma::vec tx_power_mw;       // P_m, linear mW, one per user
    arma::vec large_scale_gain;  // beta_m
    arma::vec rician_k;          // K_m >= 0
    double noise_power_mw = 0.0; // sigma^2, linear mW
    arma::vec elevation_aod;     // theta_m, radians in [-pi/2, pi/2]
    arma::vec azimuth_aod;       // phi_m, radians in [-pi/2, pi/2]
    double outage_target = 0.0;  // delta in (0,1)
    std::vector<Region> regions; // A_n, one per antenna
};

/// Checks every config invariant and returns the config unchanged.
/// Throws config_error with a distinct code per violated invariant.
SystemConfig validate_config(SystemConfig cfg);

bool layout_feasible(const SystemConfig& cfg, const AntennaLayout& t,
                     double tol = 0.0);

/// The tiled region arrangement used throughout the experiments:
/// x_n in [(n-1)(L+0.5), (n-1)(L+0.5)+L], y_n in [0, L], all in wavelengths,
/// with a fixed 0.5-wavelength gap between adjacent regions.
std::vector<Region> tiled_regions(int num_antennas, double side_length);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

SystemConfig config_from_json_text(const std::string& text);
SystemConfig load_config(const std::string& path);
std::string config_to_json_text(const SystemConfig& cfg);

} // namespace maopt

#endif
