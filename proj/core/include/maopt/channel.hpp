// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_CHANNEL_HPP
#define MAOPT_CHANNEL_HPP

#include <armadillo>
#include <cstdint>

#include "maopt/system_config.hpp"

namespace maopt {

/// Departure direction a_m = [cos(theta_m) sin(phi_m), sin(theta_m)].
arma::vec::fixed<2> departure_direction(const SystemConfig& cfg, int user);

/// LoS steering row of one user: entry n is exp(j 2*pi t_n . a_m).
/// Every entry has unit modulus.
arma::cx_rowvec steering_row(const SystemConfig& cfg, const AntennaLayout& t,
                             int user);

/// N x M LoS channel matrix; column m is the conjugate transpose of the
/// m-th steering row.
arma::cx_mat los_matrix(const SystemConfig& cfg, const AntennaLayout& t);

/// One Rician fading realization: per-user channel rows plus the NLoS draws
/// they were built from, so a row is reconstructable as
/// sqrt(K b/(K+1)) * steering_row + sqrt(b/(K+1)) * nlos_row.
struct ChannelRealization {
    arma::cx_mat rows; // M x N, row m = h_m
    arma::cx_mat nlos; // M x N, row m = the CN(0,1) draw for user m
};

/// Draws the channel for every user. The NLoS entries for (user, trial) come
/// from one counter-based substream, so identical (seed, trial) pairs
/// reproduce identical realizations regardless of call order or worker count.
ChannelRealization draw_channel(const SystemConfig& cfg, const AntennaLayout& t,
                                std::uint64_t seed, std::uint64_t trial);

} // namespace maopt

#endif
