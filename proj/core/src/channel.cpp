// SPDX-License-Identifier: Apache-2.0
#include "maopt/channel.hpp"

#include <cmath>
#include <complex>

#include "maopt/rng.hpp"

namespace maopt {

arma::vec::fixed<2> departure_direction(const SystemConfig& cfg, int user) {
    arma::vec::fixed<2> a;
    a(0) = std::cos(cfg.elevation_aod(user)) * std::sin(cfg.azimuth_aod(user));
    a(1) = std::sin(cfg.elevation_aod(user));
    return a;
}

arma::cx_rowvec steering_row(const SystemConfig& cfg, const AntennaLayout& t,
                             int user) {
    const arma::vec::fixed<2> a = departure_direction(cfg, user);
    arma::cx_rowvec row(t.n_cols);
    for (arma::uword n = 0; n < t.n_cols; ++n) {
        const double phase = 2.0 * M_PI * (t(0, n) * a(0) + t(1, n) * a(1));
        row(n) = std::polar(1.0, phase);
    }
    return row;
}

arma::cx_mat los_matrix(const SystemConfig& cfg, const AntennaLayout& t) {
    arma::cx_mat los(t.n_cols, cfg.num_users);
    for (int m = 0; m < cfg.num_users; ++m) {
        los.col(m) = steering_row(cfg, t, m).t(); // conjugate transpose
    }
    return los;
}

ChannelRealization draw_channel(const SystemConfig& cfg, const AntennaLayout& t,
                                std::uint64_t seed, std::uint64_t trial) {
    const int n = cfg.num_antennas;
    const int m = cfg.num_users;
    ChannelRealization out;
    out.rows.set_size(m, n);
    out.nlos.set_size(m, n);
    for (int u = 0; u < m; ++u) {
        SubstreamRng rng(seed, static_cast<std::uint64_t>(u), trial);
        const double k = cfg.rician_k(u);
        const double b = cfg.large_scale_gain(u);
        const double los_amp = std::sqrt(k * b / (k + 1.0));
        const double nlos_amp = std::sqrt(b / (k + 1.0));
        const arma::cx_rowvec los_row = steering_row(cfg, t, u);
        for (int i = 0; i < n; ++i) {
            const std::complex<double> g = rng.next_cn01();
            out.nlos(u, i) = g;
            out.rows(u, i) = los_amp * los_row(i) + nlos_amp * g;
        }
    }
    return out;
}

} // namespace maopt
