// SPDX-License-Identifier: Apache-2.0
#include "maopt/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "maopt/beamforming.hpp"
#include "maopt/channel.hpp"
#include "maopt/rng.hpp"

namespace maopt {

EmpiricalDistribution sample_sinr(const SystemConfig& cfg,
                                  const AntennaLayout& t, int m,
                                  int num_trials, std::uint64_t seed) {
    const arma::cx_mat los = los_matrix(cfg, t);
    const arma::cx_mat w = zf_beamformers(los);
    const arma::cx_rowvec los_row = steering_row(cfg, t, m);
    const double k = cfg.rician_k(m);
    const double b = cfg.large_scale_gain(m);
    const double los_amp = std::sqrt(k * b / (k + 1.0));
    const double nlos_amp = std::sqrt(b / (k + 1.0));
    const int n = cfg.num_antennas;
    const int users = cfg.num_users;

    EmpiricalDistribution dist;
    dist.seed = seed;
    dist.samples.resize(num_trials);

    // Trial i draws from substream (seed, m, i), so the partitioning across
    // workers cannot change the sampled values.
    auto run_range = [&](int lo, int hi) {
        arma::cx_rowvec h(n);
        for (int i = lo; i < hi; ++i) {
            SubstreamRng rng(seed, static_cast<std::uint64_t>(m),
                             static_cast<std::uint64_t>(i));
            for (int c = 0; c < n; ++c) {
                h(c) = los_amp * los_row(c) + nlos_amp * rng.next_cn01();
            }
            double interference = cfg.noise_power_mw;
            double signal = 0.0;
            for (int j = 0; j < users; ++j) {
                const std::complex<double> rx = arma::as_scalar(h * w.col(j));
                if (j == m) {
                    signal = cfg.tx_power_mw(j) * std::norm(rx);
                } else {
                    interference += cfg.tx_power_mw(j) * std::norm(rx);
                }
            }
            dist.samples[i] = signal / interference;
        }
    };

    const int min_chunk = 20000;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(
        std::min<long long>(hw, std::max<long long>(1, num_trials / min_chunk)));
    if (workers <= 1) {
        run_range(0, num_trials);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (num_trials + workers - 1) / workers;
        for (int wi = 0; wi < workers; ++wi) {
            const int lo = wi * chunk;
            const int hi = std::min(num_trials, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::sort(dist.samples.begin(), dist.samples.end());
    return dist;
}

double empirical_cdf(const EmpiricalDistribution& dist, double v) {
    const auto it =
        std::upper_bound(dist.samples.begin(), dist.samples.end(), v);
    return static_cast<double>(it - dist.samples.begin()) /
           static_cast<double>(dist.samples.size());
}

double empirical_quantile(const EmpiricalDistribution& dist, double q) {
    const std::size_t n = dist.samples.size();
    if (n == 1) return dist.samples[0];
    const double h = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(
        std::clamp(std::floor(h), 0.0, static_cast<double>(n - 2)));
    const double frac = h - static_cast<double>(lo);
    return dist.samples[lo] + frac * (dist.samples[lo + 1] - dist.samples[lo]);
}

double empirical_outage_rate(const EmpiricalDistribution& dist, double delta) {
    return std::log2(1.0 + empirical_quantile(dist, delta));
}

double cdf_distance(const EmpiricalDistribution& dist, const GammaFit& fit) {
    const std::size_t n = dist.samples.size();
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = gamma_cdf(fit, dist.samples[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        sup = std::max({sup, above, below});
    }
    return sup;
}

} // namespace maopt
