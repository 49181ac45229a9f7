// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "maopt/beamforming.hpp"
#include "maopt/channel.hpp"
#include "maopt/monte_carlo.hpp"
#include "test_helpers.hpp"

using namespace maopt;

TEST_CASE("SINR sampling") {
    const SystemConfig cfg = testutil::cdf_scenario_config();
    const AntennaLayout t = testutil::cdf_scenario_layout();

    SUBCASE("vanishing NLoS gives a deterministic SINR") {
        SystemConfig det = cfg;
        det.rician_k.fill(1e12);
        const EmpiricalDistribution dist = sample_sinr(det, t, 0, 10000, 5);
        const double mid = dist.samples[dist.samples.size() / 2];
        CHECK((dist.samples.back() - dist.samples.front()) / mid < 1e-3);
        // value: P f1 * (K b/(K+1) + b/(K+1)) / sigma^2 -> P b f1 / sigma^2
        const arma::cx_mat gi = gram_inverse(los_matrix(det, t));
        const double expect = det.tx_power_mw(0) * 1e-9 * f1(gi, 0) /
                              det.noise_power_mw;
        CHECK(testutil::rel_err(mid, expect) < 1e-3);
    }

    SUBCASE("fixed seeds reproduce the sample set") {
        const EmpiricalDistribution a = sample_sinr(cfg, t, 0, 100000, 6);
        const EmpiricalDistribution b = sample_sinr(cfg, t, 0, 100000, 6);
        CHECK(a.samples == b.samples);
    }

    SUBCASE("samples match per-trial channel draws") {
        const int trials = 50;
        const EmpiricalDistribution dist = sample_sinr(cfg, t, 1, trials, 7);
        const arma::cx_mat w = zf_beamformers(los_matrix(cfg, t));
        std::vector<double> manual(trials);
        for (int i = 0; i < trials; ++i) {
            const ChannelRealization ch = draw_channel(cfg, t, 7, i);
            const arma::cx_rowvec h = ch.rows.row(1);
            double interference = cfg.noise_power_mw;
            double signal = 0.0;
            for (int j = 0; j < cfg.num_users; ++j) {
                const double p =
                    cfg.tx_power_mw(j) * std::norm(arma::as_scalar(h * w.col(j)));
                if (j == 1) {
                    signal = p;
                } else {
                    interference += p;
                }
            }
            manual[i] = signal / interference;
        }
        std::sort(manual.begin(), manual.end());
        for (int i = 0; i < trials; ++i) {
            CHECK(dist.samples[i] == doctest::Approx(manual[i]).epsilon(1e-12));
        }
    }

    SUBCASE("sample mean tracks the analytic SINR mean") {
        // ~3.8% truncation bias of the second-order mean at this point,
        // see the statistics tests; 5% is the measured envelope.
        const EmpiricalDistribution dist = sample_sinr(cfg, t, 0, 100000, 8);
        const MomentSet ms =
            user_moments(gram_inverse(los_matrix(cfg, t)), cfg, 0);
        double sum = 0.0;
        for (double s : dist.samples) sum += s;
        CHECK(testutil::rel_err(ms.ez, sum / dist.samples.size()) < 0.05);
    }
}

TEST_CASE("empirical distribution estimators") {
    SUBCASE("single sample quantile") {
        EmpiricalDistribution one;
        one.samples = {3.5};
        for (double q : {0.0, 0.2, 0.5, 0.99}) {
            CHECK(empirical_quantile(one, q) == 3.5);
        }
    }

    SUBCASE("interpolated median of a uniform grid") {
        EmpiricalDistribution grid;
        for (int i = 1; i <= 100; ++i) grid.samples.push_back(i);
        CHECK(empirical_quantile(grid, 0.5) == doctest::Approx(50.5));
        CHECK(empirical_quantile(grid, 0.0) == 1.0);
        CHECK(empirical_quantile(grid, 1.0) == 100.0);
    }

    SUBCASE("CDF and quantile round-trip within one count") {
        const SystemConfig cfg = testutil::cdf_scenario_config();
        const EmpiricalDistribution dist =
            sample_sinr(cfg, testutil::cdf_scenario_layout(), 0, 5000, 9);
        const double inv_n = 1.0 / dist.samples.size();
        for (double q = 0.05; q < 1.0; q += 0.05) {
            const double v = empirical_quantile(dist, q);
            CHECK(std::abs(empirical_cdf(dist, v) - q) <= inv_n + 1e-12);
        }
    }

    SUBCASE("outage rate estimator") {
        EmpiricalDistribution flat;
        flat.samples.assign(100, 7.0);
        CHECK(empirical_outage_rate(flat, 0.2) ==
              doctest::Approx(std::log2(8.0)).epsilon(1e-15));

        const SystemConfig cfg = testutil::cdf_scenario_config();
        const EmpiricalDistribution dist =
            sample_sinr(cfg, testutil::cdf_scenario_layout(), 0, 20000, 10);
        double prev = 0.0;
        for (double d = 0.05; d <= 0.95; d += 0.05) {
            const double r = empirical_outage_rate(dist, d);
            CHECK(r >= prev);
            prev = r;
        }
    }
}

TEST_CASE("CDF sup-norm distance") {
    SUBCASE("a matched Gamma population scores near zero") {
        SubstreamRng rng(11, 0, 0);
        std::gamma_distribution<double> gamma(2.5, 1.3);
        EmpiricalDistribution dist;
        dist.samples.resize(1000000);
        double sum = 0.0, sum2 = 0.0;
        for (double& s : dist.samples) {
            s = gamma(rng);
            sum += s;
            sum2 += s * s;
        }
        std::sort(dist.samples.begin(), dist.samples.end());
        const double mean = sum / dist.samples.size();
        const double var = sum2 / dist.samples.size() - mean * mean;
        const double d = cdf_distance(dist, gamma_fit(mean, var));
        CHECK(d <= 0.01);
        CHECK(d >= 0.0);
    }

    SUBCASE("second-order fit dominates the first-order fit") {
        const SystemConfig cfg = testutil::cdf_scenario_config();
        const AntennaLayout t = testutil::cdf_scenario_layout();
        const MomentSet ms =
            user_moments(gram_inverse(los_matrix(cfg, t)), cfg, 0);
        const EmpiricalDistribution dist = sample_sinr(cfg, t, 0, 100000, 12);
        const double d2 = cdf_distance(dist, gamma_fit(ms.ez, ms.vz));
        const double d1 = cdf_distance(
            dist,
            gamma_fit_first_order(cfg.tx_power_mw(0) * ms.ex / ms.ey, ms.vz));
        CHECK(d2 < d1);
        CHECK(d2 <= 1.0);
        CHECK(d2 >= 0.0);
    }
}
