// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "maopt/beamforming.hpp"
#include "maopt/channel.hpp"
#include "maopt/gradient.hpp"
#include "maopt/monte_carlo.hpp"
#include "maopt/optimizer.hpp"
#include "maopt/rng.hpp"

using namespace maopt;

namespace {

SystemConfig bench_config(int num_antennas) {
    SystemConfig cfg;
    cfg.num_antennas = num_antennas;
    cfg.num_users = 4;
    cfg.tx_power_mw = arma::vec(4, arma::fill::value(10.0));
    cfg.large_scale_gain = arma::vec(4, arma::fill::value(1e-9));
    cfg.rician_k = arma::vec(4, arma::fill::value(15.0));
    cfg.noise_power_mw = 1e-9;
    cfg.elevation_aod = arma::vec{0.8676, 0.9879, 1.2720, 0.4021};
    cfg.azimuth_aod = arma::vec{0.2852, 1.1165, 1.0048, 1.2045};
    cfg.outage_target = 0.2;
    cfg.regions = tiled_regions(num_antennas, 1.0);
    return validate_config(cfg);
}

AntennaLayout bench_layout(const SystemConfig& cfg) {
    SubstreamRng rng(42, 0, 0);
    return random_layout(cfg.regions, rng);
}

void BM_gram_inverse(benchmark::State& state) {
    const SystemConfig cfg = bench_config(static_cast<int>(state.range(0)));
    const arma::cx_mat los = los_matrix(cfg, bench_layout(cfg));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram_inverse(los));
    }
}
BENCHMARK(BM_gram_inverse)->Arg(5)->Arg(8)->Arg(16);

void BM_sum_rate(benchmark::State& state) {
    const SystemConfig cfg = bench_config(static_cast<int>(state.range(0)));
    const AntennaLayout t = bench_layout(cfg);
    const InverseGammaLinearization lin = linearization_for(0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_sum_rate(cfg, t, lin).total);
    }
}
BENCHMARK(BM_sum_rate)->Arg(5)->Arg(8)->Arg(16);

void BM_objective_gradient(benchmark::State& state) {
    const SystemConfig cfg = bench_config(static_cast<int>(state.range(0)));
    const AntennaLayout t = bench_layout(cfg);
    const InverseGammaLinearization lin = linearization_for(0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(objective_gradient(cfg, t, lin));
    }
}
BENCHMARK(BM_objective_gradient)->Arg(5)->Arg(8)->Arg(16);

void BM_pga_run(benchmark::State& state) {
    const SystemConfig cfg = bench_config(5);
    const AntennaLayout t = bench_layout(cfg);
    const InverseGammaLinearization lin = linearization_for(0.2);
    PgaConfig pga;
    pga.max_iters = static_cast<int>(state.range(0));
    pga.conv_window = pga.max_iters; // time a fixed iteration budget
    for (auto _ : state) {
        benchmark::DoNotOptimize(pga_run(cfg, t, lin, pga).final_objective);
    }
}
BENCHMARK(BM_pga_run)->Arg(100);

void BM_sample_sinr(benchmark::State& state) {
    const SystemConfig cfg = bench_config(5);
    const AntennaLayout t = bench_layout(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sample_sinr(cfg, t, 0, static_cast<int>(state.range(0)), 1));
    }
}
BENCHMARK(BM_sample_sinr)->Arg(10000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
