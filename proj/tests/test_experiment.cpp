// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "maopt/experiment.hpp"
#include "maopt/schemes.hpp"
#include "test_helpers.hpp"

using namespace maopt;
namespace fs = std::filesystem;

namespace {

ExperimentSpec small_spec() {
    ExperimentSpec spec;
    spec.scenario = testutil::scenario_config();
    spec.side_length = 1.0;
    spec.axis = SweepAxis::side_length;
    spec.grid = {0.5, 1.0};
    spec.schemes = {"FPA", "RULA"};
    spec.seeds = {1};
    spec.rula_angles = 16;
    return spec;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("maopt_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST_CASE("experiment JSON round-trip") {
    ExperimentSpec spec = small_spec();
    spec.axis = SweepAxis::outage_target;
    spec.grid = {0.1, 0.15, 0.2};
    spec.seeds = {3, 9};
    spec.pga.step_size = 0.02;
    const ExperimentSpec back =
        experiment_from_json_text(experiment_to_json_text(spec));
    CHECK(back.axis == spec.axis);
    CHECK(back.grid == spec.grid);
    CHECK(back.seeds == spec.seeds);
    CHECK(back.schemes == spec.schemes);
    CHECK(back.pga.step_size == spec.pga.step_size);
    CHECK(back.scenario.num_antennas == spec.scenario.num_antennas);
}

TEST_CASE("experiment validation") {
    ExperimentSpec spec = small_spec();
    spec.grid = {};
    CHECK_THROWS_AS((void)experiment_from_json_text(experiment_to_json_text(spec)),
                    config_error);
    spec = small_spec();
    spec.grid = {2.0, 1.0};
    CHECK_THROWS_AS((void)run_sweep(spec), config_error);
    spec = small_spec();
    spec.schemes = {"BOGUS"};
    CHECK_THROWS_AS((void)run_sweep(spec), config_error);
}

TEST_CASE("sweep axes remap the scenario") {
    const ExperimentSpec spec = small_spec();

    SUBCASE("side length rebuilds the tiled regions") {
        const SystemConfig cfg = apply_sweep_value(spec, 2.0);
        CHECK(cfg.regions[0].x_max == doctest::Approx(2.0));
        CHECK(cfg.regions[1].x_min == doctest::Approx(2.5));
    }

    SUBCASE("K fills every user") {
        ExperimentSpec s = spec;
        s.axis = SweepAxis::rician_k;
        const SystemConfig cfg = apply_sweep_value(s, 7.0);
        CHECK(cfg.rician_k.min() == 7.0);
        CHECK(cfg.rician_k.max() == 7.0);
    }

    SUBCASE("N resizes the array and regions") {
        ExperimentSpec s = spec;
        s.axis = SweepAxis::num_antennas;
        const SystemConfig cfg = apply_sweep_value(s, 7.0);
        CHECK(cfg.num_antennas == 7);
        CHECK(cfg.regions.size() == 7);
    }

    SUBCASE("delta replaces the outage target") {
        ExperimentSpec s = spec;
        s.axis = SweepAxis::outage_target;
        CHECK(apply_sweep_value(s, 0.13).outage_target == 0.13);
    }

    SUBCASE("P1 grid values are dBm") {
        ExperimentSpec s = spec;
        s.axis = SweepAxis::first_user_power;
        const SystemConfig cfg = apply_sweep_value(s, 20.0);
        CHECK(cfg.tx_power_mw(0) == doctest::Approx(100.0));
        CHECK(cfg.tx_power_mw(1) == doctest::Approx(10.0));
    }
}

TEST_CASE("sweep execution") {
    SUBCASE("rows are complete and sorted") {
        const ExperimentSpec spec = small_spec();
        const SweepOutcome out = run_sweep(spec);
        CHECK(out.rows.size() == spec.grid.size() * spec.schemes.size());
        CHECK(out.failures == 0);
        for (std::size_t i = 1; i < out.rows.size(); ++i) {
            const SweepRow& a = out.rows[i - 1];
            const SweepRow& b = out.rows[i];
            CHECK((a.sweep_value < b.sweep_value ||
                   (a.sweep_value == b.sweep_value && a.scheme <= b.scheme)));
        }
        for (const SweepRow& row : out.rows) {
            CHECK(row.per_user.size() == 4);
            CHECK(row.sum_rate > 0.0);
        }
    }

    SUBCASE("per-point failures become error rows and the sweep continues") {
        ExperimentSpec spec = small_spec();
        spec.scenario = testutil::scenario_config(13, 1.0);
        spec.schemes = {"AS", "FPA"};
        spec.grid = {1.0};
        const SweepOutcome out = run_sweep(spec);
        CHECK(out.rows.size() == 2);
        CHECK(out.failures == 1);
        CHECK(out.rows[0].scheme == "AS");
        CHECK(out.rows[0].error == "combinatorial_limit");
        CHECK(out.rows[1].scheme == "FPA");
        CHECK(out.rows[1].error.empty());
    }

    SUBCASE("outage-target sweeps are nondecreasing per scheme") {
        ExperimentSpec spec = small_spec();
        spec.axis = SweepAxis::outage_target;
        spec.grid = {0.10, 0.12, 0.14, 0.16, 0.18, 0.20};
        spec.schemes = {"FPA", "RULA"};
        spec.rula_angles = 8;
        const SweepOutcome out = run_sweep(spec);
        double prev_fpa = 0.0, prev_rula = 0.0;
        for (const SweepRow& row : out.rows) {
            double& prev = (row.scheme == "FPA") ? prev_fpa : prev_rula;
            CHECK(row.sum_rate >= prev - 1e-12);
            prev = row.sum_rate;
        }
    }

    SUBCASE("a single-point MA sweep equals the optimizer output") {
        ExperimentSpec spec = small_spec();
        spec.schemes = {"MA"};
        spec.grid = {1.0};
        spec.seeds = {5};
        spec.pga.num_starts = 2;
        spec.pga.max_iters = 400;
        const SweepOutcome out = run_sweep(spec);
        REQUIRE(out.rows.size() == 1);
        const InverseGammaLinearization lin = linearization_for(0.2);
        const MultiStartResult direct =
            multi_start(testutil::scenario_config(), lin, spec.pga, 5);
        CHECK(out.rows[0].sum_rate ==
              doctest::Approx(direct.best.final_objective).epsilon(1e-12));
    }

    SUBCASE("optimized rates plateau in the region size") {
        ExperimentSpec spec = small_spec();
        spec.schemes = {"MA"};
        spec.grid = {1.6, 2.25};
        spec.seeds = {7};
        spec.pga.num_starts = 3;
        const SweepOutcome out = run_sweep(spec);
        REQUIRE(out.rows.size() == 2);
        CHECK(testutil::rel_err(out.rows[0].sum_rate, out.rows[1].sum_rate) <
              0.02);
    }
}

TEST_CASE("CSV and manifest outputs") {
    const ExperimentSpec spec = small_spec();
    const SweepOutcome out = run_sweep(spec);

    SUBCASE("results CSVs are byte-identical across runs") {
        TempDir dir;
        const SweepOutcome again = run_sweep(spec);
        write_results_csv((dir.path / "a.csv").string(), out, 4);
        write_results_csv((dir.path / "b.csv").string(), again, 4);
        const std::string a = slurp(dir.path / "a.csv");
        CHECK(!a.empty());
        CHECK(a == slurp(dir.path / "b.csv"));
        CHECK(a.rfind("scheme,sweep_value,seed,sum_rate,rate_u1", 0) == 0);
    }

    SUBCASE("timed rows land in the sidecar file") {
        TempDir dir;
        write_timings_csv((dir.path / "t.csv").string(), out);
        const std::string t = slurp(dir.path / "t.csv");
        CHECK(t.rfind("scheme,sweep_value,seed,wall_time_s", 0) == 0);
        CHECK(std::count(t.begin(), t.end(), '\n') ==
              static_cast<long>(out.rows.size()) + 1);
    }

    SUBCASE("manifest reconstructs the exact experiment") {
        TempDir dir;
        const std::string path = (dir.path / "manifest.json").string();
        write_manifest(path, spec, {"trials below validation budget"});
        const ExperimentSpec back = manifest_to_experiment(path);
        CHECK(experiment_to_json_text(back) == experiment_to_json_text(spec));
        const std::string body = slurp(path);
        CHECK(body.find("config_hash_fnv1a64") != std::string::npos);
        CHECK(body.find("trials below validation budget") != std::string::npos);
    }
}

TEST_CASE("double formatting is full precision") {
    CHECK(format_double(1.0) == "1");
    const double v = 0.1234567890123456789;
    CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(15.126823456789012345) ==
          format_double(15.126823456789012345));
}
