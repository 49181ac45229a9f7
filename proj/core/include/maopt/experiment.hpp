// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_EXPERIMENT_HPP
#define MAOPT_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "maopt/optimizer.hpp"
#include "maopt/system_config.hpp"

namespace maopt {

enum class SweepAxis {
    side_length,     // L: rebuilds the tiled regions per point
    rician_k,        // K: sets every user's K-factor
    num_antennas,    // N: rebuilds regions with the scenario side length
    outage_target,   // delta
    first_user_power // P_1, grid values in dBm
};

SweepAxis sweep_axis_from_name(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);

/// One experiment: a scenario, a sweep axis with its grid, the schemes to
/// evaluate, and the random seeds to repeat each point with.
struct ExperimentSpec {
    SystemConfig scenario;
    double side_length = 1.0; // L of the scenario's tiled regions
    SweepAxis axis = SweepAxis::side_length;
    std::vector<double> grid;          // nonempty, ascending
    std::vector<std::string> schemes;  // subset of {MA,FPA,RAP,AS,RULA}
    std::vector<std::uint64_t> seeds;  // nonempty
    int trials = 100000;               // Monte Carlo trials (validate)
    int rap_realizations = 100;
    int rula_angles = 100;
    PgaConfig pga;
};

ExperimentSpec experiment_from_json_text(const std::string& text);
ExperimentSpec load_experiment(const std::string& path);
std::string experiment_to_json_text(const ExperimentSpec& spec);

/// The scenario with the sweep axis applied at one grid value.
SystemConfig apply_sweep_value(const ExperimentSpec& spec, double value);

struct SweepRow {
    std::string scheme;
    double sweep_value = 0.0;
    std::uint64_t seed = 0;
    double sum_rate = 0.0;
    std::vector<double> per_user;
    int iterations = 0;      // PGA iterations (MA only)
    double wall_time_s = 0.0;
    std::string error;       // errc name when the point failed
};

struct SweepOutcome {
    std::vector<SweepRow> rows; // sorted by (sweep_value, scheme, seed)
    int failures = 0;
};

/// Evaluates every (grid value, scheme, seed) combination on a worker pool.
/// Per-point failures become error rows; the sweep continues.
SweepOutcome run_sweep(const ExperimentSpec& spec);

/// Deterministic CSV: header row, '.' decimal separator, 17 significant
/// digits. Wall times go to a separate file so the results file is
/// byte-identical across runs with the same config and seeds.
void write_results_csv(const std::string& path, const SweepOutcome& outcome,
                       int num_users);
void write_timings_csv(const std::string& path, const SweepOutcome& outcome);

/// Run manifest: embeds the full experiment JSON (so the spec round-trips),
/// an FNV-1a hash of it, the seeds, the library version, and any quality
/// caveats (e.g. a Monte Carlo trial count too small for the stated
/// tolerances).
void write_manifest(const std::string& path, const ExperimentSpec& spec,
                    const std::vector<std::string>& caveats = {});
ExperimentSpec manifest_to_experiment(const std::string& path);

std::string format_double(double v); // 17 significant digits, shortest form
std::uint64_t fnv1a64(const std::string& text);

inline constexpr const char* kLibraryVersion = "0.1.0";

} // namespace maopt

#endif
