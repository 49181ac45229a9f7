// SPDX-License-Identifier: Apache-2.0
#include "maopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "maopt/errors.hpp"
#include "maopt/schemes.hpp"

namespace maopt {

using nlohmann::json;

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "L") return SweepAxis::side_length;
    if (name == "K") return SweepAxis::rician_k;
    if (name == "N") return SweepAxis::num_antennas;
    if (name == "delta") return SweepAxis::outage_target;
    if (name == "P1") return SweepAxis::first_user_power;
    throw config_error(errc::invalid_field,
                       "unknown sweep axis '" + name +
                       "' (expected L, K, N, delta or P1)");
}

std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::side_length: return "L";
        case SweepAxis::rician_k: return "K";
        case SweepAxis::num_antennas: return "N";
        case SweepAxis::outage_target: return "delta";
        case SweepAxis::first_user_power: return "P1";
    }
    return "?";
}

namespace {

const std::vector<std::string> kKnownSchemes = {"MA", "FPA", "RAP", "AS",
                                                "RULA"};

void validate_spec(const ExperimentSpec& spec) {
    if (spec.grid.empty()) {
        throw config_error(errc::invalid_field, "sweep grid must be nonempty");
    }
    if (!std::is_sorted(spec.grid.begin(), spec.grid.end())) {
        throw config_error(errc::invalid_field, "sweep grid must be ascending");
    }
    if (spec.schemes.empty()) {
        throw config_error(errc::invalid_field, "schemes must be nonempty");
    }
    for (const std::string& s : spec.schemes) {
        if (std::find(kKnownSchemes.begin(), kKnownSchemes.end(), s) ==
            kKnownSchemes.end()) {
            throw config_error(errc::invalid_field, "unknown scheme '" + s + "'");
        }
    }
    if (spec.seeds.empty()) {
        throw config_error(errc::invalid_field, "seeds must be nonempty");
    }
}

PgaConfig pga_from_json(const json& node) {
    PgaConfig pga;
    pga.step_size = node.value("step_size", pga.step_size);
    pga.max_iters = node.value("max_iters", pga.max_iters);
    pga.conv_window = node.value("conv_window", pga.conv_window);
    pga.conv_tol = node.value("conv_tol", pga.conv_tol);
    pga.num_starts = node.value("num_starts", pga.num_starts);
    pga.line_search = node.value("line_search", pga.line_search);
    pga.armijo_c = node.value("armijo_c", pga.armijo_c);
    pga.backtrack = node.value("backtrack", pga.backtrack);
    return pga;
}

json pga_to_json(const PgaConfig& pga) {
    return json{{"step_size", pga.step_size},   {"max_iters", pga.max_iters},
                {"conv_window", pga.conv_window}, {"conv_tol", pga.conv_tol},
                {"num_starts", pga.num_starts},   {"line_search", pga.line_search},
                {"armijo_c", pga.armijo_c},       {"backtrack", pga.backtrack}};
}

} // namespace

ExperimentSpec experiment_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(errc::invalid_field,
                           std::string("experiment is not valid JSON: ") +
                           e.what());
    }
    ExperimentSpec spec;
    try {
        json scenario = doc.at("scenario");
        spec.side_length = doc.value("side_length", 1.0);
        if (!scenario.contains("regions") &&
            !scenario.contains("region_side_length")) {
            scenario["region_side_length"] = spec.side_length;
        } else if (scenario.contains("region_side_length") &&
                   !doc.contains("side_length")) {
            spec.side_length = scenario["region_side_length"].get<double>();
        }
        spec.scenario = config_from_json_text(scenario.dump());

        const json& sweep = doc.at("sweep");
        spec.axis = sweep_axis_from_name(sweep.at("axis").get<std::string>());
        spec.grid = sweep.at("grid").get<std::vector<double>>();
        spec.schemes = doc.value("schemes", std::vector<std::string>{"MA"});
        spec.seeds =
            doc.value("seeds", std::vector<std::uint64_t>{1});
        spec.trials = doc.value("trials", spec.trials);
        spec.rap_realizations =
            doc.value("rap_realizations", spec.rap_realizations);
        spec.rula_angles = doc.value("rula_angles", spec.rula_angles);
        if (doc.contains("pga")) spec.pga = pga_from_json(doc["pga"]);
    } catch (const json::exception& e) {
        throw config_error(errc::invalid_field,
                           std::string("experiment field error: ") + e.what());
    }
    validate_spec(spec);
    return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error(errc::invalid_field,
                           "cannot open experiment file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return experiment_from_json_text(buf.str());
}

std::string experiment_to_json_text(const ExperimentSpec& spec) {
    json doc;
    doc["scenario"] = json::parse(config_to_json_text(spec.scenario));
    doc["side_length"] = spec.side_length;
    doc["sweep"] = {{"axis", sweep_axis_name(spec.axis)}, {"grid", spec.grid}};
    doc["schemes"] = spec.schemes;
    doc["seeds"] = spec.seeds;
    doc["trials"] = spec.trials;
    doc["rap_realizations"] = spec.rap_realizations;
    doc["rula_angles"] = spec.rula_angles;
    doc["pga"] = pga_to_json(spec.pga);
    return doc.dump(2);
}

SystemConfig apply_sweep_value(const ExperimentSpec& spec, double value) {
    SystemConfig cfg = spec.scenario;
    switch (spec.axis) {
        case SweepAxis::side_length:
            cfg.regions = tiled_regions(cfg.num_antennas, value);
            break;
        case SweepAxis::rician_k:
            cfg.rician_k.fill(value);
            break;
        case SweepAxis::num_antennas: {
            cfg.num_antennas = static_cast<int>(std::lround(value));
            cfg.regions = tiled_regions(cfg.num_antennas, spec.side_length);
            break;
        }
        case SweepAxis::outage_target:
            cfg.outage_target = value;
            break;
        case SweepAxis::first_user_power:
            cfg.tx_power_mw(0) = dbm_to_mw(value); // grid values are dBm
            break;
    }
    return validate_config(cfg);
}

namespace {

SweepRow evaluate_point(const ExperimentSpec& spec, double value,
                        const std::string& scheme, std::uint64_t seed) {
    SweepRow row;
    row.scheme = scheme;
    row.sweep_value = value;
    row.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const SystemConfig cfg = apply_sweep_value(spec, value);
        const InverseGammaLinearization lin =
            linearization_for(cfg.outage_target);
        AntennaLayout layout;
        if (scheme == "MA") {
            const MultiStartResult ms =
                multi_start(cfg, lin, spec.pga, seed);
            layout = ms.best.final_layout;
            row.iterations = ms.best.iterations;
        } else if (scheme == "FPA") {
            layout = fpa_layout(cfg.num_antennas);
        } else if (scheme == "RAP") {
            layout = rap_best(cfg, lin, spec.rap_realizations, seed).layout;
        } else if (scheme == "AS") {
            const SelectionResult sel = as_best(cfg, lin);
            const AntennaLayout ula = fpa_layout(2 * cfg.num_antennas);
            layout.set_size(2, cfg.num_antennas);
            for (int i = 0; i < cfg.num_antennas; ++i) {
                layout.col(i) = ula.col(sel.selected[i]);
            }
        } else { // RULA
            layout = rula_layout(cfg.num_antennas,
                                 rula_best(cfg, lin, spec.rula_angles).angle);
        }
        const SumRate rate = evaluate_sum_rate(cfg, layout, lin);
        row.sum_rate = rate.total;
        row.per_user.assign(rate.per_user.begin(), rate.per_user.end());
    } catch (const config_error& e) {
        row.error = errc_name(e.code());
    } catch (const numerical_error& e) {
        row.error = errc_name(e.code());
    }
    row.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return row;
}

} // namespace

SweepOutcome run_sweep(const ExperimentSpec& spec) {
    validate_spec(spec);
    struct Task {
        double value;
        std::string scheme;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (double value : spec.grid) {
        for (const std::string& scheme : spec.schemes) {
            for (std::uint64_t seed : spec.seeds) {
                tasks.push_back(Task{value, scheme, seed});
            }
        }
    }

    SweepOutcome outcome;
    outcome.rows.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            outcome.rows[i] =
                evaluate_point(spec, tasks[i].value, tasks[i].scheme,
                               tasks[i].seed);
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, tasks.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(outcome.rows.begin(), outcome.rows.end(),
              [](const SweepRow& a, const SweepRow& b) {
                  if (a.sweep_value != b.sweep_value)
                      return a.sweep_value < b.sweep_value;
                  if (a.scheme != b.scheme) return a.scheme < b.scheme;
                  return a.seed < b.seed;
              });
    for (const SweepRow& row : outcome.rows) {
        if (!row.error.empty()) ++outcome.failures;
    }
    return outcome;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

void write_results_csv(const std::string& path, const SweepOutcome& outcome,
                       int num_users) {
    std::ofstream out(path, std::ios::binary);
    out << "scheme,sweep_value,seed,sum_rate";
    for (int m = 1; m <= num_users; ++m) out << ",rate_u" << m;
    out << ",iterations,error\n";
    for (const SweepRow& row : outcome.rows) {
        std::vector<std::string> fields;
        fields.push_back(row.scheme);
        fields.push_back(format_double(row.sweep_value));
        fields.push_back(std::to_string(row.seed));
        if (row.error.empty()) {
            fields.push_back(format_double(row.sum_rate));
            for (int m = 0; m < num_users; ++m) {
                fields.push_back(m < static_cast<int>(row.per_user.size())
                                     ? format_double(row.per_user[m])
                                     : std::string());
            }
        } else {
            for (int m = 0; m <= num_users; ++m) fields.emplace_back();
        }
        fields.push_back(std::to_string(row.iterations));
        fields.push_back(row.error);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out << (i ? "," : "") << fields[i];
        }
        out << '\n';
    }
}

void write_timings_csv(const std::string& path, const SweepOutcome& outcome) {
    std::ofstream out(path, std::ios::binary);
    out << "scheme,sweep_value,seed,wall_time_s\n";
    for (const SweepRow& row : outcome.rows) {
        out << row.scheme << ',' << format_double(row.sweep_value) << ','
            << row.seed << ',' << format_double(row.wall_time_s) << '\n';
    }
}

void write_manifest(const std::string& path, const ExperimentSpec& spec,
                    const std::vector<std::string>& caveats) {
    const std::string spec_text = experiment_to_json_text(spec);
    json doc;
    doc["experiment"] = json::parse(spec_text);
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(spec_text)));
    doc["config_hash_fnv1a64"] = hash;
    doc["library_version"] = kLibraryVersion;
    doc["caveats"] = caveats;
    std::ofstream out(path, std::ios::binary);
    out << doc.dump(2) << '\n';
}

ExperimentSpec manifest_to_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error(errc::invalid_field,
                           "cannot open manifest: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::exception& e) {
        throw config_error(errc::invalid_field,
                           std::string("manifest is not valid JSON: ") +
                           e.what());
    }
    if (!doc.contains("experiment")) {
        throw config_error(errc::invalid_field,
                           "manifest has no experiment section");
    }
    return experiment_from_json_text(doc["experiment"].dump());
}

} // namespace maopt
