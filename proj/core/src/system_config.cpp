// SPDX-License-Identifier: Apache-2.0
#include "maopt/system_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace maopt {

using nlohmann::json;

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

SystemConfig validate_config(SystemConfig cfg) {
    const int n = cfg.num_antennas;
    const int m = cfg.num_users;
    if (n <= 0 || m <= 0) {
        throw config_error(errc::invalid_field,
                           "antenna and user counts must be positive");
    }
    if (n < m) {
        throw config_error(errc::zf_infeasible,
                           "zero-forcing needs at least as many antennas as "
                           "users (N=" + std::to_string(n) +
                           ", M=" + std::to_string(m) + ")");
    }
    auto check_len = [&](const arma::vec& v, const char* name) {
        if (static_cast<int>(v.n_elem) != m) {
            throw config_error(errc::invalid_field,
                               std::string(name) + " must have one entry per user");
        }
    };
    check_len(cfg.tx_power_mw, "tx_power");
    check_len(cfg.large_scale_gain, "large_scale_gain");
    check_len(cfg.rician_k, "rician_k");
    check_len(cfg.elevation_aod, "elevation_aod");
    check_len(cfg.azimuth_aod, "azimuth_aod");

    if (cfg.tx_power_mw.min() <= 0.0 || cfg.large_scale_gain.min() <= 0.0 ||
        cfg.noise_power_mw <= 0.0 || cfg.wavelength <= 0.0) {
        throw config_error(errc::nonpositive_power,
                           "powers, gains, noise and wavelength must be "
                           "strictly positive");
    }
    if (cfg.rician_k.min() < 0.0) {
        throw config_error(errc::invalid_field, "rician_k must be >= 0");
    }
    constexpr double half_pi = M_PI / 2.0;
    for (int u = 0; u < m; ++u) {
        if (std::abs(cfg.elevation_aod(u)) > half_pi ||
            std::abs(cfg.azimuth_aod(u)) > half_pi) {
            throw config_error(errc::invalid_field,
                               "departure angles must lie in [-pi/2, pi/2]");
        }
    }
    if (!(cfg.outage_target > 0.0 && cfg.outage_target < 1.0)) {
        throw config_error(errc::invalid_outage_target,
                           "outage_target must lie strictly inside (0,1)");
    }
    if (static_cast<int>(cfg.regions.size()) != n) {
        throw config_error(errc::invalid_field,
                           "one moving region required per antenna");
    }
    for (const Region& r : cfg.regions) {
        if (!(r.x_min <= r.x_max && r.y_min <= r.y_max)) {
            throw config_error(errc::invalid_field,
                               "region bounds must satisfy min <= max");
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (cfg.regions[i].overlaps(cfg.regions[j])) {
                throw config_error(errc::overlapping_regions,
                                   "regions " + std::to_string(i + 1) + " and " +
                                   std::to_string(j + 1) + " overlap");
            }
        }
    }
    return cfg;
}

bool layout_feasible(const SystemConfig& cfg, const AntennaLayout& t,
                     double tol) {
    if (t.n_rows != 2 || static_cast<int>(t.n_cols) != cfg.num_antennas) {
        return false;
    }
    for (int n = 0; n < cfg.num_antennas; ++n) {
        if (!cfg.regions[n].contains(t(0, n), t(1, n), tol)) return false;
    }
    return true;
}

std::vector<Region> tiled_regions(int num_antennas, double side_length) {
    std::vector<Region> regions(num_antennas);
    for (int n = 0; n < num_antennas; ++n) {
        const double x0 = n * (side_length + 0.5);
        regions[n] = Region{x0, x0 + side_length, 0.0, side_length};
    }
    return regions;
}

namespace {

// A power node is either a bare number (mW) or {"p_dbm": v} / {"p_mw": v};
// scalar values broadcast over all users.
arma::vec parse_power(const json& node, int count, const char* name) {
    auto broadcast = [&](double v) { return arma::vec(count, arma::fill::value(v)); };
    auto as_vec = [&](const json& v) -> arma::vec {
        if (v.is_number()) return broadcast(v.get<double>());
        if (v.is_array()) {
            arma::vec out(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].get<double>();
            return out;
        }
        throw config_error(errc::invalid_field,
                           std::string(name) + ": expected number or array");
    };
    if (node.is_object()) {
        if (node.contains("p_dbm")) {
            arma::vec v = as_vec(node["p_dbm"]);
            v.transform([](double d) { return dbm_to_mw(d); });
            return v;
        }
        if (node.contains("p_mw")) return as_vec(node["p_mw"]);
        throw config_error(errc::invalid_field,
                           std::string(name) + ": expected p_dbm or p_mw key");
    }
    return as_vec(node); // bare values are linear mW
}

arma::vec parse_per_user(const json& node, int count, const char* name) {
    if (node.is_number()) {
        return arma::vec(count, arma::fill::value(node.get<double>()));
    }
    if (node.is_array()) {
        arma::vec out(node.size());
        for (std::size_t i = 0; i < node.size(); ++i) out(i) = node[i].get<double>();
        return out;
    }
    throw config_error(errc::invalid_field,
                       std::string(name) + ": expected number or array");
}

} // namespace

SystemConfig config_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(errc::invalid_field,
                           std::string("config is not valid JSON: ") + e.what());
    }
    SystemConfig cfg;
    try {
        cfg.num_antennas = doc.at("num_antennas").get<int>();
        cfg.num_users = doc.at("num_users").get<int>();
        cfg.wavelength = doc.value("wavelength", 1.0);
        const int m = cfg.num_users;
        cfg.tx_power_mw = parse_power(doc.at("tx_power"), m, "tx_power");
        cfg.large_scale_gain =
            parse_per_user(doc.at("large_scale_gain"), m, "large_scale_gain");
        cfg.rician_k = parse_per_user(doc.at("rician_k"), m, "rician_k");
        cfg.noise_power_mw =
            parse_power(doc.at("noise_power"), 1, "noise_power")(0);
        cfg.elevation_aod =
            parse_per_user(doc.at("elevation_aod"), m, "elevation_aod");
        cfg.azimuth_aod = parse_per_user(doc.at("azimuth_aod"), m, "azimuth_aod");
        cfg.outage_target = doc.at("outage_target").get<double>();

        // Regions come either explicitly (coordinates in the same unit as
        // the wavelength, normalized to wavelengths here) or as a side
        // length L generating the tiled arrangement directly in wavelengths.
        if (doc.contains("regions")) {
            const double lam = cfg.wavelength;
            for (const json& r : doc.at("regions")) {
                cfg.regions.push_back(Region{r.at("x_min").get<double>() / lam,
                                             r.at("x_max").get<double>() / lam,
                                             r.at("y_min").get<double>() / lam,
                                             r.at("y_max").get<double>() / lam});
            }
        } else if (doc.contains("region_side_length")) {
            cfg.regions = tiled_regions(cfg.num_antennas,
                                        doc.at("region_side_length").get<double>());
        } else {
            throw config_error(errc::invalid_field,
                               "config needs regions or region_side_length");
        }
    } catch (const json::exception& e) {
        throw config_error(errc::invalid_field,
                           std::string("config field error: ") + e.what());
    }
    return validate_config(cfg);
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error(errc::invalid_field,
                           "cannot open config file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const SystemConfig& cfg) {
    json doc;
    doc["num_antennas"] = cfg.num_antennas;
    doc["num_users"] = cfg.num_users;
    doc["wavelength"] = 1.0; // already normalized
    doc["tx_power"] = {{"p_mw", std::vector<double>(cfg.tx_power_mw.begin(),
                                                    cfg.tx_power_mw.end())}};
    doc["large_scale_gain"] = std::vector<double>(cfg.large_scale_gain.begin(),
                                                  cfg.large_scale_gain.end());
    doc["rician_k"] =
        std::vector<double>(cfg.rician_k.begin(), cfg.rician_k.end());
    doc["noise_power"] = {{"p_mw", cfg.noise_power_mw}};
    doc["elevation_aod"] = std::vector<double>(cfg.elevation_aod.begin(),
                                               cfg.elevation_aod.end());
    doc["azimuth_aod"] =
        std::vector<double>(cfg.azimuth_aod.begin(), cfg.azimuth_aod.end());
    doc["outage_target"] = cfg.outage_target;
    json regions = json::array();
    for (const Region& r : cfg.regions) {
        regions.push_back({{"x_min", r.x_min},
                           {"x_max", r.x_max},
                           {"y_min", r.y_min},
                           {"y_max", r.y_max}});
    }
    doc["regions"] = regions;
    return doc.dump(2);
}

} // namespace maopt
