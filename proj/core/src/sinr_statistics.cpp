// SPDX-License-Identifier: Apache-2.0
#include "maopt/sinr_statistics.hpp"

#include <string>

#include "maopt/beamforming.hpp"
#include "maopt/errors.hpp"
#include "maopt/special_functions.hpp"

namespace maopt {

RatioMoments ratio_moments(double ex, double vx, double ey, double vy,
                           double cov) {
    const double ey2 = ey * ey;
    const double ey3 = ey2 * ey;
    RatioMoments out;
    out.mean = ex / ey + ex * vy / ey3 - cov / ey2;
    out.variance = vx / ey2 + ex * ex * vy / (ey2 * ey2) - 2.0 * ex * cov / ey3;
    const bool all_deterministic = vx == 0.0 && vy == 0.0 && cov == 0.0;
    if (out.variance < 0.0 || (out.variance == 0.0 && !all_deterministic)) {
        throw numerical_error(
            errc::nonpositive_variance,
            "ratio variance came out nonpositive; the Taylor expansion "
            "regime does not hold for these inputs");
    }
    return out;
}

std::pair<double, double> moments_x(double f1_value, const SystemConfig& cfg,
                                    int m) {
    const double k = cfg.rician_k(m);
    const double b = cfg.large_scale_gain(m);
    const double a = b / (k + 1.0);
    const double ex = k * a * f1_value + a;
    const double vx = a * a * (1.0 + 2.0 * k * f1_value);
    return {ex, vx};
}

std::pair<double, double> moments_y(double f2_value, const SystemConfig& cfg,
                                    int m) {
    const double k = cfg.rician_k(m);
    const double b = cfg.large_scale_gain(m);
    const double a = b / (k + 1.0);
    double interference = 0.0;
    for (int j = 0; j < cfg.num_users; ++j) {
        if (j != m) interference += cfg.tx_power_mw(j);
    }
    const double ey = a * interference + cfg.noise_power_mw;
    const double vy = a * a * f2_value;
    return {ey, vy};
}

double covariance_xy(const arma::vec& f3_values, const SystemConfig& cfg,
                     int m) {
    const double k = cfg.rician_k(m);
    const double b = cfg.large_scale_gain(m);
    const double a = b / (k + 1.0);
    double cov = 0.0;
    for (int j = 0; j < cfg.num_users; ++j) {
        if (j != m) cov += cfg.tx_power_mw(j) * a * a * f3_values(j);
    }
    return cov;
}

std::pair<double, double> z_moments(double ex, double vx, double ey, double vy,
                                    double cov, double p_m) {
    const RatioMoments rm = ratio_moments(ex, vx, ey, vy, cov);
    return {p_m * rm.mean, p_m * p_m * rm.variance};
}

MomentSet user_moments(const arma::cx_mat& gram_inv, const SystemConfig& cfg,
                       int m) {
    MomentSet ms;
    const double f1v = f1(gram_inv, m);
    const double f2v = f2(gram_inv, cfg.tx_power_mw, m);
    const arma::vec f3v = f3_row(gram_inv, m);
    std::tie(ms.ex, ms.vx) = moments_x(f1v, cfg, m);
    std::tie(ms.ey, ms.vy) = moments_y(f2v, cfg, m);
    ms.cov = covariance_xy(f3v, cfg, m);
    std::tie(ms.ez, ms.vz) =
        z_moments(ms.ex, ms.vx, ms.ey, ms.vy, ms.cov, cfg.tx_power_mw(m));
    return ms;
}

GammaFit gamma_fit(double ez, double vz) {
    if (!(ez > 0.0) || !(vz > 0.0)) {
        throw numerical_error(errc::degenerate_distribution,
                              "Gamma fit needs positive mean and variance "
                              "(mean=" + std::to_string(ez) +
                              ", variance=" + std::to_string(vz) + ")");
    }
    return GammaFit{ez * ez / vz, vz / ez};
}

GammaFit gamma_fit_first_order(double ez_first_order, double vz) {
    return gamma_fit(ez_first_order, vz);
}

double gamma_cdf(const GammaFit& fit, double v) {
    if (v <= 0.0) return 0.0;
    return gamma_p(fit.shape, v / fit.scale);
}

} // namespace maopt
