// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_SINR_STATISTICS_HPP
#define MAOPT_SINR_STATISTICS_HPP

#include <armadillo>
#include <utility>

#include "maopt/system_config.hpp"

namespace maopt {

struct RatioMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Second-order Taylor moments of a ratio Z = X/Y of correlated positive
/// random variables:
///   mean     = ex/ey + ex*vy/ey^3 - cov/ey^2
///   variance = vx/ey^2 + ex^2*vy/ey^4 - 2*ex*cov/ey^3
/// Throws numerical_error(nonpositive_variance) when the variance comes out
/// <= 0 with nonzero inputs, which signals the expansion regime is violated.
RatioMoments ratio_moments(double ex, double vx, double ey, double vy,
                           double cov);

/// Per-user closed-form moments of the SINR numerator X_m, denominator Y_m
/// and their ratio Z_m = P_m X_m / Y_m.
struct MomentSet {
    double ex = 0.0;  // E[X_m]
    double vx = 0.0;  // V[X_m]
    double ey = 0.0;  // E[Y_m]
    double vy = 0.0;  // V[Y_m]
    double cov = 0.0; // Cov(X_m, Y_m)
    double ez = 0.0;  // E[Z_m], second-order
    double vz = 0.0;  // V[Z_m]
};

/// E[X_m] = K b/(K+1) f1 + b/(K+1),  V[X_m] = b^2/(K+1)^2 (1 + 2 K f1).
std::pair<double, double> moments_x(double f1_value, const SystemConfig& cfg,
                                    int m);

/// E[Y_m] = b/(K+1) sum_{j!=m} P_j + sigma^2,  V[Y_m] = (b/(K+1))^2 f2.
std::pair<double, double> moments_y(double f2_value, const SystemConfig& cfg,
                                    int m);

/// Cov(X_m, Y_m) = sum_{j!=m} P_j b^2/(K+1)^2 f3(m,j).
/// f3_values is a length-M vector (entry m ignored).
double covariance_xy(const arma::vec& f3_values, const SystemConfig& cfg,
                     int m);

/// (E[Z_m], V[Z_m]) from the ratio moments scaled by P_m and P_m^2.
std::pair<double, double> z_moments(double ex, double vx, double ey, double vy,
                                    double cov, double p_m);

/// Assembles the full moment set of user m from the Gram inverse.
MomentSet user_moments(const arma::cx_mat& gram_inv, const SystemConfig& cfg,
                       int m);

/// Moment-matched Gamma distribution of the SINR.
struct GammaFit {
    double shape = 0.0; // ez^2 / vz
    double scale = 0.0; // vz / ez
};

/// Throws numerical_error(degenerate_distribution) when ez <= 0 or vz <= 0.
GammaFit gamma_fit(double ez, double vz);

/// First-order variant: same variance, mean truncated to P_m ex/ey.
GammaFit gamma_fit_first_order(double ez_first_order, double vz);

/// CDF of the fit: regularized lower incomplete gamma at v / scale.
double gamma_cdf(const GammaFit& fit, double v);

} // namespace maopt

#endif
