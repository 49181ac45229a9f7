// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_GRADIENT_HPP
#define MAOPT_GRADIENT_HPP

#include <armadillo>

#include "maopt/outage_rate.hpp"
#include "maopt/system_config.hpp"

namespace maopt {

enum class Axis { x = 0, y = 1 };

/// Derivative of column n of the LoS matrix adjoint with respect to that
/// antenna's coordinate: entry m is
///   2*pi * dir_m * exp(j (2*pi (x_n c_m + y_n s_m) + pi/2)),
/// with dir_m = cos(theta_m) sin(phi_m) for the x axis and sin(theta_m) for
/// the y axis.
arma::cx_vec steering_derivative(const SystemConfig& cfg,
                                 const AntennaLayout& t, int n, Axis axis);

/// d(G^-1)/d coordinate via the sandwich rule -G^-1 dG G^-1 with
/// dG = b h_row + (b h_row)^H, where b is the steering derivative and h_row
/// the n-th row of the LoS matrix. The result is Hermitian.
arma::cx_mat gram_inverse_derivative(const SystemConfig& cfg,
                                     const AntennaLayout& t,
                                     const arma::cx_mat& los,
                                     const arma::cx_mat& gram_inv, int n,
                                     Axis axis);

struct FDerivatives {
    double df1 = 0.0;
    double df2 = 0.0;
    arma::vec df3; // length M, entry m zero
};

/// Chain-rule derivatives of f1, f2, f3 of user m through a Gram-inverse
/// perturbation dG^-1.
FDerivatives f_derivatives(const arma::cx_mat& gram_inv,
                           const arma::cx_mat& dgram_inv,
                           const arma::vec& power_mw, int m);

/// Analytic gradient of the summed closed-form rate, 2 x N, entry (axis, n)
/// in bits/s/Hz per wavelength. Users whose rate argument is clamped to zero
/// contribute nothing, matching the clamped objective.
arma::mat objective_gradient(const SystemConfig& cfg, const AntennaLayout& t,
                             const InverseGammaLinearization& lin);

/// Central finite differences of evaluate_sum_rate, the independent verifier
/// for objective_gradient. Step in wavelengths.
arma::mat fd_objective_gradient(const SystemConfig& cfg, const AntennaLayout& t,
                                const InverseGammaLinearization& lin,
                                double step = 1e-6);

} // namespace maopt

#endif
