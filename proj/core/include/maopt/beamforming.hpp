// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_BEAMFORMING_HPP
#define MAOPT_BEAMFORMING_HPP

#include <armadillo>

#include "maopt/system_config.hpp"

namespace maopt {

/// Condition-number threshold above which a Gram matrix is rejected as
/// degenerate (e.g. two users sharing the same departure direction).
inline constexpr double kGramConditionLimit = 1e12;

/// Inverse Gram matrix (Hbar^H Hbar)^-1 of the LoS channel, Hermitian
/// symmetry enforced by averaging with its conjugate transpose.
/// Throws numerical_error(ill_conditioned) when cond > kGramConditionLimit.
arma::cx_mat gram_inverse(const arma::cx_mat& los);

/// Statistical-CSI zero-forcing beamformers, one unit-norm column per user,
/// built from the orthogonal-complement projector of the other users' LoS
/// rows. This route is kept independent of gram_inverse so the two can be
/// cross-checked against each other.
arma::cx_mat zf_beamformers(const arma::cx_mat& los);

/// Beamforming gain |hbar_m w_m|^2 = 1 / [G^-1]_mm.
double f1(const arma::cx_mat& gram_inv, int m);

/// Interference spread tr(Psi_m^2) expressed through the Gram inverse:
/// sum over i,j != m of P_i P_j |[G^-1]_ij|^2 / ([G^-1]_ii [G^-1]_jj).
double f2(const arma::cx_mat& gram_inv, const arma::vec& power_mw, int m);

/// Beamformer cross-correlation |w_j^H w_m|^2, in [0,1].
double f3(const arma::cx_mat& gram_inv, int m, int j);

/// All f3(m, j) for j != m, as a length-M vector with entry m set to zero.
arma::vec f3_row(const arma::cx_mat& gram_inv, int m);

} // namespace maopt

#endif
