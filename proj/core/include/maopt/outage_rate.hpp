// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_OUTAGE_RATE_HPP
#define MAOPT_OUTAGE_RATE_HPP

#include <armadillo>
#include <optional>

#include "maopt/sinr_statistics.hpp"
#include "maopt/system_config.hpp"

namespace maopt {

/// Linear surrogate of the inverse regularized incomplete gamma function in
/// its shape argument: inverse ~ kappa(delta) * shape + rho(delta).
struct InverseGammaLinearization {
    double kappa = 0.0;
    double rho = 0.0;
    double delta = 0.0;
};

/// Published minimum-MSE coefficients for delta in {0.10, 0.11, ..., 0.20}.
struct LinearizationTableRow {
    double delta;
    double kappa;
    double rho;
};
inline constexpr LinearizationTableRow kLinearizationTable[] = {
    {0.10, 0.7655, -1.188},  {0.11, 0.7752, -1.167}, {0.12, 0.7842, -1.145},
    {0.13, 0.7928, -1.124},  {0.14, 0.801, -1.103},  {0.15, 0.8088, -1.082},
    {0.16, 0.8163, -1.061},  {0.17, 0.8235, -1.041}, {0.18, 0.8304, -1.02},
    {0.19, 0.8371, -0.9993}, {0.20, 0.8437, -0.9787},
};

/// Exact table hit (delta within 1e-9 of a tabulated value), else nullopt.
std::optional<InverseGammaLinearization> lookup_linearization(double delta);

/// Least-squares line through (shape, inverse_gamma_exact(delta, shape))
/// over the given shape grid.
InverseGammaLinearization fit_linearization(double delta,
                                            const arma::vec& shape_grid);

/// Table lookup when available, otherwise a fit over the default grid
/// [1, 50] with step 0.1.
InverseGammaLinearization linearization_for(double delta);

/// x such that the regularized lower incomplete gamma P(shape, x) = delta.
double inverse_gamma_exact(double delta, double shape);

double inverse_gamma_linear(const InverseGammaLinearization& lin,
                            double shape);

/// Exact outage-aware rate log2(1 + scale * inverse(delta, shape)), bits/s/Hz.
double outage_rate_exact(const GammaFit& fit, double delta);

/// The constants and aggregates of the expanded closed-form rate
///   R = log2(f4 + f5 / f6),
/// where the w-constants depend only on powers, fading parameters and E[Y]
/// (all layout-independent) and the f-aggregates collect the layout-dependent
/// channel functionals f1, f2, f3.
struct RateTerms {
    double w1 = 0, w2 = 0, w3 = 0, w4 = 0;   // kappa-weighted mean chain
    arma::vec w5;                            // per-interferer, <= 0
    double w6 = 0, w7 = 0, w8 = 0;           // rho-weighted spread chain
    arma::vec w9;                            // per-interferer
    double w10 = 0, w11 = 0;                 // denominator head, w10 = E[Y]
    arma::vec w12;                           // per-interferer, <= 0
    double w13 = 0, w14 = 0;                 // E[X] decomposition, > 0

    double f4 = 0, f5 = 0, f6 = 0;
    double xi = 0; // spread-to-mean proxy V[Z]/E[Z] ~ rho-side numerator

    double log_argument() const { return f4 + f5 / f6; }
};

/// Builds all rate terms of user m from the channel functionals and moments.
RateTerms rate_terms(double f1_value, double f2_value,
                     const arma::vec& f3_values, const MomentSet& moments,
                     const InverseGammaLinearization& lin,
                     const SystemConfig& cfg, int m);

/// The closed-form rate log2(f4 + f5/f6). Arguments below 1 (a negative
/// linearized threshold) clamp the rate to zero; arguments <= 0 throw
/// numerical_error(nonpositive_rate_argument).
double approx_rate(const RateTerms& terms);

/// Whether approx_rate would clamp this term set to zero.
inline bool rate_clamped(const RateTerms& terms) {
    return terms.log_argument() < 1.0;
}

struct SumRate {
    double total = 0.0;
    arma::vec per_user;
    int clamped = 0; // number of users whose rate argument fell below 1
};

/// Full per-layout pipeline: LoS matrix, Gram inverse, per-user rate terms,
/// summed closed-form rate. Region membership is deliberately not checked
/// here; rigid-array baselines evaluate layouts outside the moving regions.
SumRate evaluate_sum_rate(const SystemConfig& cfg, const AntennaLayout& t,
                          const InverseGammaLinearization& lin);

} // namespace maopt

#endif
