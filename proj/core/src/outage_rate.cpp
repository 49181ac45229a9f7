// SPDX-License-Identifier: Apache-2.0
#include "maopt/outage_rate.hpp"

#include <cmath>
#include <string>

#include "maopt/beamforming.hpp"
#include "maopt/channel.hpp"
#include "maopt/errors.hpp"
#include "maopt/special_functions.hpp"

namespace maopt {

std::optional<InverseGammaLinearization> lookup_linearization(double delta) {
    for (const LinearizationTableRow& row : kLinearizationTable) {
        if (std::abs(delta - row.delta) < 1e-9) {
            return InverseGammaLinearization{row.kappa, row.rho, row.delta};
        }
    }
    return std::nullopt;
}

InverseGammaLinearization fit_linearization(double delta,
                                            const arma::vec& shape_grid) {
    const arma::uword n = shape_grid.n_elem;
    arma::vec y(n);
    for (arma::uword i = 0; i < n; ++i) {
        y(i) = inverse_gamma_exact(delta, shape_grid(i));
    }
    const double sx = arma::accu(shape_grid);
    const double sy = arma::accu(y);
    const double sxx = arma::dot(shape_grid, shape_grid);
    const double sxy = arma::dot(shape_grid, y);
    const double denom = n * sxx - sx * sx;
    const double kappa = (n * sxy - sx * sy) / denom;
    const double rho = (sy - kappa * sx) / n;
    return InverseGammaLinearization{kappa, rho, delta};
}

InverseGammaLinearization linearization_for(double delta) {
    if (auto hit = lookup_linearization(delta)) return *hit;
    return fit_linearization(delta, arma::regspace(1.0, 0.1, 50.0));
}

double inverse_gamma_exact(double delta, double shape) {
    return inverse_gamma_p(delta, shape);
}

double inverse_gamma_linear(const InverseGammaLinearization& lin,
                            double shape) {
    return lin.kappa * shape + lin.rho;
}

double outage_rate_exact(const GammaFit& fit, double delta) {
    return std::log2(1.0 + fit.scale * inverse_gamma_exact(delta, fit.shape));
}

RateTerms rate_terms(double f1_value, double f2_value,
                     const arma::vec& f3_values, const MomentSet& moments,
                     const InverseGammaLinearization& lin,
                     const SystemConfig& cfg, int m) {
    const int users = cfg.num_users;
    const double kappa = lin.kappa;
    const double rho = lin.rho;
    const double k = cfg.rician_k(m);
    const double b = cfg.large_scale_gain(m);
    const double pm = cfg.tx_power_mw(m);
    const double kp1 = k + 1.0;
    const double ey = moments.ey;
    const double ey2 = ey * ey;
    const double ey3 = ey2 * ey;
    const double b3 = b * b * b;
    const double kp3 = kp1 * kp1 * kp1;

    RateTerms t;
    t.w1 = 1.0 + kappa * pm * b / (ey * kp1);
    t.w2 = kappa * pm * b * k / (ey * kp1);
    t.w3 = kappa * pm * b3 / (ey3 * kp3);
    t.w4 = kappa * pm * k * b3 / (ey3 * kp3);
    t.w6 = 2.0 * rho * pm * b / kp1;
    t.w7 = rho * pm * b3 / (ey2 * kp3);
    t.w8 = rho * pm * k * b3 / (ey2 * kp3);
    t.w10 = ey;
    t.w11 = b * b / (ey * kp1 * kp1);
    t.w13 = k * b / kp1;
    t.w14 = b / kp1;

    t.w5.zeros(users);
    t.w9.zeros(users);
    t.w12.zeros(users);
    double sum5 = 0.0;
    double sum9 = 0.0;
    double sum12 = 0.0;
    for (int j = 0; j < users; ++j) {
        if (j == m) continue;
        const double pj = cfg.tx_power_mw(j);
        t.w5(j) = -kappa * pj * pm * b * b / (ey2 * kp1 * kp1);
        t.w9(j) = -2.0 * rho * pm * pj * b * b / (ey * kp1 * kp1);
        t.w12(j) = -2.0 * pj * b * b / (kp1 * kp1);
        sum5 += t.w5(j) * f3_values(j);
        sum9 += t.w9(j) * f3_values(j);
        sum12 += t.w12(j) * f3_values(j);
    }

    t.f4 = t.w1 + t.w2 * f1_value + f2_value * (t.w3 + t.w4 * f1_value) + sum5;
    t.f5 = t.w6 + f2_value * (t.w7 + t.w8 * f1_value) + sum9;
    t.f6 = t.w10 + t.w11 * f2_value + sum12 / (t.w13 * f1_value + t.w14);
    if (!(t.f6 > 0.0)) {
        throw numerical_error(errc::nonpositive_rate_argument,
                              "rate denominator f6 is nonpositive; the rate "
                              "approximation breaks down at this layout");
    }

    // Spread-to-mean proxy with the flat 2b/(K+1) numerator head.
    const double head = 2.0 * b / kp1;
    t.xi = (head + moments.ex * moments.vy / ey2 - 2.0 * moments.cov / ey) /
           (1.0 + moments.vy / ey2 -
            2.0 * moments.cov / (moments.ex * ey));
    return t;
}

double approx_rate(const RateTerms& terms) {
    const double arg = terms.log_argument();
    if (arg <= 0.0) {
        throw numerical_error(
            errc::nonpositive_rate_argument,
            "rate argument " + std::to_string(arg) +
                " is nonpositive (approximation breakdown, typically tiny "
                "Rician K together with a small outage target)");
    }
    if (arg < 1.0) return 0.0; // negative linearized threshold, clamped
    return std::log2(arg);
}

SumRate evaluate_sum_rate(const SystemConfig& cfg, const AntennaLayout& t,
                          const InverseGammaLinearization& lin) {
    const arma::cx_mat los = los_matrix(cfg, t);
    const arma::cx_mat gram_inv = gram_inverse(los);
    SumRate out;
    out.per_user.zeros(cfg.num_users);
    for (int m = 0; m < cfg.num_users; ++m) {
        const double f1v = f1(gram_inv, m);
        const double f2v = f2(gram_inv, cfg.tx_power_mw, m);
        const arma::vec f3v = f3_row(gram_inv, m);
        const MomentSet ms = user_moments(gram_inv, cfg, m);
        const RateTerms terms = rate_terms(f1v, f2v, f3v, ms, lin, cfg, m);
        if (rate_clamped(terms)) ++out.clamped;
        out.per_user(m) = approx_rate(terms);
        out.total += out.per_user(m);
    }
    return out;
}

} // namespace maopt
