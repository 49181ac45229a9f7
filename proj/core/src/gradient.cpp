// SPDX-License-Identifier: Apache-2.0
#include "maopt/gradient.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "maopt/beamforming.hpp"
#include "maopt/channel.hpp"

namespace maopt {

arma::cx_vec steering_derivative(const SystemConfig& cfg,
                                 const AntennaLayout& t, int n, Axis axis) {
    const int users = cfg.num_users;
    arma::cx_vec b(users);
    for (int m = 0; m < users; ++m) {
        const double cx = std::cos(cfg.elevation_aod(m)) *
                          std::sin(cfg.azimuth_aod(m));
        const double sy = std::sin(cfg.elevation_aod(m));
        const double dir = (axis == Axis::x) ? cx : sy;
        const double phase =
            2.0 * M_PI * (t(0, n) * cx + t(1, n) * sy) + M_PI / 2.0;
        b(m) = 2.0 * M_PI * dir * std::polar(1.0, phase);
    }
    return b;
}

arma::cx_mat gram_inverse_derivative(const SystemConfig& cfg,
                                     const AntennaLayout& t,
                                     const arma::cx_mat& los,
                                     const arma::cx_mat& gram_inv, int n,
                                     Axis axis) {
    const arma::cx_vec b = steering_derivative(cfg, t, n, axis);
    // dG = b * (row n of the LoS matrix) plus its conjugate transpose; only
    // column n of the adjoint derivative is nonzero, so the outer product
    // captures the whole perturbation.
    const arma::cx_mat outer = b * los.row(n);
    const arma::cx_mat dgram = outer + outer.t();
    arma::cx_mat d = -gram_inv * dgram * gram_inv;
    return (d + d.t()) / 2.0;
}

FDerivatives f_derivatives(const arma::cx_mat& gram_inv,
                           const arma::cx_mat& dgram_inv,
                           const arma::vec& power_mw, int m) {
    const int users = static_cast<int>(gram_inv.n_rows);
    const arma::vec diag = arma::real(gram_inv.diag());
    const arma::vec ddiag = arma::real(dgram_inv.diag());
    FDerivatives out;
    out.df3.zeros(users);

    out.df1 = -ddiag(m) / (diag(m) * diag(m));

    for (int i = 0; i < users; ++i) {
        if (i == m) continue;
        for (int j = 0; j < users; ++j) {
            if (j == m) continue;
            const std::complex<double> g = gram_inv(i, j);
            const double mag2 = std::norm(g);
            const double dmag2 = 2.0 * std::real(dgram_inv(i, j) * std::conj(g));
            out.df2 += power_mw(i) * power_mw(j) *
                       (dmag2 / (diag(i) * diag(j)) -
                        mag2 * ddiag(i) / (diag(i) * diag(i) * diag(j)) -
                        mag2 * ddiag(j) / (diag(j) * diag(j) * diag(i)));
        }
    }

    for (int j = 0; j < users; ++j) {
        if (j == m) continue;
        const std::complex<double> g = gram_inv(j, m);
        const double mag2 = std::norm(g);
        const double dmag2 = 2.0 * std::real(dgram_inv(j, m) * std::conj(g));
        const double den = diag(j) * diag(m);
        out.df3(j) = dmag2 / den -
                     mag2 * (ddiag(j) * diag(m) + diag(j) * ddiag(m)) /
                         (den * den);
    }
    return out;
}

arma::mat objective_gradient(const SystemConfig& cfg, const AntennaLayout& t,
                             const InverseGammaLinearization& lin) {
    const int antennas = cfg.num_antennas;
    const int users = cfg.num_users;
    const arma::cx_mat los = los_matrix(cfg, t);
    const arma::cx_mat gram_inv = gram_inverse(los);

    struct UserState {
        RateTerms terms;
        double f1v = 0.0;
        double f2v = 0.0;
        arma::vec f3v;
        bool active = false;
    };
    std::vector<UserState> state(users);
    for (int m = 0; m < users; ++m) {
        UserState& s = state[m];
        s.f1v = f1(gram_inv, m);
        s.f2v = f2(gram_inv, cfg.tx_power_mw, m);
        s.f3v = f3_row(gram_inv, m);
        const MomentSet ms = user_moments(gram_inv, cfg, m);
        s.terms = rate_terms(s.f1v, s.f2v, s.f3v, ms, lin, cfg, m);
        (void)approx_rate(s.terms); // surfaces breakdown as an error
        s.active = !rate_clamped(s.terms);
    }

    const double inv_ln2 = 1.0 / std::log(2.0);
    arma::mat grad(2, antennas, arma::fill::zeros);
    for (int n = 0; n < antennas; ++n) {
        for (Axis axis : {Axis::x, Axis::y}) {
            const arma::cx_mat dgi =
                gram_inverse_derivative(cfg, t, los, gram_inv, n, axis);
            double total = 0.0;
            for (int m = 0; m < users; ++m) {
                const UserState& s = state[m];
                if (!s.active) continue; // clamped users stay at rate 0
                const RateTerms& rt = s.terms;
                const FDerivatives d =
                    f_derivatives(gram_inv, dgi, cfg.tx_power_mw, m);
                double sum5 = 0.0, sum9 = 0.0, sum12 = 0.0, dsum12 = 0.0;
                for (int j = 0; j < users; ++j) {
                    if (j == m) continue;
                    sum5 += rt.w5(j) * d.df3(j);
                    sum9 += rt.w9(j) * d.df3(j);
                    sum12 += rt.w12(j) * s.f3v(j);
                    dsum12 += rt.w12(j) * d.df3(j);
                }
                const double df4 = rt.w2 * d.df1 +
                                   d.df2 * (rt.w3 + rt.w4 * s.f1v) +
                                   rt.w4 * s.f2v * d.df1 + sum5;
                const double df5 = d.df2 * (rt.w7 + rt.w8 * s.f1v) +
                                   rt.w8 * s.f2v * d.df1 + sum9;
                const double den = rt.w13 * s.f1v + rt.w14;
                const double df6 =
                    rt.w11 * d.df2 +
                    (dsum12 * den - sum12 * rt.w13 * d.df1) / (den * den);
                const double arg = rt.log_argument();
                total += inv_ln2 / arg *
                         (df4 + (df5 * rt.f6 - rt.f5 * df6) / (rt.f6 * rt.f6));
            }
            grad(static_cast<int>(axis), n) = total;
        }
    }
    return grad;
}

arma::mat fd_objective_gradient(const SystemConfig& cfg, const AntennaLayout& t,
                                const InverseGammaLinearization& lin,
                                double step) {
    arma::mat grad(2, t.n_cols, arma::fill::zeros);
    for (arma::uword n = 0; n < t.n_cols; ++n) {
        for (int axis = 0; axis < 2; ++axis) {
            AntennaLayout plus = t;
            AntennaLayout minus = t;
            plus(axis, n) += step;
            minus(axis, n) -= step;
            grad(axis, n) = (evaluate_sum_rate(cfg, plus, lin).total -
                             evaluate_sum_rate(cfg, minus, lin).total) /
                            (2.0 * step);
        }
    }
    return grad;
}

} // namespace maopt
