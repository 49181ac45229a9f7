// SPDX-License-Identifier: Apache-2.0
#include "maopt/beamforming.hpp"

#include <string>

#include "maopt/errors.hpp"

namespace maopt {

arma::cx_mat gram_inverse(const arma::cx_mat& los) {
    arma::cx_mat gram = los.t() * los; // M x M, Hermitian PSD
    gram = (gram + gram.t()) / 2.0;

    arma::vec eigval;
    if (!arma::eig_sym(eigval, gram)) {
        throw numerical_error(errc::ill_conditioned,
                              "Gram eigendecomposition failed");
    }
    const double lo = eigval.min();
    const double hi = eigval.max();
    if (!(lo > 0.0) || hi / lo > kGramConditionLimit) {
        throw numerical_error(
            errc::ill_conditioned,
            "Gram matrix condition number exceeds 1e12 (degenerate layout or "
            "coinciding departure angles)");
    }
    arma::cx_mat inv;
    if (!arma::inv_sympd(inv, gram)) {
        throw numerical_error(errc::ill_conditioned, "Gram inversion failed");
    }
    return (inv + inv.t()) / 2.0;
}

arma::cx_mat zf_beamformers(const arma::cx_mat& los) {
    const arma::uword n = los.n_rows;
    const arma::uword m = los.n_cols;
    arma::cx_mat w(n, m);
    for (arma::uword u = 0; u < m; ++u) {
        // hbar_u as a column is exactly column u of the LoS matrix.
        const arma::cx_vec h = los.col(u);
        arma::cx_vec v;
        if (m == 1) {
            v = h;
        } else {
            arma::cx_mat others = los;
            others.shed_col(u);
            arma::cx_mat small = others.t() * others;
            small = (small + small.t()) / 2.0;
            arma::cx_mat small_inv;
            if (!arma::inv_sympd(small_inv, small)) {
                throw numerical_error(errc::ill_conditioned,
                                      "beamformer projector inversion failed "
                                      "for user " + std::to_string(u + 1));
            }
            v = h - others * (small_inv * (others.t() * h));
        }
        const double norm = arma::norm(v);
        if (!(norm > 0.0)) {
            throw numerical_error(errc::ill_conditioned,
                                  "zero-norm beamformer for user " +
                                  std::to_string(u + 1));
        }
        w.col(u) = v / norm;
    }
    return w;
}

double f1(const arma::cx_mat& gram_inv, int m) {
    return 1.0 / gram_inv(m, m).real();
}

double f2(const arma::cx_mat& gram_inv, const arma::vec& power_mw, int m) {
    const int users = static_cast<int>(gram_inv.n_rows);
    double sum = 0.0;
    for (int i = 0; i < users; ++i) {
        if (i == m) continue;
        const double dii = gram_inv(i, i).real();
        for (int j = 0; j < users; ++j) {
            if (j == m) continue;
            const double djj = gram_inv(j, j).real();
            sum += power_mw(i) * power_mw(j) * std::norm(gram_inv(i, j)) /
                   (dii * djj);
        }
    }
    return sum;
}

double f3(const arma::cx_mat& gram_inv, int m, int j) {
    return std::norm(gram_inv(j, m)) /
           (gram_inv(j, j).real() * gram_inv(m, m).real());
}

arma::vec f3_row(const arma::cx_mat& gram_inv, int m) {
    const int users = static_cast<int>(gram_inv.n_rows);
    arma::vec out(users, arma::fill::zeros);
    for (int j = 0; j < users; ++j) {
        if (j != m) out(j) = f3(gram_inv, m, j);
    }
    return out;
}

} // namespace maopt
