// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maopt/beamforming.hpp"
#include "maopt/channel.hpp"
#include "maopt/gradient.hpp"
#include "test_helpers.hpp"

using namespace maopt;

namespace {

SystemConfig single_user_config() {
    SystemConfig cfg = testutil::scenario_config();
    cfg.num_users = 1;
    cfg.tx_power_mw = arma::vec{10.0};
    cfg.large_scale_gain = arma::vec{1e-9};
    cfg.rician_k = arma::vec{15.0};
    cfg.elevation_aod = arma::vec{0.8676};
    cfg.azimuth_aod = arma::vec{0.2852};
    return validate_config(cfg);
}

} // namespace

TEST_CASE("steering derivative") {
    SystemConfig cfg = testutil::scenario_config();

    SUBCASE("vanishes at zero departure angles") {
        cfg.elevation_aod(0) = 0.0;
        cfg.azimuth_aod(0) = 0.0;
        const AntennaLayout t = testutil::random_feasible_layout(cfg, 1, 0);
        CHECK(std::abs(steering_derivative(cfg, t, 2, Axis::x)(0)) < 1e-15);
        CHECK(std::abs(steering_derivative(cfg, t, 2, Axis::y)(0)) < 1e-15);
    }

    SUBCASE("entry magnitudes") {
        const AntennaLayout t = testutil::random_feasible_layout(cfg, 2, 0);
        const arma::cx_vec bx = steering_derivative(cfg, t, 1, Axis::x);
        const arma::cx_vec by = steering_derivative(cfg, t, 1, Axis::y);
        for (int m = 0; m < 4; ++m) {
            const double cx = std::cos(cfg.elevation_aod(m)) *
                              std::sin(cfg.azimuth_aod(m));
            const double sy = std::sin(cfg.elevation_aod(m));
            CHECK(std::abs(bx(m)) ==
                  doctest::Approx(2.0 * M_PI * std::abs(cx)).epsilon(1e-12));
            CHECK(std::abs(by(m)) ==
                  doctest::Approx(2.0 * M_PI * std::abs(sy)).epsilon(1e-12));
        }
    }

    SUBCASE("matches finite differences of the LoS matrix") {
        const double h = 1e-6;
        for (int i = 0; i < 10; ++i) {
            const AntennaLayout t = testutil::random_feasible_layout(cfg, 3, i);
            for (int n = 0; n < 5; ++n) {
                for (Axis axis : {Axis::x, Axis::y}) {
                    AntennaLayout plus = t, minus = t;
                    plus(static_cast<int>(axis), n) += h;
                    minus(static_cast<int>(axis), n) -= h;
                    // row n of the LoS matrix holds conj of the adjoint column
                    const arma::cx_rowvec fd =
                        (los_matrix(cfg, plus).row(n) -
                         los_matrix(cfg, minus).row(n)) /
                        (2.0 * h);
                    const arma::cx_vec b = steering_derivative(cfg, t, n, axis);
                    for (int m = 0; m < 4; ++m) {
                        const double denom = std::max(std::abs(b(m)), 1e-10);
                        CHECK(std::abs(std::conj(b(m)) - fd(m)) / denom < 1e-5);
                    }
                }
            }
        }
    }
}

TEST_CASE("gram inverse derivative") {
    const SystemConfig cfg = testutil::scenario_config();

    SUBCASE("single user Gram is constant") {
        const SystemConfig one = single_user_config();
        const AntennaLayout t = testutil::random_feasible_layout(one, 4, 0);
        const arma::cx_mat los = los_matrix(one, t);
        const arma::cx_mat gi = gram_inverse(los);
        const arma::cx_mat d =
            gram_inverse_derivative(one, t, los, gi, 2, Axis::x);
        CHECK(arma::abs(d).max() < 1e-12);
    }

    SUBCASE("Hermitian and matches finite differences") {
        const double h = 1e-6;
        for (int i = 0; i < 10; ++i) {
            const AntennaLayout t = testutil::random_feasible_layout(cfg, 5, i);
            const arma::cx_mat los = los_matrix(cfg, t);
            const arma::cx_mat gi = gram_inverse(los);
            for (int n = 0; n < 5; ++n) {
                for (Axis axis : {Axis::x, Axis::y}) {
                    const arma::cx_mat d =
                        gram_inverse_derivative(cfg, t, los, gi, n, axis);
                    CHECK(arma::abs(d - d.t()).max() < 1e-10);

                    AntennaLayout plus = t, minus = t;
                    plus(static_cast<int>(axis), n) += h;
                    minus(static_cast<int>(axis), n) -= h;
                    const arma::cx_mat fd =
                        (gram_inverse(los_matrix(cfg, plus)) -
                         gram_inverse(los_matrix(cfg, minus))) /
                        (2.0 * h);
                    const double scale = arma::abs(fd).max();
                    CHECK(arma::abs(d - fd).max() / scale < 1e-5);
                }
            }
        }
    }
}

TEST_CASE("channel functional derivatives") {
    const SystemConfig cfg = testutil::scenario_config();

    SUBCASE("single user has constant f1") {
        const SystemConfig one = single_user_config();
        const AntennaLayout t = testutil::random_feasible_layout(one, 6, 0);
        const arma::cx_mat los = los_matrix(one, t);
        const arma::cx_mat gi = gram_inverse(los);
        const arma::cx_mat d =
            gram_inverse_derivative(one, t, los, gi, 0, Axis::x);
        CHECK(std::abs(f_derivatives(gi, d, one.tx_power_mw, 0).df1) < 1e-6);
    }

    SUBCASE("df3 inherits the f3 symmetry") {
        const AntennaLayout t = testutil::random_feasible_layout(cfg, 7, 0);
        const arma::cx_mat los = los_matrix(cfg, t);
        const arma::cx_mat gi = gram_inverse(los);
        const arma::cx_mat d =
            gram_inverse_derivative(cfg, t, los, gi, 3, Axis::y);
        for (int m = 0; m < 4; ++m) {
            const FDerivatives fm = f_derivatives(gi, d, cfg.tx_power_mw, m);
            for (int j = 0; j < 4; ++j) {
                if (j == m) continue;
                const FDerivatives fj = f_derivatives(gi, d, cfg.tx_power_mw, j);
                CHECK(fm.df3(j) == doctest::Approx(fj.df3(m)).epsilon(1e-12));
            }
        }
    }

    SUBCASE("matches finite differences at random layouts") {
        const double h = 1e-6;
        for (int i = 0; i < 50; ++i) {
            const AntennaLayout t = testutil::random_feasible_layout(cfg, 8, i);
            const arma::cx_mat los = los_matrix(cfg, t);
            const arma::cx_mat gi = gram_inverse(los);
            const int n = i % 5;
            const Axis axis = (i % 2) ? Axis::y : Axis::x;
            const arma::cx_mat d =
                gram_inverse_derivative(cfg, t, los, gi, n, axis);

            AntennaLayout plus = t, minus = t;
            plus(static_cast<int>(axis), n) += h;
            minus(static_cast<int>(axis), n) -= h;
            const arma::cx_mat gp = gram_inverse(los_matrix(cfg, plus));
            const arma::cx_mat gm = gram_inverse(los_matrix(cfg, minus));

            for (int m = 0; m < 4; ++m) {
                const FDerivatives fd = f_derivatives(gi, d, cfg.tx_power_mw, m);
                const double df1_fd = (f1(gp, m) - f1(gm, m)) / (2.0 * h);
                const double df2_fd = (f2(gp, cfg.tx_power_mw, m) -
                                       f2(gm, cfg.tx_power_mw, m)) /
                                      (2.0 * h);
                CHECK(testutil::rel_err(fd.df1, df1_fd, 1e-10) < 1e-5);
                CHECK(testutil::rel_err(fd.df2, df2_fd, 1e-10) < 1e-5);
                for (int j = 0; j < 4; ++j) {
                    if (j == m) continue;
                    const double df3_fd =
                        (f3(gp, m, j) - f3(gm, m, j)) / (2.0 * h);
                    CHECK(testutil::rel_err(fd.df3(j), df3_fd, 1e-10) < 1e-5);
                }
            }
        }
    }
}

TEST_CASE("objective gradient") {
    const SystemConfig cfg = testutil::scenario_config();
    const InverseGammaLinearization lin = linearization_for(0.2);

    SUBCASE("translation covariance") {
        const AntennaLayout t = testutil::random_feasible_layout(cfg, 9, 0);
        AntennaLayout shifted = t;
        shifted.row(0) += 1.7;
        shifted.row(1) -= 0.4;
        const arma::mat g = objective_gradient(cfg, t, lin);
        const arma::mat g2 = objective_gradient(cfg, shifted, lin);
        CHECK(arma::abs(g - g2).max() < 1e-8);
    }

    SUBCASE("single user objective is flat") {
        const SystemConfig one = single_user_config();
        const AntennaLayout t = testutil::random_feasible_layout(one, 10, 0);
        CHECK(arma::abs(objective_gradient(one, t, lin)).max() < 1e-6);
    }

    SUBCASE("matches central finite differences") {
        for (int i = 0; i < 20; ++i) {
            const AntennaLayout t = testutil::random_feasible_layout(cfg, 11, i);
            const arma::mat g = objective_gradient(cfg, t, lin);
            const arma::mat fd = fd_objective_gradient(cfg, t, lin);
            for (arma::uword c = 0; c < g.n_elem; ++c) {
                CHECK(testutil::rel_err(g(c), fd(c), 1e-10) < 1e-5);
            }
        }
    }

    SUBCASE("translation invariance collapses the column sums") {
        const AntennaLayout t = testutil::random_feasible_layout(cfg, 12, 0);
        const arma::mat g = objective_gradient(cfg, t, lin);
        CHECK(std::abs(arma::accu(g.row(0))) < 1e-8);
        CHECK(std::abs(arma::accu(g.row(1))) < 1e-8);
    }
}
