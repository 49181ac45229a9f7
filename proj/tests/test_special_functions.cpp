// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maopt/rng.hpp"
#include "maopt/special_functions.hpp"

using namespace maopt;

TEST_CASE("gamma_p closed-form spot values") {
    CHECK(gamma_p(1.0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(gamma_p(1.0, 0.0) == 0.0);
    // Erlang with shape 2: P(2, x) = 1 - (1 + x) e^-x
    CHECK(gamma_p(2.0, 2.0) ==
          doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(gamma_p(0.5, 1e6) == doctest::Approx(1.0));
}

TEST_CASE("gamma_p is monotone in x") {
    for (double a : {0.3, 1.0, 4.9, 120.0}) {
        double prev = 0.0;
        for (double x = 0.0; x < 8.0 * a + 10.0; x += 0.25 * a + 0.1) {
            const double p = gamma_p(a, x);
            CHECK(p >= prev);
            prev = p;
        }
        CHECK(prev > 0.999);
    }
}

TEST_CASE("inverse spot values") {
    CHECK(inverse_gamma_p(1.0 - std::exp(-1.0), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inverse_gamma_p(0.5, 1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("inverse round-trip over random (p, shape) pairs") {
    SubstreamRng rng(2024, 0, 0);
    for (int i = 0; i < 1000; ++i) {
        const double p = 1e-6 + (1.0 - 2e-6) * rng.next_unit();
        // shapes log-uniform over [0.05, 1e4]
        const double a =
            std::exp(std::log(0.05) +
                     (std::log(1e4) - std::log(0.05)) * rng.next_unit());
        const double x = inverse_gamma_p(p, a);
        CHECK(std::abs(gamma_p(a, x) - p) <= 1e-10);
    }
}

TEST_CASE("inverse handles near-degenerate large shapes") {
    const double x = inverse_gamma_p(0.5, 1e6);
    CHECK(std::abs(gamma_p(1e6, x) - 0.5) <= 1e-10);
    // median of Gamma(a,1) ~ a - 1/3 for large a
    CHECK(x == doctest::Approx(1e6).epsilon(1e-3));
}

TEST_CASE("normal quantile inverts the normal CDF") {
    for (double z = -5.0; z <= 5.0; z += 0.25) {
        const double p = 0.5 * std::erfc(-z / std::sqrt(2.0));
        CHECK(normal_quantile(p) == doctest::Approx(z).epsilon(1e-9));
    }
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
}
