// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_SPECIAL_FUNCTIONS_HPP
#define MAOPT_SPECIAL_FUNCTIONS_HPP

namespace maopt {

/// Regularized lower incomplete gamma function P(a, x), evaluated by the
/// series expansion for x < a + 1 and the continued fraction otherwise.
/// Double-precision relative accuracy around 1e-14.
double gamma_p(double a, double x);

/// Inverse of gamma_p in x: returns the unique x >= 0 with gamma_p(a, x) = p,
/// via a Wilson-Hilferty starting point and bracketed Newton iteration.
/// Round-trips to |gamma_p(a, x) - p| <= 1e-12.
double inverse_gamma_p(double p, double a);

/// Standard normal quantile (Acklam's rational approximation plus one
/// Halley refinement step).
double normal_quantile(double p);

} // namespace maopt

#endif
