// SPDX-License-Identifier: Apache-2.0
#include "maopt/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maopt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;

// Series representation of P(a, x), valid and fastest for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    // Terms peak near k ~ x - a and then decay geometrically; the iteration
    // cap scales with sqrt(a) to cover very large shapes.
    const long itmax = 200 + 10 * static_cast<long>(std::sqrt(std::max(a, 1.0)));
    for (long i = 0; i < itmax; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("gamma_p series did not converge (a=" +
                             std::to_string(a) + ", x=" + std::to_string(x) + ")");
}

// Lentz continued fraction for Q(a, x) = 1 - P(a, x), for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    const long itmax = 200 + 10 * static_cast<long>(std::sqrt(std::max(a, 1.0)));
    for (long i = 1; i <= itmax; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= kEps) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("gamma_p continued fraction did not converge (a=" +
                             std::to_string(a) + ", x=" + std::to_string(x) + ")");
}

// log of the Gamma(a) density kernel x^(a-1) e^(-x) / Gamma(a).
double log_gamma_pdf(double a, double x) {
    return (a - 1.0) * std::log(x) - x - std::lgamma(a);
}

} // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0)) {
        throw std::invalid_argument("gamma_p: shape must be positive");
    }
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    }
    // Acklam's rational approximation, |rel err| < 1.15e-9 before refinement.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Halley step against erfc brings this to full double precision.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

double inverse_gamma_p(double p, double a) {
    if (!(a > 0.0)) {
        throw std::invalid_argument("inverse_gamma_p: shape must be positive");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("inverse_gamma_p: p must be in (0,1)");
    }

    // Wilson-Hilferty starting point.
    const double z = normal_quantile(p);
    const double t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
    double x = a * t * t * t;
    if (!(x > 0.0)) x = a * std::exp((std::log(p) + std::lgamma(a + 1.0)) / a);
    if (!(x > 0.0) || !std::isfinite(x)) x = a;

    // Establish a bracket [lo, hi] around the root.
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    if (gamma_p(a, x) > p) {
        hi = x;
    } else {
        lo = x;
    }
    while (!std::isfinite(hi)) {
        const double probe = std::max(2.0 * lo, 1.0);
        if (gamma_p(a, probe) > p) {
            hi = probe;
        } else {
            lo = probe;
        }
    }
    if (lo == 0.0) {
        double probe = hi / 2.0;
        while (gamma_p(a, probe) > p && probe > kFpMin) {
            hi = probe;
            probe /= 2.0;
        }
        lo = (probe > kFpMin) ? probe : kFpMin;
    }

    // Safeguarded Newton: fall back to bisection whenever the Newton step
    // leaves the bracket or stalls.
    x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = gamma_p(a, x) - p;
        if (f > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        if (std::abs(f) <= 1e-14) break;
        const double dlog = log_gamma_pdf(a, x);
        double next;
        if (dlog < -700.0) {
            next = 0.5 * (lo + hi); // density underflows, bisect
        } else {
            next = x - f / std::exp(dlog);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        }
        if (std::abs(next - x) <= 4.0 * kEps * std::abs(x)) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

} // namespace maopt
