#include "sirfb/eigen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sirfb/errors.hpp"
#include "sirfb/model.hpp"

namespace sirfb {

namespace {

// Power series of J_0, converged to machine precision for the moderate
// arguments needed here (first zero is below 3).
double j0_series(double x) {
    const double q = -0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

} // namespace

double bessel_j(double nu, double x) {
    const double pref = std::sqrt(2.0 / (std::numbers::pi * x));
    if (nu == -0.5) return pref * std::cos(x);
    if (nu == 0.5) return pref * std::sin(x);
    if (nu == 0.0) return j0_series(x);
    throw ConfigError("bessel_j: unsupported order nu=" + std::to_string(nu));
}

double first_bessel_zero(int n) {
    if (n < 1 || n > 3) {
        throw ConfigError("eigen: unsupported dimension n=" + std::to_string(n) +
                          " (must be 1, 2 or 3)");
    }
    const double nu = 0.5 * n - 1.0;
    // Bracket the first sign change, then bisect.
    double a = 0.1, b = a;
    double fa = bessel_j(nu, a);
    for (;;) {
        b += 0.1;
        const double fb = bessel_j(nu, b);
        if (fa * fb <= 0.0) break;
        a = b;
        fa = fb;
    }
    while (b - a > 1e-13) {
        const double m = 0.5 * (a + b);
        const double fm = bessel_j(nu, m);
        if (fa * fm <= 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

double lambda1(const EigenQuery& q) {
    if (q.radius <= 0) throw ConfigError("lambda1: radius must be positive");
    const double j = first_bessel_zero(q.dim);
    return (j / q.radius) * (j / q.radius);
}

double critical_radius(const ModelParams& p) {
    const double r0 = compute_r0(p);
    if (r0 <= 1.0) {
        throw ConfigError("critical_radius: requires r0 > 1 (got r0=" +
                          std::to_string(r0) + ")");
    }
    const double target = (p.mu2 + p.alpha) * (r0 - 1.0) / p.d2;
    return first_bessel_zero(p.n) / std::sqrt(target);
}

} // namespace sirfb
