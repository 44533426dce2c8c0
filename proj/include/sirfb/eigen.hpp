#pragma once

namespace sirfb {

struct ModelParams;

struct EigenQuery {
    double radius; ///< ball radius R > 0
    int dim;       ///< spatial dimension, 1..3
};

/// J_nu for the half-integer and zero orders needed here
/// (nu in {-1/2, 0, 1/2}); x > 0.
double bessel_j(double nu, double x);

/// First positive zero of J_{n/2-1}, located by bracketing and bisection
/// (1e-13 absolute tolerance).
double first_bessel_zero(int n);

/// Principal Dirichlet eigenvalue of -Laplace on the ball of radius R in
/// dimension n: (j_{n/2-1,1}/R)^2.
double lambda1(const EigenQuery& q);

/// The radius h0* with lambda1(h0*) = (mu2+alpha)(r0-1)/d2.
/// Throws ConfigError when r0 <= 1 (no positive solution).
double critical_radius(const ModelParams& p);

} // namespace sirfb
