#pragma once

#include "spde2d/model.hpp"

namespace spde2d {

struct PhiOptions {
    double abs_tol = 1e-9;  // absolute tolerance on the returned value
    int max_panels = 20000;
};

struct PhiResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// phi_{r,alpha}(theta2) = 2 / (theta2^(1-alpha) pi) *
//   int_0^inf x^(-1-2 alpha) (1 - e^{-x^2})
//            (J0(sqrt(2) r x / sqrt(theta2)) - 2 J0(r x / sqrt(theta2)) + 1) dx.
//
// The integrand is positive, integrable at both ends for alpha in (0,3), and
// oscillatory at scale sqrt(theta2)/r.  Evaluation: adaptive panels on [0,1],
// quarter-period panels on [1, 8], then an exact power-law term plus two
// between-zeros alternating Bessel tails, Euler-accelerated.  Failure to meet
// tolerance raises quadrature_error; it is never silently accepted.
PhiResult phi_detailed(double r, double alpha, double theta2, const PhiOptions& opts = {});
double phi(double r, double alpha, double theta2, const PhiOptions& opts = {});

// Solves phi(r, alpha, x) = target for x in [lo, hi] by bisection, using the
// strict monotone decrease of phi in theta2.  Returns the clamped endpoint
// when the target lies outside the attainable range.
double phi_inverse(double target, double r, double alpha, double lo, double hi,
                   const PhiOptions& opts = {});

struct LatticeOptions {
    // Reject the evaluation when the cutoff-shell correction exceeds this
    // fraction of the value (the extrapolation is no longer trustworthy).
    double max_relative_correction = 0.2;
};

// Independent approximation of phi by the eigenvalue-lattice sum
//
//   4 dt^(-alpha) sum_{l1,l2=1..L} (1-e^{-lambda dt}) / (lambda * mu'^alpha)
//                 (cos(pi r l1 sqrt(dt)) - 1)(cos(pi r l2 sqrt(dt)) - 1)
//
// with lambda = theta2 (pi^2 (l1^2+l2^2) + gamma_cap) and the theta2-scaled
// weight mu' = lambda / theta2.  The truncated box sum carries a cutoff tail
// of order L^(-2 alpha); the returned value removes it by Richardson
// extrapolation between the L/2 and L boxes (tail exponent 2 alpha), which
// costs nothing extra since the half box is a partial sum.  Throws
// quadrature_error when the implied correction is too large to trust
// ("cutoff too small").
double phi_lattice_oracle(double r, double alpha, double theta2, const DerivedCoeffs& coeffs,
                          double delta_t, int cutoff, const LatticeOptions& opts = {});

}  // namespace spde2d
