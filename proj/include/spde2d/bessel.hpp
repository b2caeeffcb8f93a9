#pragma once

namespace spde2d {

// Bessel function of the first kind of order zero, absolute error <= 1e-12.
// Power series for small arguments, an integral-representation bridge for the
// mid range where both the series and the asymptotic expansion degrade, and
// the Hankel asymptotic expansion for large arguments.
double bessel_j0(double x);

// k-th positive zero of J0 (k >= 1).  Tabulated for k <= 40, McMahon's
// expansion beyond; accurate to ~1e-12, which is ample for partitioning
// oscillatory integrals into sign-alternating humps.
double bessel_j0_zero(int k);

}  // namespace spde2d
