#pragma once

#include <vector>

#include "spde2d/grids.hpp"
#include "spde2d/model.hpp"
#include "spde2d/phi.hpp"
#include "spde2d/simulate.hpp"

namespace spde2d {

// Normalized per-cell sums of squared triple increments:
//   V[j][k] = (eps^2 N dt^alpha)^{-1} sum_{i=1..N} (T_{i,j,k} X)^2.
struct IncrementStats {
    int m1 = 0;
    int m2 = 0;
    std::vector<double> v;  // row-major (m1 x m2), cell (j,k) at (j-1)*m2+(k-1)
    double r = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;
    int num_steps = 0;

    double at(int j, int k) const noexcept {
        return v[static_cast<std::size_t>(j - 1) * m2 + (k - 1)];
    }
    double& at(int j, int k) noexcept {
        return v[static_cast<std::size_t>(j - 1) * m2 + (k - 1)];
    }
};

// Eight-point alternating sum over the 2x2x2 cube of (time, ytilde, ztilde)
// nodes: one difference in time and one in each spatial direction.
double triple_increment(const FieldData& field, const SpatialThinning& thinning, int i, int j,
                        int k);

IncrementStats increment_stats(const FieldData& field, const SpatialThinning& thinning,
                               double alpha, double epsilon, int threads = 1);

// Least-squares contrast between V and its limit profile
// e^{-kappa ybar - eta zbar} phi_{r,alpha}(theta2).
double contrast_u(const IncrementStats& stats, double kappa, double eta, double theta2,
                  const SpatialThinning& thinning, const PhiOptions& phi_opts = {});

// Compact search box for (kappa, eta, theta2).
struct XiBox {
    double kappa_min = -10.0, kappa_max = 10.0;
    double eta_min = -10.0, eta_max = 10.0;
    double theta2_min = 0.01, theta2_max = 5.0;
};

struct CoeffEstimate {
    double kappa_hat = 0.0;
    double eta_hat = 0.0;
    double theta2_hat = 0.0;
    double theta1_hat = 0.0;  // = kappa_hat * theta2_hat, exactly
    double eta1_hat = 0.0;    // = eta_hat * theta2_hat, exactly
    double contrast = 0.0;
    int iterations = 0;
    bool bound_hit = false;
    int cells_dropped = 0;  // nonpositive cells excluded from the log-linear start
};

struct FitCoeffOptions {
    XiBox xi;
    PhiOptions phi;
    int multistarts = 3;
    int max_iterations = 400;
};

// Minimum-contrast fit of (kappa, eta, theta2).  Initialization: log-linear
// least squares on log V (nonpositive cells dropped, fit aborts if more than
// half drop), theta2 seeded by inverting the monotone theta2 -> phi map on
// the fitted intercept, then simplex refinement clamped to the box with
// deterministic jittered restarts.
CoeffEstimate fit_coeff(const IncrementStats& stats, const SpatialThinning& thinning,
                        const FitCoeffOptions& opts = {});

struct CovOracleOptions {
    // Reject when the crude bound on the discarded mode tail exceeds this
    // fraction of the returned value.
    double max_relative_tail = 0.0;  // <= 0 disables the check
};

// Exact covariance of two triple increments of the mode-truncated field,
//   Cov[T_{i,j,k} X, T_{i',j',k'} X],
// evaluated from the eigenvalue sums; the two time branches (i = i' and
// i != i') are handled separately.  With cutoff equal to the simulation
// truncation this is exact for simulated data; for the untruncated model the
// cutoff tail can be bounded and optionally enforced.
double cov_triple_increment_oracle(const SpdeParams& params, const NoiseSpec& noise,
                                   const SpatialThinning& thinning, const TimeGrid& time_grid,
                                   int i, int i_prime, int j, int k, int j_prime, int k_prime,
                                   int cutoff, const CovOracleOptions& opts = {});

}  // namespace spde2d
