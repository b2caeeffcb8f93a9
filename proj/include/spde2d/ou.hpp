#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace spde2d {

// Scalar small-dispersion Ornstein-Uhlenbeck model
//   dx = -lambda x dt + epsilon mu^{-alpha/2} dw,   x(0) = x0,
// observed at i/n, i = 0..n.
struct OuParams {
    double lambda = 1.0;
    double mu = 1.0;        // > 0
    double alpha = 0.5;     // in (0,3)
    double epsilon = 0.1;   // in (0,1)
    double x0 = 1.0;        // != 0
    int n = 100;

    double h() const noexcept { return 1.0 / n; }
};

struct OuPath {
    std::vector<double> values;  // length n+1, values[0] = x0
    double h = 0.0;
};

void validate(const OuParams& params);

// Exact one-step transitions; valid for lambda of either sign (the variance
// factor is evaluated stably through expm1).
OuPath simulate_ou(const OuParams& params, std::uint64_t seed);

// Quasi-likelihood contrast
//   sum_i (x_i - e^{-lambda h} x_{i-1})^2 / (eps^2 (1-e^{-2 lambda h})/(2 lambda mu^alpha))
//   + n log[(1-e^{-2 lambda h}) / (2 lambda mu^alpha h)],
// continuous across lambda = 0.  Shared verbatim by the reaction estimator.
double contrast_v(double lambda, double mu, std::span<const double> path, double epsilon,
                  double alpha, double h);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct OuFit {
    double lambda_hat = 0.0;
    std::optional<double> mu_hat;  // engaged in unknown-mu mode
    double contrast = 0.0;
    bool lambda_bound_hit = false;
    bool mu_bound_hit = false;
    bool degenerate = false;  // zero residual energy at the optimum
    int iterations = 0;
};

// Known-mu mode: scalar Brent minimization of contrast_v over lambda.
// Unknown-mu mode: mu is profiled out analytically,
//   mu_hat(lambda)^alpha = n eps^2 (1-e^{-2 lambda h}) / (2 lambda sum residuals^2),
// then a 1-d search over lambda of the profiled contrast; both clamped to
// their boxes.
OuFit fit_ou(std::span<const double> path, double epsilon, double alpha, double h,
             std::optional<double> mu_known, Interval lambda_box, Interval mu_box);

}  // namespace spde2d
