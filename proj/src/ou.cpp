#include "spde2d/ou.hpp"

#include <algorithm>
#include <cmath>

#include "spde2d/errors.hpp"
#include "spde2d/optim.hpp"
#include "spde2d/rng.hpp"
#include "spde2d/simulate.hpp"

namespace spde2d {

void validate(const OuParams& params) {
    if (!(params.mu > 0.0)) throw config_error("ou: mu must be positive");
    if (!(params.alpha > 0.0 && params.alpha < 3.0)) throw config_error("ou: alpha in (0,3)");
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) throw config_error("ou: epsilon in (0,1)");
    if (params.x0 == 0.0) throw config_error("ou: x0 must be nonzero");
    if (params.n < 1) throw config_error("ou: n must be >= 1");
}

OuPath simulate_ou(const OuParams& params, std::uint64_t seed) {
    validate(params);
    const double h = params.h();
    const double decay = std::exp(-params.lambda * h);
    const double step_sd = params.epsilon * std::sqrt(std::pow(params.mu, -params.alpha) *
                                                      ou_variance_factor(params.lambda, h));
    OuPath path;
    path.h = h;
    path.values.resize(static_cast<std::size_t>(params.n) + 1);
    path.values[0] = params.x0;
    Rng rng(mix_seed(seed, seed_tag::ou_path));
    for (int i = 1; i <= params.n; ++i) {
        path.values[static_cast<std::size_t>(i)] =
            decay * path.values[static_cast<std::size_t>(i - 1)] + step_sd * rng.next_normal();
    }
    return path;
}

namespace {

double residual_energy(double lambda, std::span<const double> x, double h) {
    const double decay = std::exp(-lambda * h);
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double diff = x[i] - decay * x[i - 1];
        sum += diff * diff;
    }
    return sum;
}

}  // namespace

double contrast_v(double lambda, double mu, std::span<const double> path, double epsilon,
                  double alpha, double h) {
    if (!(mu > 0.0)) throw config_error("contrast_v: mu must be positive");
    const int n = static_cast<int>(path.size()) - 1;
    const double w = ou_variance_factor(lambda, h);
    const double mu_alpha = std::pow(mu, alpha);
    const double variance = epsilon * epsilon * w / mu_alpha;
    return residual_energy(lambda, path, h) / variance + n * std::log(w / (mu_alpha * h));
}

OuFit fit_ou(std::span<const double> path, double epsilon, double alpha, double h,
             std::optional<double> mu_known, Interval lambda_box, Interval mu_box) {
    if (path.size() < 3) throw config_error("fit_ou: need n >= 2 observations");
    if (!(lambda_box.lo < lambda_box.hi)) throw config_error("fit_ou: empty lambda box");
    const int n = static_cast<int>(path.size()) - 1;

    OuFit fit;
    if (mu_known.has_value()) {
        if (!(*mu_known > 0.0)) throw config_error("fit_ou: known mu must be positive");
        const auto objective = [&](double lambda) {
            return contrast_v(lambda, *mu_known, path, epsilon, alpha, h);
        };
        const ScalarMinResult res = brent_minimize(objective, lambda_box.lo, lambda_box.hi, 1e-10);
        fit.lambda_hat = res.x;
        fit.contrast = res.value;
        fit.iterations = res.iterations;
        fit.degenerate = residual_energy(res.x, path, h) == 0.0;
    } else {
        if (!(mu_box.lo > 0.0 && mu_box.lo < mu_box.hi)) {
            throw config_error("fit_ou: mu box must be positive and nonempty");
        }
        const auto mu_profile = [&](double lambda) {
            const double s = residual_energy(lambda, path, h);
            if (s <= 0.0) return mu_box.hi;  // flat residual: push mu to its cap
            const double w = ou_variance_factor(lambda, h);
            const double mu_alpha = n * epsilon * epsilon * w / s;
            return std::clamp(std::pow(mu_alpha, 1.0 / alpha), mu_box.lo, mu_box.hi);
        };
        const auto objective = [&](double lambda) {
            return contrast_v(lambda, mu_profile(lambda), path, epsilon, alpha, h);
        };
        const ScalarMinResult res = brent_minimize(objective, lambda_box.lo, lambda_box.hi, 1e-10);
        fit.lambda_hat = res.x;
        fit.contrast = res.value;
        fit.iterations = res.iterations;
        const double mu_hat = mu_profile(res.x);
        fit.mu_hat = mu_hat;
        const double mu_width = mu_box.hi - mu_box.lo;
        fit.mu_bound_hit = mu_hat - mu_box.lo < 1e-8 * mu_width || mu_box.hi - mu_hat < 1e-8 * mu_width;
        fit.degenerate = residual_energy(res.x, path, h) == 0.0;
    }
    const double lam_width = lambda_box.hi - lambda_box.lo;
    fit.lambda_bound_hit = fit.lambda_hat - lambda_box.lo < 1e-8 * lam_width ||
                           lambda_box.hi - fit.lambda_hat < 1e-8 * lam_width;
    return fit;
}

}  // namespace spde2d
