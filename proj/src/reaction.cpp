#include "spde2d/reaction.hpp"

#include <cmath>

#include "spde2d/errors.hpp"
#include "spde2d/parallel.hpp"

namespace spde2d {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

}  // namespace

double g_l(double x, double a, int l) {
    if (l < 1) throw config_error("g_l: l must be >= 1");
    const double half_a = 0.5 * a;
    const double pil = kPi * l;
    return kSqrt2 * std::exp(half_a * x) *
           (half_a * std::sin(pil * x) - pil * std::cos(pil * x)) /
           (half_a * half_a + pil * pil);
}

ApproxCoordinatePath approx_coordinate_path(const FieldData& field, ModeIndex mode,
                                            double kappa_hat, double eta_hat,
                                            const TemporalThinning& thinning, int threads) {
    validate(mode);
    if (thinning.time_index(thinning.n()) > field.num_steps) {
        throw config_error("approx_coordinate_path: thinned times exceed the field horizon");
    }
    const int M1 = field.M1;
    const int M2 = field.M2;

    // Cell weights: differences of the antiderivative across each grid cell.
    std::vector<double> wy(static_cast<std::size_t>(M1)), wz(static_cast<std::size_t>(M2));
    for (int j = 1; j <= M1; ++j) {
        wy[static_cast<std::size_t>(j - 1)] = g_l(static_cast<double>(j) / M1, kappa_hat, mode.l1) -
                                              g_l(static_cast<double>(j - 1) / M1, kappa_hat, mode.l1);
    }
    for (int k = 1; k <= M2; ++k) {
        wz[static_cast<std::size_t>(k - 1)] = g_l(static_cast<double>(k) / M2, eta_hat, mode.l2) -
                                              g_l(static_cast<double>(k - 1) / M2, eta_hat, mode.l2);
    }

    ApproxCoordinatePath path;
    path.mode = mode;
    path.kappa_used = kappa_hat;
    path.eta_used = eta_hat;
    path.delta_n = thinning.delta_n();
    path.values.assign(static_cast<std::size_t>(thinning.n()) + 1, 0.0);

    parallel_for(0, thinning.n() + 1, threads, [&](int i) {
        const int t_index = thinning.time_index(i);
        double total = 0.0;
        for (int j = 1; j <= M1; ++j) {
            const double* row = &field.values[(static_cast<std::size_t>(t_index) * (M1 + 1) +
                                               (j - 1)) * (M2 + 1)];
            double inner = 0.0;
            for (int k = 1; k <= M2; ++k) {
                inner += row[k - 1] * wz[static_cast<std::size_t>(k - 1)];
            }
            total += inner * wy[static_cast<std::size_t>(j - 1)];
        }
        path.values[static_cast<std::size_t>(i)] = total;
    });
    return path;
}

AsymptoticVariances asymptotic_variances(double lambda_star, double mu_star, double x0,
                                         double alpha) {
    if (x0 == 0.0) throw config_error("asymptotic_variances: x0 must be nonzero");
    if (!(mu_star > 0.0)) throw config_error("asymptotic_variances: mu must be positive");
    AsymptoticVariances v;
    v.g = ou_variance_factor(lambda_star, 1.0) * std::pow(mu_star, alpha) * x0 * x0;
    v.h = alpha * alpha / (2.0 * mu_star * mu_star);
    v.i_diag[0] = v.g;
    v.i_diag[1] = v.h;
    v.script_g = 1.0 / v.g;
    v.script_i[0] = 1.0 / v.g;
    v.script_i[1] = 1.0 / v.h;
    return v;
}

ReactionEstimate estimate_reaction(const ApproxCoordinatePath& path, const CoeffEstimate& coeff,
                                   const NoiseSpec& noise, std::optional<double> mu0_known,
                                   Interval lambda_box, Interval mu_box,
                                   std::optional<double> x0_known) {
    if (path.values.size() < 3) throw config_error("estimate_reaction: need n >= 2");
    const double mode_ss = static_cast<double>(path.mode.l1) * path.mode.l1 +
                           static_cast<double>(path.mode.l2) * path.mode.l2;
    const double pi2_ss = kPi * kPi * mode_ss;

    std::optional<double> mu_fixed;
    if (mu0_known.has_value()) {
        mu_fixed = pi2_ss + *mu0_known;
        if (!(*mu_fixed > 0.0)) throw config_error("estimate_reaction: known mu0 gives mu <= 0");
    }

    const int n = static_cast<int>(path.values.size()) - 1;
    const OuFit fit = fit_ou(path.values, noise.epsilon, noise.alpha, path.delta_n, mu_fixed,
                             lambda_box, mu_box);

    ReactionEstimate est;
    est.lambda_hat = fit.lambda_hat;
    est.contrast = fit.contrast;
    est.lambda_bound_hit = fit.lambda_bound_hit;
    est.mu_bound_hit = fit.mu_bound_hit;
    est.degenerate = fit.degenerate;
    est.theta0_hat = -fit.lambda_hat +
                     coeff.theta2_hat *
                         ((coeff.kappa_hat * coeff.kappa_hat + coeff.eta_hat * coeff.eta_hat) / 4.0 +
                          pi2_ss);
    if (!mu0_known.has_value()) {
        est.mu_hat = fit.mu_hat;
        est.mu0_hat = *fit.mu_hat - pi2_ss;
    }

    const double x0 = x0_known.has_value() ? *x0_known : path.values.front();
    est.used_known_x0 = x0_known.has_value();
    if (x0 != 0.0) {
        const double mu_for_var = mu0_known.has_value() ? *mu_fixed : *fit.mu_hat;
        const AsymptoticVariances v =
            asymptotic_variances(fit.lambda_hat, mu_for_var, x0, noise.alpha);
        est.sd_theta0 = noise.epsilon * std::sqrt(v.script_g);
        if (!mu0_known.has_value()) {
            est.sd_mu0 = std::sqrt(v.script_i[1] / n);
        }
    }
    return est;
}

}  // namespace spde2d
