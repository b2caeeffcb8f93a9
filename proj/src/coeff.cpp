#include "spde2d/coeff.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "spde2d/errors.hpp"
#include "spde2d/optim.hpp"
#include "spde2d/parallel.hpp"

namespace spde2d {

namespace {

constexpr double kPi = 3.14159265358979323846;

double field_at_thinned(const FieldData& field, const SpatialThinning& t, int i, int j, int k) {
    return field.at(i, t.y_index(j), t.z_index(k));
}

}  // namespace

double triple_increment(const FieldData& field, const SpatialThinning& thinning, int i, int j,
                        int k) {
    if (i < 1 || i > field.num_steps || j < 1 || j > thinning.m1() || k < 1 ||
        k > thinning.m2()) {
        throw config_error("triple_increment: index out of range");
    }
    const auto spatial_diff = [&](int time_index) {
        return field_at_thinned(field, thinning, time_index, j, k) -
               field_at_thinned(field, thinning, time_index, j - 1, k) -
               field_at_thinned(field, thinning, time_index, j, k - 1) +
               field_at_thinned(field, thinning, time_index, j - 1, k - 1);
    };
    return spatial_diff(i) - spatial_diff(i - 1);
}

IncrementStats increment_stats(const FieldData& field, const SpatialThinning& thinning,
                               double alpha, double epsilon, int threads) {
    if (!(alpha > 0.0 && alpha < 3.0)) throw config_error("increment_stats: alpha in (0,3)");
    if (!(epsilon > 0.0)) throw config_error("increment_stats: epsilon must be positive");

    IncrementStats stats;
    stats.m1 = thinning.m1();
    stats.m2 = thinning.m2();
    stats.v.assign(static_cast<std::size_t>(stats.m1) * stats.m2, 0.0);
    stats.r = thinning.r();
    stats.alpha = alpha;
    stats.epsilon = epsilon;
    stats.num_steps = field.num_steps;

    const double dt = field.time_grid().dt();
    const double norm = 1.0 / (epsilon * epsilon * field.num_steps * std::pow(dt, alpha));
    parallel_for(0, stats.m1 * stats.m2, threads, [&](int cell) {
        const int j = cell / stats.m2 + 1;
        const int k = cell % stats.m2 + 1;
        double previous = field_at_thinned(field, thinning, 0, j, k) -
                          field_at_thinned(field, thinning, 0, j - 1, k) -
                          field_at_thinned(field, thinning, 0, j, k - 1) +
                          field_at_thinned(field, thinning, 0, j - 1, k - 1);
        double sum = 0.0;
        for (int i = 1; i <= field.num_steps; ++i) {
            const double current = field_at_thinned(field, thinning, i, j, k) -
                                   field_at_thinned(field, thinning, i, j - 1, k) -
                                   field_at_thinned(field, thinning, i, j, k - 1) +
                                   field_at_thinned(field, thinning, i, j - 1, k - 1);
            const double t = current - previous;
            sum += t * t;
            previous = current;
        }
        stats.v[static_cast<std::size_t>(cell)] = sum * norm;
    });
    return stats;
}

double contrast_u(const IncrementStats& stats, double kappa, double eta, double theta2,
                  const SpatialThinning& thinning, const PhiOptions& phi_opts) {
    const double phi_value = phi(stats.r, stats.alpha, theta2, phi_opts);
    double total = 0.0;
    for (int j = 1; j <= stats.m1; ++j) {
        const double wy = std::exp(-kappa * thinning.ybar(j));
        for (int k = 1; k <= stats.m2; ++k) {
            const double model = wy * std::exp(-eta * thinning.zbar(k)) * phi_value;
            const double diff = stats.at(j, k) - model;
            total += diff * diff;
        }
    }
    return total / (static_cast<double>(stats.m1) * stats.m2);
}

CoeffEstimate fit_coeff(const IncrementStats& stats, const SpatialThinning& thinning,
                        const FitCoeffOptions& opts) {
    const int m = stats.m1 * stats.m2;
    if (m < 4) throw config_error("fit_coeff: need at least 4 cells");

    // Log-linear initialization: log V = c0 - kappa ybar - eta zbar.
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    int used = 0;
    for (int j = 1; j <= stats.m1; ++j) {
        for (int k = 1; k <= stats.m2; ++k) {
            const double v = stats.at(j, k);
            if (!(v > 0.0)) continue;
            const Eigen::Vector3d row(1.0, -thinning.ybar(j), -thinning.zbar(k));
            ata += row * row.transpose();
            atb += row * std::log(v);
            ++used;
        }
    }
    const int dropped = m - used;
    if (2 * dropped > m) {
        std::ostringstream oss;
        oss << "fit_coeff: degenerate data, " << dropped << " of " << m
            << " cells nonpositive";
        throw degenerate_data_error(oss.str());
    }
    const Eigen::Vector3d init = ata.ldlt().solve(atb);
    const double kappa0 = std::clamp(init[1], opts.xi.kappa_min, opts.xi.kappa_max);
    const double eta0 = std::clamp(init[2], opts.xi.eta_min, opts.xi.eta_max);
    // Monotone inversion of phi for the theta2 seed.
    const double theta2_0 = phi_inverse(std::exp(init[0]), stats.r, stats.alpha,
                                        opts.xi.theta2_min, opts.xi.theta2_max, opts.phi);

    const std::vector<double> lo{opts.xi.kappa_min, opts.xi.eta_min, opts.xi.theta2_min};
    const std::vector<double> hi{opts.xi.kappa_max, opts.xi.eta_max, opts.xi.theta2_max};
    const auto objective = [&](const std::vector<double>& p) {
        return contrast_u(stats, p[0], p[1], p[2], thinning, opts.phi);
    };

    // Deterministic jitter factors for the extra starts.
    static constexpr double kJitter[][3] = {
        {0.0, 0.0, 0.0},
        {0.35, -0.35, 0.6},
        {-0.35, 0.35, -0.4},
    };
    SimplexResult best;
    best.value = std::numeric_limits<double>::infinity();
    int total_iterations = 0;
    const int starts = std::clamp(opts.multistarts, 1, 3);
    for (int s = 0; s < starts; ++s) {
        std::vector<double> start{
            kappa0 + kJitter[s][0] * (1.0 + std::abs(kappa0)),
            eta0 + kJitter[s][1] * (1.0 + std::abs(eta0)),
            theta2_0 * (1.0 + kJitter[s][2]),
        };
        SimplexResult run = nelder_mead_box(objective, std::move(start), lo, hi, 1e-13,
                                            opts.max_iterations);
        total_iterations += run.iterations;
        if (run.value < best.value) best = std::move(run);
    }

    CoeffEstimate estimate;
    estimate.kappa_hat = best.x[0];
    estimate.eta_hat = best.x[1];
    estimate.theta2_hat = best.x[2];
    estimate.theta1_hat = estimate.kappa_hat * estimate.theta2_hat;
    estimate.eta1_hat = estimate.eta_hat * estimate.theta2_hat;
    estimate.contrast = best.value;
    estimate.iterations = total_iterations;
    estimate.cells_dropped = dropped;
    const auto near = [](double x, double lo_edge, double hi_edge) {
        const double width = hi_edge - lo_edge;
        return x - lo_edge < 1e-8 * width || hi_edge - x < 1e-8 * width;
    };
    estimate.bound_hit = near(estimate.kappa_hat, opts.xi.kappa_min, opts.xi.kappa_max) ||
                         near(estimate.eta_hat, opts.xi.eta_min, opts.xi.eta_max) ||
                         near(estimate.theta2_hat, opts.xi.theta2_min, opts.xi.theta2_max);
    return estimate;
}

double cov_triple_increment_oracle(const SpdeParams& params, const NoiseSpec& noise,
                                   const SpatialThinning& thinning, const TimeGrid& time_grid,
                                   int i, int i_prime, int j, int k, int j_prime, int k_prime,
                                   int cutoff, const CovOracleOptions& opts) {
    validate(params);
    validate(noise);
    if (cutoff < 1) throw config_error("cov oracle: cutoff must be >= 1");
    const int N = time_grid.num_steps;
    if (i < 1 || i > N || i_prime < 1 || i_prime > N) {
        throw config_error("cov oracle: time index out of range");
    }
    if (j < 1 || j > thinning.m1() || j_prime < 1 || j_prime > thinning.m1() || k < 1 ||
        k > thinning.m2() || k_prime < 1 || k_prime > thinning.m2()) {
        throw config_error("cov oracle: cell index out of range");
    }

    const DerivedCoeffs d = derived_coeffs(params);
    const double dt = time_grid.dt();

    // 1-d eigenfunction differences across the two cells, per direction.
    std::vector<double> dy(static_cast<std::size_t>(cutoff)), dyp(dy), dz(dy), dzp(dy);
    for (int l = 1; l <= cutoff; ++l) {
        const std::size_t idx = static_cast<std::size_t>(l - 1);
        dy[idx] = eigenfunction_1d(l, thinning.ytilde(j), d.kappa) -
                  eigenfunction_1d(l, thinning.ytilde(j - 1), d.kappa);
        dyp[idx] = eigenfunction_1d(l, thinning.ytilde(j_prime), d.kappa) -
                   eigenfunction_1d(l, thinning.ytilde(j_prime - 1), d.kappa);
        dz[idx] = eigenfunction_1d(l, thinning.ztilde(k), d.eta) -
                  eigenfunction_1d(l, thinning.ztilde(k - 1), d.eta);
        dzp[idx] = eigenfunction_1d(l, thinning.ztilde(k_prime), d.eta) -
                   eigenfunction_1d(l, thinning.ztilde(k_prime - 1), d.eta);
    }

    const bool same_time = (i == i_prime);
    const double j_gap = same_time ? 2.0 * (i - 1) : static_cast<double>(std::abs(i - i_prime) - 1);
    const double j_sum = static_cast<double>(i) + i_prime - 2.0;

    double total = 0.0;
    for (int l1 = 1; l1 <= cutoff; ++l1) {
        const double wy = dy[static_cast<std::size_t>(l1 - 1)] * dyp[static_cast<std::size_t>(l1 - 1)];
        const double l1sq = static_cast<double>(l1) * l1;
        for (int l2 = 1; l2 <= cutoff; ++l2) {
            const double ss = l1sq + static_cast<double>(l2) * l2;
            const double lambda = params.theta2 * (kPi * kPi * ss + d.gamma_cap);
            const double mu = kPi * kPi * ss + noise.mu0;
            const double weight = wy * dz[static_cast<std::size_t>(l2 - 1)] *
                                  dzp[static_cast<std::size_t>(l2 - 1)] * std::pow(mu, -noise.alpha);
            const double one_minus = -std::expm1(-lambda * dt);
            double contribution;
            if (same_time) {
                contribution = (one_minus -
                                0.5 * one_minus * one_minus * std::exp(-j_gap * lambda * dt)) /
                               lambda;
            } else {
                contribution = -0.5 * one_minus * one_minus *
                               (std::exp(-j_gap * lambda * dt) + std::exp(-j_sum * lambda * dt)) /
                               lambda;
            }
            total += weight * contribution;
        }
    }
    const double eps2 = noise.epsilon * noise.epsilon;

    if (opts.max_relative_tail > 0.0) {
        // Crude tail bound for the untruncated model: |summand| is at most
        // 64 e^{|kappa|+|eta|} mu^{-alpha} / lambda, and the radial comparison
        // integral over the discarded modes gives
        //   (pi/2) pi^{-2 alpha - 2} / theta2 * cutoff^{-2 alpha} / (2 alpha),
        // doubled to absorb the mu0 shift.
        const double amp = 64.0 * std::exp(std::abs(d.kappa) + std::abs(d.eta));
        const double tail = 2.0 * amp * 0.5 * kPi * std::pow(kPi, -2.0 * noise.alpha - 2.0) /
                            params.theta2 *
                            std::pow(static_cast<double>(cutoff), -2.0 * noise.alpha) /
                            (2.0 * noise.alpha);
        if (tail > opts.max_relative_tail * std::abs(total)) {
            throw quadrature_error("cov oracle: cutoff too small for the requested tail bound");
        }
    }
    return eps2 * total;
}

}  // namespace spde2d
