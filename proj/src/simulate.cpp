#include "spde2d/simulate.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "spde2d/errors.hpp"
#include "spde2d/parallel.hpp"
#include "spde2d/rng.hpp"

namespace spde2d {

namespace {

using MatrixRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

double ou_variance_factor(double lambda, double t) {
    const double x = lambda * t;
    if (std::abs(x) < 1e-12) return t;  // Taylor value; removes the 0/0 at lambda = 0
    return -std::expm1(-2.0 * x) / (2.0 * lambda);
}

CoefficientPaths simulate_coordinates(const SpdeParams& params, const NoiseSpec& noise,
                                      const InitialSpectrum& spectrum, const Truncation& trunc,
                                      const TimeGrid& time_grid, std::uint64_t seed,
                                      int threads) {
    validate(params);
    validate(noise);
    validate(trunc);
    validate(time_grid);

    const int N = time_grid.num_steps;
    const double dt = time_grid.dt();
    CoefficientPaths paths;
    paths.L1 = trunc.L1;
    paths.L2 = trunc.L2;
    paths.num_steps = N;
    paths.values.assign(static_cast<std::size_t>(N + 1) * trunc.L1 * trunc.L2, 0.0);

    const std::uint64_t stream_root = mix_seed(seed, seed_tag::coordinates);
    const std::size_t slice = static_cast<std::size_t>(trunc.L1) * trunc.L2;

    parallel_for(0, trunc.L1 * trunc.L2, threads, [&](int flat) {
        const int l1 = flat / trunc.L2 + 1;
        const int l2 = flat % trunc.L2 + 1;
        const ModeIndex mode{l1, l2};
        const double lambda = eigenvalue(params, mode);
        const double mu = mu_weight(noise, mode);
        const double decay = std::exp(-lambda * dt);
        const double step_sd = noise.epsilon *
                               std::sqrt(std::pow(mu, -noise.alpha) * ou_variance_factor(lambda, dt));
        Rng rng(mix_seed(mix_seed(stream_root, static_cast<std::uint64_t>(l1)),
                         static_cast<std::uint64_t>(l2)));
        double x = spectrum.coefficient(mode);
        std::size_t idx = static_cast<std::size_t>(flat);
        paths.values[idx] = x;
        for (int i = 1; i <= N; ++i) {
            x = decay * x + step_sd * rng.next_normal();
            idx += slice;
            paths.values[idx] = x;
        }
    });
    return paths;
}

Moments coordinate_moments(const SpdeParams& params, const NoiseSpec& noise,
                           const InitialSpectrum& spectrum, ModeIndex l, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw config_error("coordinate_moments: t must lie in [0,1]");
    const double lambda = eigenvalue(params, l);
    const double mu = mu_weight(noise, l);
    Moments m;
    m.mean = std::exp(-lambda * t) * spectrum.coefficient(l);
    m.variance = noise.epsilon * noise.epsilon * std::pow(mu, -noise.alpha) *
                 ou_variance_factor(lambda, t);
    return m;
}

FieldData assemble_field(const CoefficientPaths& coeffs, const SpdeParams& params,
                         const SpatialGrid& grid, int threads) {
    validate(grid);
    if (coeffs.L1 < 1 || coeffs.L2 < 1 || coeffs.num_steps < 0 ||
        coeffs.values.size() !=
            static_cast<std::size_t>(coeffs.num_steps + 1) * coeffs.L1 * coeffs.L2) {
        throw config_error("assemble_field: coefficient array inconsistent with its dimensions");
    }

    const DerivedCoeffs d = derived_coeffs(params);
    const int rows = grid.M1 + 1;
    const int cols = grid.M2 + 1;

    // Basis matrices; boundary rows are exactly zero by the eigenfunction
    // short-circuit, which makes the boundary slices of the field exact zeros.
    MatrixRM A(rows, coeffs.L1);
    for (int j = 0; j < rows; ++j) {
        for (int l1 = 1; l1 <= coeffs.L1; ++l1) {
            A(j, l1 - 1) = eigenfunction_1d(l1, grid.y(j), d.kappa);
        }
    }
    MatrixRM B(cols, coeffs.L2);
    for (int k = 0; k < cols; ++k) {
        for (int l2 = 1; l2 <= coeffs.L2; ++l2) {
            B(k, l2 - 1) = eigenfunction_1d(l2, grid.z(k), d.eta);
        }
    }

    FieldData field;
    field.num_steps = coeffs.num_steps;
    field.M1 = grid.M1;
    field.M2 = grid.M2;
    field.values.resize(static_cast<std::size_t>(coeffs.num_steps + 1) * rows * cols);
    field.meta.params = params;
    field.meta.trunc = Truncation{coeffs.L1, coeffs.L2};

    parallel_for(0, coeffs.num_steps + 1, threads, [&](int i) {
        Eigen::Map<const MatrixRM> C(coeffs.values.data() + coeffs.slice_offset(i), coeffs.L1,
                                     coeffs.L2);
        Eigen::Map<MatrixRM> X(field.values.data() + static_cast<std::size_t>(i) * rows * cols,
                               rows, cols);
        X.noalias() = A * (C * B.transpose());
    });
    return field;
}

double naive_point(const CoefficientPaths& coeffs, const SpdeParams& params, int t_index,
                   double y, double z) {
    if (t_index < 0 || t_index > coeffs.num_steps) {
        throw config_error("naive_point: time index out of range");
    }
    const DerivedCoeffs d = derived_coeffs(params);
    const std::size_t base = coeffs.slice_offset(t_index);
    double total = 0.0;
    for (int l1 = 1; l1 <= coeffs.L1; ++l1) {
        const double ey = eigenfunction_1d(l1, y, d.kappa);
        double inner = 0.0;
        for (int l2 = 1; l2 <= coeffs.L2; ++l2) {
            inner += coeffs.values[base + static_cast<std::size_t>(l1 - 1) * coeffs.L2 + (l2 - 1)] *
                     eigenfunction_1d(l2, z, d.eta);
        }
        total += ey * inner;
    }
    return total;
}

}  // namespace spde2d
