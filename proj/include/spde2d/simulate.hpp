#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spde2d/grids.hpp"
#include "spde2d/model.hpp"

namespace spde2d {

// Sample paths of the retained coordinate processes, time-major:
// value(i, l1, l2) for i = 0..N, 1 <= l1 <= L1, 1 <= l2 <= L2.
struct CoefficientPaths {
    int L1 = 0;
    int L2 = 0;
    int num_steps = 0;
    std::vector<double> values;

    double at(int i, int l1, int l2) const noexcept {
        return values[slice_offset(i) + static_cast<std::size_t>(l1 - 1) * L2 + (l2 - 1)];
    }
    double& at(int i, int l1, int l2) noexcept {
        return values[slice_offset(i) + static_cast<std::size_t>(l1 - 1) * L2 + (l2 - 1)];
    }
    std::size_t slice_offset(int i) const noexcept {
        return static_cast<std::size_t>(i) * L1 * L2;
    }
};

// Exact per-mode Ornstein-Uhlenbeck transitions:
//   x(t_i) = e^{-lambda dt} x(t_{i-1}) + xi_i,
//   xi_i ~ N(0, eps^2 mu^{-alpha} (1-e^{-2 lambda dt}) / (2 lambda)),
// one dedicated stream per mode derived statelessly from (seed, l1, l2).
// Row i = 0 holds the initial spectrum.  Deterministic given (inputs, seed),
// independent of iteration order and thread count.
CoefficientPaths simulate_coordinates(const SpdeParams& params, const NoiseSpec& noise,
                                      const InitialSpectrum& spectrum, const Truncation& trunc,
                                      const TimeGrid& time_grid, std::uint64_t seed,
                                      int threads = 1);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

// Closed-form mean and variance of the coordinate process at time t.
Moments coordinate_moments(const SpdeParams& params, const NoiseSpec& noise,
                           const InitialSpectrum& spectrum, ModeIndex l, double t);

// Stable (1 - e^{-2 lambda t}) / (2 lambda); equals t in the lambda -> 0 limit.
double ou_variance_factor(double lambda, double t);

struct FieldMeta {
    SpdeParams params;
    NoiseSpec noise;
    Truncation trunc;
    std::uint64_t seed = 0;
    std::string config_text;  // free-form provenance, carried through the container
};

// Observed field X[t_i][y_j][z_k] on the full space-time grid, row-major.
// Boundary slices are exactly zero.
struct FieldData {
    int num_steps = 0;  // N
    int M1 = 0;
    int M2 = 0;
    std::vector<double> values;
    FieldMeta meta;

    double at(int i, int j, int k) const noexcept {
        return values[(static_cast<std::size_t>(i) * (M1 + 1) + j) * (M2 + 1) + k];
    }
    double& at(int i, int j, int k) noexcept {
        return values[(static_cast<std::size_t>(i) * (M1 + 1) + j) * (M2 + 1) + k];
    }
    TimeGrid time_grid() const noexcept { return TimeGrid{num_steps}; }
    SpatialGrid spatial_grid() const noexcept { return SpatialGrid{M1, M2}; }
};

// X[t][j][k] = sum_{l1,l2} x_{l1,l2}(t) e1_{l1}(y_j) e2_{l2}(z_k), evaluated
// separably: basis matrices A[j][l1], B[k][l2] are formed once and each time
// slice is the product A * C_t * B^T.  Parallel over time slices.
FieldData assemble_field(const CoefficientPaths& coeffs, const SpdeParams& params,
                         const SpatialGrid& grid, int threads = 1);

// Direct double sum over all retained modes at an arbitrary point; the
// independent oracle for assemble_field.
double naive_point(const CoefficientPaths& coeffs, const SpdeParams& params, int t_index,
                   double y, double z);

}  // namespace spde2d
