#include <doctest.h>

#include <cmath>

#include "spde2d/rng.hpp"
#include "spde2d/simulate.hpp"

using namespace spde2d;

namespace {

const SpdeParams kRef{0.0, 0.2, 0.2, 0.2};
const NoiseSpec kNoise{0.5, -19.5, 0.1};
const InitialSpectrum kX0{{{ModeIndex{1, 1}, 3.0}}};

}  // namespace

TEST_CASE("noiseless simulation reproduces the decaying mild solution") {
    NoiseSpec tiny = kNoise;
    tiny.epsilon = 1e-300;  // exact zero is outside (0,1); this is numerically zero
    const TimeGrid grid{16};
    const CoefficientPaths paths =
        simulate_coordinates(kRef, tiny, kX0, Truncation{3, 3}, grid, 99);
    const double lambda = eigenvalue(kRef, ModeIndex{1, 1});
    for (int i = 0; i <= 16; ++i) {
        CHECK(paths.at(i, 1, 1) ==
              doctest::Approx(3.0 * std::exp(-lambda * grid.time(i))).epsilon(1e-12));
        CHECK(std::abs(paths.at(i, 2, 2)) < 1e-290);  // off-support mode carries only the noise
    }
}

TEST_CASE("initial slice equals the spectrum") {
    const CoefficientPaths paths =
        simulate_coordinates(kRef, kNoise, kX0, Truncation{4, 4}, TimeGrid{5}, 1);
    CHECK(paths.at(0, 1, 1) == 3.0);
    CHECK(paths.at(0, 3, 2) == 0.0);
}

TEST_CASE("one-step law matches the closed-form moments") {
    const TimeGrid grid{1};
    const ModeIndex mode{2, 1};
    const Moments m = coordinate_moments(kRef, kNoise, kX0, mode, 1.0);
    const int reps = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        const CoefficientPaths p = simulate_coordinates(kRef, kNoise, kX0, Truncation{2, 1}, grid,
                                                        mix_seed(505, rep));
        const double x = p.at(1, 2, 1);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / reps;
    const double var = sum2 / reps - mean * mean;
    const double se_mean = std::sqrt(m.variance / reps);
    const double se_var = m.variance * std::sqrt(2.0 / (reps - 1));
    CHECK(std::abs(mean - m.mean) < 4.0 * se_mean);
    CHECK(std::abs(var - m.variance) < 4.0 * se_var);
}

TEST_CASE("coordinate moments limits") {
    const Moments at0 = coordinate_moments(kRef, kNoise, kX0, ModeIndex{1, 1}, 0.0);
    CHECK(at0.mean == 3.0);
    CHECK(at0.variance == 0.0);

    // reference-scale values at t = 1
    const Moments at1 = coordinate_moments(kRef, kNoise, kX0, ModeIndex{1, 1}, 1.0);
    CHECK(at1.mean == doctest::Approx(3.0 * std::exp(-4.047842)).epsilon(1e-6));
    CHECK(at1.variance ==
          doctest::Approx(0.01 * std::pow(0.239209, -0.5) * (-std::expm1(-8.095684)) / 8.095684)
              .epsilon(1e-5));
}

TEST_CASE("variance factor is stable in the small-lambda limit") {
    CHECK(ou_variance_factor(0.0, 0.25) == 0.25);
    CHECK(ou_variance_factor(1e-14, 0.25) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(ou_variance_factor(-0.5, 0.1) == doctest::Approx((1.0 - std::exp(0.1)) / (-1.0)).epsilon(1e-12));
    CHECK(ou_variance_factor(2.0, 0.1) ==
          doctest::Approx((1.0 - std::exp(-0.4)) / 4.0).epsilon(1e-12));
}

TEST_CASE("simulation is deterministic and order-independent") {
    const Truncation trunc{6, 5};
    const TimeGrid grid{20};
    const CoefficientPaths a = simulate_coordinates(kRef, kNoise, kX0, trunc, grid, 7, 1);
    const CoefficientPaths b = simulate_coordinates(kRef, kNoise, kX0, trunc, grid, 7, 4);
    CHECK(a.values == b.values);
    const CoefficientPaths c = simulate_coordinates(kRef, kNoise, kX0, trunc, grid, 8, 1);
    CHECK(a.values != c.values);
}

TEST_CASE("mode streams do not depend on the truncation box") {
    // the same mode keeps its path when the truncation grows
    const TimeGrid grid{10};
    const CoefficientPaths small =
        simulate_coordinates(kRef, kNoise, kX0, Truncation{2, 2}, grid, 31);
    const CoefficientPaths large =
        simulate_coordinates(kRef, kNoise, kX0, Truncation{5, 7}, grid, 31);
    for (int i = 0; i <= 10; ++i) {
        CHECK(small.at(i, 2, 2) == large.at(i, 2, 2));
    }
}

TEST_CASE("assemble_field equals the naive oracle and is linear") {
    const Truncation trunc{16, 16};
    const SpatialGrid grid{20, 20};
    const TimeGrid time_grid{10};
    const CoefficientPaths paths = simulate_coordinates(kRef, kNoise, kX0, trunc, time_grid, 2027);
    const FieldData field = assemble_field(paths, kRef, grid, 2);

    Rng pick(99);
    for (int check = 0; check < 25; ++check) {
        const int i = static_cast<int>(pick.next_u64() % 11);
        const int j = 1 + static_cast<int>(pick.next_u64() % 19);
        const int k = 1 + static_cast<int>(pick.next_u64() % 19);
        const double reference = naive_point(paths, kRef, i, grid.y(j), grid.z(k));
        CHECK(field.at(i, j, k) == doctest::Approx(reference).epsilon(1e-10));
    }

    // boundary exact zeros
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 20; ++j) {
            CHECK(field.at(i, j, 0) == 0.0);
            CHECK(field.at(i, j, 20) == 0.0);
            CHECK(field.at(i, 0, j) == 0.0);
            CHECK(field.at(i, 20, j) == 0.0);
        }
    }

    // linearity: scaling coefficients scales the field
    CoefficientPaths doubled = paths;
    for (double& v : doubled.values) v *= 2.0;
    const FieldData field2 = assemble_field(doubled, kRef, grid);
    for (int j = 1; j < 20; j += 7) {
        for (int k = 1; k < 20; k += 7) {
            CHECK(field2.at(5, j, k) == doctest::Approx(2.0 * field.at(5, j, k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("single constant mode assembles to the scaled eigenfunction") {
    CoefficientPaths paths;
    paths.L1 = paths.L2 = 3;
    paths.num_steps = 2;
    paths.values.assign(3 * 3 * 3, 0.0);
    for (int i = 0; i <= 2; ++i) paths.at(i, 1, 1) = 0.7;
    const SpatialGrid grid{8, 8};
    const FieldData field = assemble_field(paths, kRef, grid);
    for (int j = 0; j <= 8; ++j) {
        for (int k = 0; k <= 8; ++k) {
            CHECK(field.at(1, j, k) ==
                  doctest::Approx(0.7 * eigenfunction(kRef, ModeIndex{1, 1}, grid.y(j), grid.z(k)))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("naive_point trivial cases") {
    CoefficientPaths paths;
    paths.L1 = paths.L2 = 2;
    paths.num_steps = 0;
    paths.values.assign(4, 0.0);
    CHECK(naive_point(paths, kRef, 0, 0.3, 0.4) == 0.0);
    paths.at(0, 2, 1) = 1.5;
    CHECK(naive_point(paths, kRef, 0, 0.3, 0.4) ==
          doctest::Approx(1.5 * eigenfunction(kRef, ModeIndex{2, 1}, 0.3, 0.4)).epsilon(1e-13));
}
