#include <doctest.h>

#include <cmath>

#include "spde2d/errors.hpp"
#include "spde2d/model.hpp"

using namespace spde2d;

namespace {
constexpr double kPi = 3.14159265358979323846;
const SpdeParams kRef{0.0, 0.2, 0.2, 0.2};
}  // namespace

TEST_CASE("derived_coeffs reproduces the displayed reparameterization") {
    const DerivedCoeffs d = derived_coeffs(kRef);
    CHECK(d.kappa == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.eta == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.gamma_cap == doctest::Approx(0.5).epsilon(1e-15));

    const DerivedCoeffs zero = derived_coeffs(SpdeParams{0.0, 0.0, 0.0, 1.0});
    CHECK(zero.kappa == 0.0);
    CHECK(zero.eta == 0.0);
    CHECK(zero.gamma_cap == 0.0);

    const DerivedCoeffs reaction_only = derived_coeffs(SpdeParams{0.1, 0.0, 0.0, 0.2});
    CHECK(reaction_only.gamma_cap == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("derived_coeffs round-trips theta1/eta1 to machine precision") {
    const SpdeParams params{1.3, -0.7, 0.45, 0.37};
    const DerivedCoeffs d = derived_coeffs(params);
    CHECK(d.kappa * params.theta2 == doctest::Approx(params.theta1).epsilon(1e-14));
    CHECK(d.eta * params.theta2 == doctest::Approx(params.eta1).epsilon(1e-14));
}

TEST_CASE("eigenvalue matches direct formula evaluations") {
    CHECK(eigenvalue(kRef, ModeIndex{1, 1}) == doctest::Approx(0.2 * (2 * kPi * kPi + 0.5)).epsilon(1e-12));
    CHECK(eigenvalue(kRef, ModeIndex{1, 1}) == doctest::Approx(4.047842).epsilon(1e-6));
    CHECK(eigenvalue(kRef, ModeIndex{2, 1}) == doctest::Approx(9.969603).epsilon(1e-6));

    const SpdeParams diffusion_only{0.0, 0.0, 0.0, 0.7};
    CHECK(eigenvalue(diffusion_only, ModeIndex{3, 2}) ==
          doctest::Approx(0.7 * kPi * kPi * 13.0).epsilon(1e-13));
}

TEST_CASE("eigenvalue grows with frequency and scales with theta2 at fixed shape") {
    double previous = 0.0;
    for (int s = 2; s <= 40; ++s) {
        // scan modes with l1^2 + l2^2 == s where possible; use (1, k) ladder
        const double lambda = eigenvalue(kRef, ModeIndex{1, s});
        CHECK(lambda > previous);
        previous = lambda;
    }
}

TEST_CASE("eigenfunction vanishes on the boundary exactly") {
    for (int l1 = 1; l1 <= 4; ++l1) {
        CHECK(eigenfunction(kRef, ModeIndex{l1, 2}, 0.0, 0.37) == 0.0);
        CHECK(eigenfunction(kRef, ModeIndex{l1, 2}, 1.0, 0.37) == 0.0);
        CHECK(eigenfunction(kRef, ModeIndex{2, l1}, 0.37, 0.0) == 0.0);
        CHECK(eigenfunction(kRef, ModeIndex{2, l1}, 0.37, 1.0) == 0.0);
    }
}

TEST_CASE("eigenfunction interior values") {
    // kappa = eta = 0: plain sine product, value 2 at the center for mode (1,1)
    const SpdeParams plain{0.0, 0.0, 0.0, 1.0};
    CHECK(eigenfunction(plain, ModeIndex{1, 1}, 0.5, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
    // kappa = eta = 1: damped by e^{-1/2}
    CHECK(eigenfunction(kRef, ModeIndex{1, 1}, 0.5, 0.5) ==
          doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-12));
    CHECK(eigenfunction(kRef, ModeIndex{1, 1}, 0.5, 0.5) == doctest::Approx(1.213061).epsilon(1e-6));
}

TEST_CASE("mu_weight values and rejection") {
    const NoiseSpec noise{0.5, -19.5, 0.1};
    CHECK(mu_weight(noise, ModeIndex{1, 1}) == doctest::Approx(2 * kPi * kPi - 19.5).epsilon(1e-12));
    CHECK(mu_weight(noise, ModeIndex{1, 1}) == doctest::Approx(0.239209).epsilon(1e-5));
    CHECK(mu_weight(noise, ModeIndex{2, 2}) == doctest::Approx(8 * kPi * kPi - 19.5).epsilon(1e-12));
    CHECK(mu_weight(NoiseSpec{0.5, 0.0, 0.1}, ModeIndex{1, 1}) ==
          doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("noise spec validation enforces the admissible ranges") {
    CHECK_THROWS_AS(validate(NoiseSpec{0.0, 0.0, 0.1}), config_error);
    CHECK_THROWS_AS(validate(NoiseSpec{3.0, 0.0, 0.1}), config_error);
    CHECK_THROWS_AS(validate(NoiseSpec{0.5, -2 * kPi * kPi, 0.1}), config_error);
    CHECK_THROWS_AS(validate(NoiseSpec{0.5, 0.0, 1.0}), config_error);
    CHECK_NOTHROW(validate(NoiseSpec{0.5, -19.5, 0.1}));
}

TEST_CASE("weighted inner product recovers orthonormality by quadrature") {
    const DerivedCoeffs d = derived_coeffs(kRef);
    const auto e11 = [&](double y, double z) { return eigenfunction(kRef, ModeIndex{1, 1}, y, z); };
    const auto e21 = [&](double y, double z) { return eigenfunction(kRef, ModeIndex{2, 1}, y, z); };

    CHECK(weighted_inner_product(e11, e11, d.kappa, d.eta, 400, 400) ==
          doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::abs(weighted_inner_product(e11, e21, d.kappa, d.eta, 400, 400)) < 1e-4);

    const auto zero = [](double, double) { return 0.0; };
    CHECK(weighted_inner_product(zero, zero, d.kappa, d.eta, 10, 10) == 0.0);

    CHECK_THROWS_AS(weighted_inner_product(e11, e11, 0.0, 0.0, 1, 10), config_error);
}

TEST_CASE("weighted inner product error decreases with grid refinement") {
    const DerivedCoeffs d = derived_coeffs(kRef);
    const auto e11 = [&](double y, double z) { return eigenfunction(kRef, ModeIndex{1, 1}, y, z); };
    double previous = 1.0;
    for (int grid : {50, 100, 200, 400}) {
        const double err = std::abs(weighted_inner_product(e11, e11, d.kappa, d.eta, grid, grid) - 1.0);
        // strict decrease until the value reaches the roundoff floor
        CHECK((err < previous || err < 1e-12));
        previous = err;
    }
}

TEST_CASE("check_a1 closed forms") {
    const InitialSpectrum three_e11{{{ModeIndex{1, 1}, 3.0}}};
    const double lambda11 = eigenvalue(kRef, ModeIndex{1, 1});
    CHECK(check_a1(three_e11, kRef, 2.99) ==
          doctest::Approx(9.0 * std::pow(lambda11, 3.99)).epsilon(1e-12));

    CHECK(check_a1(InitialSpectrum{}, kRef, 1.0) == 0.0);

    const InitialSpectrum two{{{ModeIndex{1, 1}, 1.0}, {ModeIndex{2, 2}, 1.0}}};
    const double lambda22 = eigenvalue(kRef, ModeIndex{2, 2});
    CHECK(check_a1(two, kRef, 1.0) ==
          doctest::Approx(lambda11 * lambda11 + lambda22 * lambda22).epsilon(1e-12));
}

TEST_CASE("spde params validation") {
    CHECK_THROWS_AS(validate(SpdeParams{0.0, 0.2, 0.2, -1.0}), config_error);
    // theta0 large enough to push lambda(1,1) below zero
    CHECK_THROWS_AS(validate(SpdeParams{4.0, 0.0, 0.0, 0.1}, ThetaBox{}), config_error);
    CHECK_THROWS_AS(validate(SpdeParams{0.0, 3.0, 0.0, 0.2}), config_error);  // outside box
    CHECK_NOTHROW(validate(kRef));
}

TEST_CASE("initial spectrum rejects duplicates and exposes the dominant mode") {
    CHECK_THROWS_AS(InitialSpectrum({{ModeIndex{1, 1}, 1.0}, {ModeIndex{1, 1}, 2.0}}), config_error);
    const InitialSpectrum s{{{ModeIndex{2, 1}, -4.0}, {ModeIndex{1, 1}, 3.0}}};
    CHECK(s.dominant_mode() == ModeIndex{2, 1});
    CHECK(s.coefficient(ModeIndex{1, 1}) == 3.0);
    CHECK(s.coefficient(ModeIndex{5, 5}) == 0.0);
}
