#include "spde2d/phi.hpp"

#include <cmath>
#include <sstream>

#include "spde2d/bessel.hpp"
#include "spde2d/errors.hpp"
#include "spde2d/quadrature.hpp"

namespace spde2d {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

// Gaussian factor (1 - e^{-x^2}) is 1 to machine precision beyond this point.
constexpr double kGaussCut = 8.0;

void check_phi_domain(double r, double alpha, double theta2) {
    if (!(r > 0.0)) throw config_error("phi: r must be positive");
    if (!(alpha > 0.0 && alpha < 3.0)) throw config_error("phi: alpha must lie in (0,3)");
    if (!(theta2 > 0.0)) throw config_error("phi: theta2 must be positive");
}

// J0(sqrt(2) u) - 2 J0(u) + 1.  The direct difference of three O(1) values
// loses all digits for small u (the true value is ~u^4/32), so below u = 1
// the combination is summed by its own series
//   sum_{k>=2} (-1)^k (2^k - 2)/(k!)^2 (u^2/4)^k,
// whose k = 0,1 terms cancel exactly.
double j0_combo(double u) {
    u = std::abs(u);
    if (u >= 1.0) {
        return bessel_j0(kSqrt2 * u) - 2.0 * bessel_j0(u) + 1.0;
    }
    const double q = 0.25 * u * u;
    double q_pow = q * q;      // (u^2/4)^k starting at k = 2
    double two_pow = 4.0;      // 2^k
    double factorial = 2.0;    // k!
    double sum = 0.0;
    for (int k = 2; k <= 24; ++k) {
        const double term = (two_pow - 2.0) / (factorial * factorial) * q_pow;
        sum += (k % 2 == 0) ? term : -term;
        if (term < 1e-18 * std::abs(sum) + 1e-300) break;
        q_pow *= q;
        two_pow *= 2.0;
        factorial *= (k + 1.0);
    }
    return sum;
}

// int_{x0}^{inf} x^(-1-2 alpha) J0(beta x) dx as an alternating sum of humps
// between consecutive zeros of J0(beta x).
double bessel_tail(double beta, double alpha, double x0, double abs_tol) {
    const auto hump = [&](double lo, double hi) {
        return gauss_kronrod_15(
                   [&](double x) { return std::pow(x, -1.0 - 2.0 * alpha) * bessel_j0(beta * x); },
                   lo, hi)
            .value;
    };
    // Index of the first J0 zero beyond beta*x0.
    int first = 1;
    while (bessel_j0_zero(first) <= beta * x0) ++first;
    const auto term = [&](int k) {
        const double lo = (k == 0) ? x0 : bessel_j0_zero(first + k - 1) / beta;
        const double hi = bessel_j0_zero(first + k) / beta;
        return hump(lo, hi);
    };
    return alternating_series_sum(term, abs_tol);
}

}  // namespace

PhiResult phi_detailed(double r, double alpha, double theta2, const PhiOptions& opts) {
    check_phi_domain(r, alpha, theta2);
    const double c = r / std::sqrt(theta2);
    const double prefactor = 2.0 / (std::pow(theta2, 1.0 - alpha) * kPi);
    const double tol_integral = opts.abs_tol / prefactor;

    const auto integrand = [&](double x) {
        return std::pow(x, -1.0 - 2.0 * alpha) * (-std::expm1(-x * x)) * j0_combo(c * x);
    };

    // Head [0,1]: endpoint behavior x^{5-2 alpha}, no oscillation issues.
    const QuadResult head = integrate_adaptive(integrand, 0.0, 1.0, 0.25 * tol_integral,
                                               opts.max_panels);

    // Oscillatory mid range [1, kGaussCut]: panels no wider than a quarter
    // period of the fastest Bessel factor, each panel refined adaptively.
    const double quarter_period = 0.25 * 2.0 * kPi / (kSqrt2 * c);
    const double width = std::min(1.0, quarter_period);
    const int n_mid = std::max(1, static_cast<int>(std::ceil((kGaussCut - 1.0) / width)));
    double mid_value = 0.0;
    double mid_error = 0.0;
    const double mid_tol = 0.25 * tol_integral / n_mid;
    for (int i = 0; i < n_mid; ++i) {
        const double a = 1.0 + (kGaussCut - 1.0) * i / n_mid;
        const double b = 1.0 + (kGaussCut - 1.0) * (i + 1) / n_mid;
        const QuadResult part = integrate_adaptive(integrand, a, b, mid_tol, opts.max_panels);
        mid_value += part.value;
        mid_error += part.error;
    }

    // Tail beyond kGaussCut: the Gaussian factor is gone, so
    //   integral = x0^{-2 alpha}/(2 alpha)            (the "+1" term)
    //            + T(sqrt(2) c) - 2 T(c)              (the Bessel terms)
    // and the discarded e^{-x^2} piece is bounded by 4 e^{-64} x0^{-2 alpha}.
    const double power_term = std::pow(kGaussCut, -2.0 * alpha) / (2.0 * alpha);
    const double tail_tol = 0.125 * tol_integral;
    const double tail = bessel_tail(kSqrt2 * c, alpha, kGaussCut, tail_tol) -
                        2.0 * bessel_tail(c, alpha, kGaussCut, tail_tol);

    PhiResult result;
    result.value = prefactor * (head.value + mid_value + power_term + tail);
    result.error_estimate = prefactor * (head.error + mid_error + 3.0 * tail_tol);
    return result;
}

double phi(double r, double alpha, double theta2, const PhiOptions& opts) {
    return phi_detailed(r, alpha, theta2, opts).value;
}

double phi_inverse(double target, double r, double alpha, double lo, double hi,
                   const PhiOptions& opts) {
    if (!(lo > 0.0 && hi > lo)) throw config_error("phi_inverse: need 0 < lo < hi");
    double f_lo = phi(r, alpha, lo, opts);
    double f_hi = phi(r, alpha, hi, opts);
    if (target >= f_lo) return lo;
    if (target <= f_hi) return hi;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * (1.0 + hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = phi(r, alpha, mid, opts);
        if (f_mid > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double phi_lattice_oracle(double r, double alpha, double theta2, const DerivedCoeffs& coeffs,
                          double delta_t, int cutoff, const LatticeOptions& opts) {
    check_phi_domain(r, alpha, theta2);
    if (!(delta_t > 0.0 && delta_t < 1.0)) throw config_error("phi_lattice_oracle: delta_t in (0,1)");
    if (cutoff < 2) throw config_error("phi_lattice_oracle: cutoff must be >= 2");

    const int half = cutoff / 2;
    const double sqrt_dt = std::sqrt(delta_t);

    std::vector<double> cos_factor(static_cast<std::size_t>(cutoff) + 1, 0.0);
    for (int l = 1; l <= cutoff; ++l) {
        cos_factor[static_cast<std::size_t>(l)] = std::cos(kPi * r * l * sqrt_dt) - 1.0;
    }

    // sum_box(L) accumulated incrementally: half box first, then the shell.
    double sum_half = 0.0;
    double sum_full = 0.0;
    for (int l1 = 1; l1 <= cutoff; ++l1) {
        double row = 0.0;
        double row_half = 0.0;
        const double l1sq = static_cast<double>(l1) * l1;
        for (int l2 = 1; l2 <= cutoff; ++l2) {
            const double ss = l1sq + static_cast<double>(l2) * l2;
            const double mu_scaled = kPi * kPi * ss + coeffs.gamma_cap;
            const double lambda = theta2 * mu_scaled;
            const double summand = -std::expm1(-lambda * delta_t) / lambda *
                                   std::pow(mu_scaled, -alpha) *
                                   cos_factor[static_cast<std::size_t>(l1)] *
                                   cos_factor[static_cast<std::size_t>(l2)];
            row += summand;
            if (l1 <= half && l2 <= half) row_half += summand;
        }
        sum_full += row;
        sum_half += row_half;
    }
    const double scale = 4.0 * std::pow(delta_t, -alpha);
    const double box_full = scale * sum_full;
    const double box_half = scale * sum_half;

    // Cutoff shell removal: the box sum misses a tail ~ C L^(-2 alpha), so
    // Richardson between the L/2 and L boxes cancels it.
    const double ratio = static_cast<double>(cutoff) / half;
    const double factor = std::pow(ratio, 2.0 * alpha);
    const double value = (factor * box_full - box_half) / (factor - 1.0);
    const double correction = value - box_full;
    if (std::abs(correction) > opts.max_relative_correction * std::abs(value)) {
        std::ostringstream oss;
        oss << "phi_lattice_oracle: cutoff " << cutoff << " too small (shell correction "
            << correction << " vs value " << value << ")";
        throw quadrature_error(oss.str());
    }
    return value;
}

}  // namespace spde2d
