#include "spde2d/bessel.hpp"

#include <array>
#include <cmath>

#include "spde2d/errors.hpp"

namespace spde2d {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 64-point Gauss-Legendre rule on [-1,1], computed once by Newton iteration
// on the Legendre recurrence.
struct GaussLegendre64 {
    std::array<double, 64> node{};
    std::array<double, 64> weight{};

    GaussLegendre64() {
        constexpr int n = 64;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                const double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            node[static_cast<std::size_t>(i)] = -x;
            node[static_cast<std::size_t>(n - 1 - i)] = x;
            const double w = 2.0 / ((1.0 - x * x) * pp * pp);
            weight[static_cast<std::size_t>(i)] = w;
            weight[static_cast<std::size_t>(n - 1 - i)] = w;
        }
    }
};

const GaussLegendre64& gl64() {
    static const GaussLegendre64 rule;
    return rule;
}

// Power series sum_k (-1)^k (x^2/4)^k / (k!)^2; used for |x| < 6 where the
// largest term stays ~20 and roundoff is below 1e-14.
double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

// J0(x) = (2/pi) int_0^{pi/2} cos(x sin t) dt, by 64-point Gauss-Legendre.
// Bridges 6 <= |x| < 14 where the phase stays below ~14 radians.
double j0_integral(double x) {
    const auto& rule = gl64();
    const double half = 0.25 * kPi;
    double sum = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double t = half * (rule.node[static_cast<std::size_t>(i)] + 1.0);
        sum += rule.weight[static_cast<std::size_t>(i)] * std::cos(x * std::sin(t));
    }
    return sum * half * (2.0 / kPi);
}

// Hankel asymptotic expansion, |x| >= 14.
double j0_asymptotic(double x) {
    // Signed Hankel coefficients a_m = a_{m-1} * (-(2m-1)^2) / (8m).
    double a = 1.0;
    double inv_x = 1.0 / x;
    double p = 0.0, q = 0.0;
    double power = 1.0;  // a_m / x^m
    double best = 1e300;
    for (int m = 0; m <= 30; ++m) {
        const double c = a * power;
        if (std::abs(c) > best) break;  // asymptotic series started diverging
        best = std::abs(c);
        const int k = m / 2;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        if (m % 2 == 0) {
            p += sign * c;
        } else {
            q += sign * c;
        }
        if (std::abs(c) < 1e-18) break;
        const double odd = 2.0 * m + 1.0;
        a *= -(odd * odd) / (8.0 * (m + 1.0));
        power *= inv_x;
    }
    const double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

constexpr std::array<double, 40> kJ0Zeros = {
    2.4048255576957724,  5.5200781102863106,  8.6537279129110125,  11.791534439014281,
    14.930917708487787,  18.071063967910924,  21.211636629879258,  24.352471530749302,
    27.493479132040253,  30.634606468431976,  33.775820213573567,  36.917098353664045,
    40.05842576462824,   43.19979171317673,   46.341188371661815,  49.482609897397815,
    52.624051841114998,  55.765510755019982,  58.90698392608094,   62.048469190227166,
    65.189964800206866,  68.331469329856802,  71.472981603593738,  74.614500643701831,
    77.756025630388052,  80.897555871137627,  84.039090776938195,  87.180629843641157,
    90.322172637210485,  93.463718781944777,  96.605267950996264,  99.746819858680595,
    102.88837425419479,  106.02993091645162,  109.17148964980538,  112.31305028049491,
    115.45461265366694,  118.59617663087253,  121.73774208795096,  124.87930891323295,
};

}  // namespace

double bessel_j0(double x) {
    x = std::abs(x);  // J0 is even
    if (x < 6.0) return j0_series(x);
    if (x < 14.0) return j0_integral(x);
    return j0_asymptotic(x);
}

double bessel_j0_zero(int k) {
    if (k < 1) throw config_error("bessel_j0_zero: k must be >= 1");
    if (k <= 40) return kJ0Zeros[static_cast<std::size_t>(k - 1)];
    // McMahon expansion for nu = 0.
    const double a = (k - 0.25) * kPi;
    const double s = 1.0 / (8.0 * a);
    return a + s * (1.0 - s * s * (124.0 / 3.0 - s * s * 120928.0 / 15.0));
}

}  // namespace spde2d
