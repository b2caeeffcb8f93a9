#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace spde2d {

struct ScalarMinResult {
    double x = 0.0;
    double value = 0.0;
    int iterations = 0;
};

// Brent's method (golden section with parabolic steps) on [a,b].
template <typename F>
ScalarMinResult brent_minimize(const F& f, double a, double b, double x_tol = 1e-10,
                               int max_iter = 200) {
    constexpr double golden = 0.3819660112501051;
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        const double mid = 0.5 * (a + b);
        const double tol1 = x_tol * std::abs(x) + 1e-15;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) break;
        bool parabolic = false;
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_old = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (mid > x) ? tol1 : -tol1;
                parabolic = true;
            }
        }
        if (!parabolic) {
            e = (x < mid) ? b - x : a - x;
            d = golden * e;
        }
        const double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return {x, fx, iter};
}

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Nelder-Mead on a box: every candidate vertex is clamped to [lo, hi]
// componentwise before evaluation, so the minimizer stays feasible.
// Terminates on relative function spread or on simplex diameter.
inline SimplexResult nelder_mead_box(const std::function<double(const std::vector<double>&)>& f,
                                     std::vector<double> start, const std::vector<double>& lo,
                                     const std::vector<double>& hi, double f_tol = 1e-12,
                                     int max_iter = 2000, double x_tol = 1e-10) {
    const std::size_t n = start.size();
    const auto clamp_point = [&](std::vector<double>& p) {
        for (std::size_t i = 0; i < n; ++i) p[i] = std::clamp(p[i], lo[i], hi[i]);
    };
    clamp_point(start);

    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        const double span = hi[i] - lo[i];
        double step = 0.05 * (std::abs(start[i]) + 0.1 * span);
        if (start[i] + step > hi[i]) step = -step;
        simplex[i + 1][i] += step;
        clamp_point(simplex[i + 1]);
    }
    std::vector<double> fvals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fvals[i] = f(simplex[i]);

    int iter = 0;
    bool converged = false;
    for (; iter < max_iter; ++iter) {
        std::vector<std::size_t> order(n + 1);
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];
        if (std::abs(fvals[worst] - fvals[best]) <=
            f_tol * (std::abs(fvals[best]) + std::abs(fvals[worst])) + 1e-300) {
            converged = true;
            break;
        }
        double diameter = 0.0;
        for (std::size_t d = 0; d < n; ++d) {
            double dim_lo = simplex[0][d], dim_hi = simplex[0][d];
            for (std::size_t i = 1; i <= n; ++i) {
                dim_lo = std::min(dim_lo, simplex[i][d]);
                dim_hi = std::max(dim_hi, simplex[i][d]);
            }
            diameter = std::max(diameter, (dim_hi - dim_lo) / (1.0 + std::abs(simplex[order[0]][d])));
        }
        if (diameter <= x_tol) {
            converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d) p[d] = centroid[d] + t * (centroid[d] - simplex[worst][d]);
            clamp_point(p);
            return p;
        };

        std::vector<double> reflected = blend(1.0);
        const double f_reflected = f(reflected);
        if (f_reflected < fvals[best]) {
            std::vector<double> expanded = blend(2.0);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                fvals[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                fvals[worst] = f_reflected;
            }
        } else if (f_reflected < fvals[second_worst]) {
            simplex[worst] = std::move(reflected);
            fvals[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < fvals[worst];
            std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
            const double f_contracted = f(contracted);
            if (f_contracted < std::min(f_reflected, fvals[worst])) {
                simplex[worst] = std::move(contracted);
                fvals[worst] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d) {
                        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
                    }
                    clamp_point(simplex[i]);
                    fvals[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (fvals[i] < fvals[best]) best = i;
    }
    return {simplex[best], fvals[best], iter, converged};
}

}  // namespace spde2d
