#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "spde2d/errors.hpp"

namespace spde2d {

struct PanelEstimate {
    double value = 0.0;
    double error = 0.0;
};

// Gauss(7)/Kronrod(15) pair on [a,b].  Error estimate follows the usual
// (200|G7-K15|)^{3/2} heuristic, floored at the plain difference.
template <typename F>
PanelEstimate gauss_kronrod_15(const F& f, double a, double b) {
    // abscissa, Gauss-7 weight, Kronrod-15 weight
    static constexpr double nw[8][3] = {
        {0.000000000000000, 0.417959183673469, 0.209482141084728},
        {0.405845151377397, 0.381830050505119, 0.190350578064785},
        {0.741531185599394, 0.279705391489277, 0.140653259715525},
        {0.949107912342759, 0.129484966168870, 0.063092092629979},
        {0.207784955007898, 0.0, 0.204432940075298},
        {0.586087235467691, 0.0, 0.169004726639267},
        {0.864864423359769, 0.0, 0.104790010322250},
        {0.991455371120813, 0.0, 0.022935322010529},
    };
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = nw[0][1] * f0;
    double k15 = nw[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * nw[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += nw[i][1] * fi;
        k15 += nw[i][2] * fi;
    }
    g7 *= half;
    k15 *= half;
    const double diff = std::abs(g7 - k15);
    const double scaled = 200.0 * diff;
    return {k15, std::min(scaled * std::sqrt(scaled), diff)};
}

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

// Worst-panel-first adaptive bisection to an absolute tolerance.  Throws
// quadrature_error when the panel budget is exhausted before convergence.
template <typename F>
QuadResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                              int max_panels = 4000) {
    struct Panel {
        double a, b, value, error;
    };
    std::vector<Panel> panels;
    const PanelEstimate first = gauss_kronrod_15(f, a, b);
    panels.push_back({a, b, first.value, first.error});
    double total_error = first.error;
    while (total_error > abs_tol) {
        if (static_cast<int>(panels.size()) >= max_panels) {
            throw quadrature_error("adaptive quadrature: panel budget exhausted before tolerance");
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].error > panels[worst].error) worst = i;
        }
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {
            throw quadrature_error("adaptive quadrature: interval underflow before tolerance");
        }
        const PanelEstimate left = gauss_kronrod_15(f, p.a, mid);
        const PanelEstimate right = gauss_kronrod_15(f, mid, p.b);
        panels[worst] = {p.a, mid, left.value, left.error};
        panels.push_back({mid, p.b, right.value, right.error});
        total_error += left.error + right.error - p.error;
    }
    QuadResult result;
    result.panels = static_cast<int>(panels.size());
    // Sum small-to-large magnitude for a stable total.
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return std::abs(x.value) < std::abs(y.value); });
    for (const Panel& p : panels) {
        result.value += p.value;
        result.error += p.error;
    }
    return result;
}

// Sum of an eventually sign-alternating series with smoothly decaying term
// magnitudes, produced lazily by term(k), k = 0,1,...  The head of the series
// is summed directly; the tail is accelerated by an Euler (binomial
// averaging) triangle over its partial sums.  Throws quadrature_error when
// the triangle does not stabilize to abs_tol.
template <typename TermFn>
double alternating_series_sum(const TermFn& term, double abs_tol, int direct_terms = 48,
                              int euler_window = 32) {
    double direct = 0.0;
    int k = 0;
    for (; k < direct_terms; ++k) {
        const double t = term(k);
        direct += t;
        if (k >= 2 && std::abs(t) < abs_tol) return direct;
    }
    std::vector<double> row(static_cast<std::size_t>(euler_window));
    double partial = 0.0;
    for (int i = 0; i < euler_window; ++i) {
        partial += term(k + i);
        row[static_cast<std::size_t>(i)] = partial;
    }
    double best = row[0];
    double prev = row[0];
    double best_err = std::abs(row.back() - row.front());
    for (int depth = 1; depth < euler_window; ++depth) {
        for (int i = 0; i + depth < euler_window; ++i) {
            row[static_cast<std::size_t>(i)] =
                0.5 * (row[static_cast<std::size_t>(i)] + row[static_cast<std::size_t>(i) + 1]);
        }
        const double err = std::abs(row[0] - prev);
        if (err < best_err) {
            best_err = err;
            best = row[0];
        }
        prev = row[0];
    }
    if (best_err > abs_tol) {
        throw quadrature_error("alternating series tail failed to stabilize");
    }
    return direct + best;
}

}  // namespace spde2d
