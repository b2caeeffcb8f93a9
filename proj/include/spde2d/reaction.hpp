#pragma once

#include <optional>

#include "spde2d/coeff.hpp"
#include "spde2d/grids.hpp"
#include "spde2d/model.hpp"
#include "spde2d/ou.hpp"
#include "spde2d/simulate.hpp"

namespace spde2d {

// Antiderivative of sqrt(2) sin(pi l x) e^{a x / 2}:
//   g_l(x; a) = sqrt(2) e^{a x/2} ((a/2) sin(pi l x) - pi l cos(pi l x))
//               / ((a/2)^2 + (pi l)^2).
double g_l(double x, double a, int l);

// Reconstruction of one coordinate process from gridded field data via the
// left-endpoint projection and the g_l cell weights, at the thinned times.
struct ApproxCoordinatePath {
    std::vector<double> values;  // x(ttilde_i), i = 0..n
    ModeIndex mode;
    double kappa_used = 0.0;
    double eta_used = 0.0;
    double delta_n = 0.0;
};

ApproxCoordinatePath approx_coordinate_path(const FieldData& field, ModeIndex mode,
                                            double kappa_hat, double eta_hat,
                                            const TemporalThinning& thinning, int threads = 1);

struct AsymptoticVariances {
    double g = 0.0;          // (1-e^{-2 lambda})/(2 lambda) mu^alpha x0^2
    double h = 0.0;          // alpha^2 / (2 mu^2)
    double i_diag[2] = {0.0, 0.0};
    double script_g = 0.0;   // 1/g
    double script_i[2] = {0.0, 0.0};
};

// Fisher-type variance blocks of the OU contrast.  Throws when x0 = 0 (the
// lambda direction is then unidentifiable).
AsymptoticVariances asymptotic_variances(double lambda_star, double mu_star, double x0,
                                         double alpha);

struct ReactionEstimate {
    double lambda_hat = 0.0;
    std::optional<double> mu_hat;   // unknown-mu0 mode only
    double theta0_hat = 0.0;
    std::optional<double> mu0_hat;  // unknown-mu0 mode only
    double sd_theta0 = 0.0;         // eps * sqrt(script_g)
    std::optional<double> sd_mu0;   // sqrt(script_i[1] / n)
    bool lambda_bound_hit = false;
    bool mu_bound_hit = false;
    bool degenerate = false;
    bool used_known_x0 = false;     // variance evaluated at the supplied x(0)
    double contrast = 0.0;
};

// Maps the OU fit of the approximate coordinate process to the reaction
// parameters:
//   theta0_hat = -lambda_hat + theta2_hat ((kappa_hat^2+eta_hat^2)/4
//                                          + pi^2 (l1^2+l2^2)),
//   mu0_hat    = mu_hat - pi^2 (l1^2+l2^2)              (unknown-mu0 mode).
// When mu0 is known the fit holds mu fixed at pi^2(l1^2+l2^2) + mu0.
// Asymptotic standard deviations use x(0) of the chosen mode: the supplied
// known coefficient when available, otherwise the first path value.
ReactionEstimate estimate_reaction(const ApproxCoordinatePath& path, const CoeffEstimate& coeff,
                                   const NoiseSpec& noise, std::optional<double> mu0_known,
                                   Interval lambda_box, Interval mu_box,
                                   std::optional<double> x0_known = std::nullopt);

}  // namespace spde2d
