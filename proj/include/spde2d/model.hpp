#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace spde2d {

// Mode index (l1,l2), both >= 1.
struct ModeIndex {
    int l1 = 1;
    int l2 = 1;

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

// Unknown coefficient vector of the advection-diffusion-reaction operator:
//   theta2 * laplacian + theta1 * d/dy + eta1 * d/dz + theta0.
struct SpdeParams {
    double theta0 = 0.0;  // reaction (1/time)
    double theta1 = 0.0;  // advection along y
    double eta1 = 0.0;    // advection along z
    double theta2 = 1.0;  // diffusivity, > 0
};

// Reparameterization used by the eigenstructure:
//   kappa = theta1/theta2, eta = eta1/theta2,
//   gamma_cap = -theta0/theta2 + (kappa^2 + eta^2)/4.
struct DerivedCoeffs {
    double kappa = 0.0;
    double eta = 0.0;
    double gamma_cap = 0.0;
};

// Compact parameter box for the full coefficient vector.
struct ThetaBox {
    double theta0_min = -5.0, theta0_max = 5.0;
    double theta1_min = -2.0, theta1_max = 2.0;
    double eta1_min = -2.0, eta1_max = 2.0;
    double theta2_min = 0.01, theta2_max = 5.0;
};

// Driving-noise spectrum: mode (l1,l2) is damped by mu_weight^(-alpha/2) and
// scaled by the global dispersion epsilon.
struct NoiseSpec {
    double alpha = 0.5;    // damping exponent in (0,3)
    double mu0 = 0.0;      // spectral shift, > -2*pi^2
    double epsilon = 0.1;  // dispersion in (0,1)
};

// Sparse spectral initial condition: finitely many nonzero coefficients
// <X0, e_{l1,l2}>; every unlisted mode is zero.
class InitialSpectrum {
public:
    InitialSpectrum() = default;
    explicit InitialSpectrum(std::vector<std::pair<ModeIndex, double>> entries);

    double coefficient(ModeIndex l) const noexcept;
    const std::vector<std::pair<ModeIndex, double>>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    // Mode with the largest |coefficient|; throws degenerate_data_error when
    // the spectrum is identically zero.
    ModeIndex dominant_mode() const;

private:
    std::vector<std::pair<ModeIndex, double>> entries_;  // sorted by (l1,l2)
};

// Validation helpers.  Throw config_error with a description on violation.
void validate(const SpdeParams& params, const ThetaBox& box = ThetaBox{});
void validate(const NoiseSpec& noise);
void validate(ModeIndex l);

DerivedCoeffs derived_coeffs(const SpdeParams& params);

// lambda_{l1,l2} = theta2 * (pi^2 (l1^2 + l2^2) + gamma_cap).
double eigenvalue(const SpdeParams& params, ModeIndex l);

// 1-d eigenfunction factor sqrt(2) sin(pi l x) exp(-a x / 2); exactly zero on
// the boundary x in {0,1}.
double eigenfunction_1d(int l, double x, double drift_ratio);

// e_{l1,l2}(y,z) = e^(1)_{l1}(y) e^(2)_{l2}(z); zero on the boundary of the
// unit square.
double eigenfunction(const SpdeParams& params, ModeIndex l, double y, double z);

// mu_{l1,l2} = pi^2 (l1^2 + l2^2) + mu0; throws config_error if nonpositive.
double mu_weight(const NoiseSpec& noise, ModeIndex l);

// Composite-midpoint approximation of the weighted inner product
//   int_0^1 int_0^1 f g exp(kappa y + eta z) dy dz
// on an ny-by-nz cell grid.  Verification tool, not a hot path; requires at
// least a 2x2 grid.
double weighted_inner_product(const std::function<double(double, double)>& f,
                              const std::function<double(double, double)>& g,
                              double kappa, double eta, int ny, int nz);

// Sobolev-type norm of the initial condition used by condition [A1]:
//   sum over supported modes of lambda^{1+alpha0} <X0,e>^2.
double check_a1(const InitialSpectrum& spectrum, const SpdeParams& params, double alpha0);

}  // namespace spde2d
