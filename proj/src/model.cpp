#include "spde2d/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spde2d/errors.hpp"

namespace spde2d {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

}  // namespace

InitialSpectrum::InitialSpectrum(std::vector<std::pair<ModeIndex, double>> entries)
    : entries_(std::move(entries)) {
    for (const auto& [mode, coeff] : entries_) {
        validate(mode);
        (void)coeff;
    }
    std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
        return std::pair{a.first.l1, a.first.l2} < std::pair{b.first.l1, b.first.l2};
    });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (entries_[i].first == entries_[i - 1].first) {
            throw config_error("initial spectrum lists a mode twice");
        }
    }
}

double InitialSpectrum::coefficient(ModeIndex l) const noexcept {
    for (const auto& [mode, coeff] : entries_) {
        if (mode == l) return coeff;
    }
    return 0.0;
}

ModeIndex InitialSpectrum::dominant_mode() const {
    const std::pair<ModeIndex, double>* best = nullptr;
    for (const auto& entry : entries_) {
        if (entry.second != 0.0 && (best == nullptr || std::abs(entry.second) > std::abs(best->second))) {
            best = &entry;
        }
    }
    if (best == nullptr) {
        throw degenerate_data_error("initial spectrum has no nonzero coefficient");
    }
    return best->first;
}

void validate(const SpdeParams& params, const ThetaBox& box) {
    if (!(params.theta2 > 0.0)) {
        throw config_error("theta2 must be positive");
    }
    const SpdeParams lambda_probe = params;
    if (!(eigenvalue(lambda_probe, ModeIndex{1, 1}) > 0.0)) {
        throw config_error("operator not positive definite: lambda(1,1) <= 0");
    }
    std::ostringstream oss;
    if (params.theta0 < box.theta0_min || params.theta0 > box.theta0_max ||
        params.theta1 < box.theta1_min || params.theta1 > box.theta1_max ||
        params.eta1 < box.eta1_min || params.eta1 > box.eta1_max ||
        params.theta2 < box.theta2_min || params.theta2 > box.theta2_max) {
        oss << "parameters (" << params.theta0 << "," << params.theta1 << "," << params.eta1
            << "," << params.theta2 << ") outside the configured box";
        throw config_error(oss.str());
    }
}

void validate(const NoiseSpec& noise) {
    if (!(noise.alpha > 0.0 && noise.alpha < 3.0)) {
        throw config_error("alpha must lie in (0,3)");
    }
    if (!(noise.mu0 > -2.0 * kPi * kPi)) {
        throw config_error("mu0 must exceed -2*pi^2");
    }
    if (!(noise.epsilon > 0.0 && noise.epsilon < 1.0)) {
        throw config_error("epsilon must lie in (0,1)");
    }
}

void validate(ModeIndex l) {
    if (l.l1 < 1 || l.l2 < 1) {
        throw config_error("mode indices must be >= 1");
    }
}

DerivedCoeffs derived_coeffs(const SpdeParams& params) {
    DerivedCoeffs d;
    d.kappa = params.theta1 / params.theta2;
    d.eta = params.eta1 / params.theta2;
    d.gamma_cap = -params.theta0 / params.theta2 + (d.kappa * d.kappa + d.eta * d.eta) / 4.0;
    return d;
}

double eigenvalue(const SpdeParams& params, ModeIndex l) {
    const DerivedCoeffs d = derived_coeffs(params);
    const double ss = static_cast<double>(l.l1) * l.l1 + static_cast<double>(l.l2) * l.l2;
    return params.theta2 * (kPi * kPi * ss + d.gamma_cap);
}

double eigenfunction_1d(int l, double x, double drift_ratio) {
    if (x == 0.0 || x == 1.0) return 0.0;  // Dirichlet boundary, exact
    return kSqrt2 * std::sin(kPi * l * x) * std::exp(-0.5 * drift_ratio * x);
}

double eigenfunction(const SpdeParams& params, ModeIndex l, double y, double z) {
    const DerivedCoeffs d = derived_coeffs(params);
    return eigenfunction_1d(l.l1, y, d.kappa) * eigenfunction_1d(l.l2, z, d.eta);
}

double mu_weight(const NoiseSpec& noise, ModeIndex l) {
    const double ss = static_cast<double>(l.l1) * l.l1 + static_cast<double>(l.l2) * l.l2;
    const double mu = kPi * kPi * ss + noise.mu0;
    if (!(mu > 0.0)) {
        throw config_error("mu weight nonpositive; mu0 too negative for this mode");
    }
    return mu;
}

double weighted_inner_product(const std::function<double(double, double)>& f,
                              const std::function<double(double, double)>& g,
                              double kappa, double eta, int ny, int nz) {
    if (ny < 2 || nz < 2) {
        throw config_error("weighted_inner_product: grid too coarse (need >= 2x2 cells)");
    }
    const double hy = 1.0 / ny;
    const double hz = 1.0 / nz;
    double total = 0.0;
    for (int j = 0; j < ny; ++j) {
        const double y = (j + 0.5) * hy;
        const double wy = std::exp(kappa * y);
        double row = 0.0;
        for (int k = 0; k < nz; ++k) {
            const double z = (k + 0.5) * hz;
            row += f(y, z) * g(y, z) * std::exp(eta * z);
        }
        total += wy * row;
    }
    return total * hy * hz;
}

double check_a1(const InitialSpectrum& spectrum, const SpdeParams& params, double alpha0) {
    if (!(alpha0 > 0.0 && alpha0 < 3.0)) {
        throw config_error("alpha0 must lie in (0,3)");
    }
    double total = 0.0;
    for (const auto& [mode, coeff] : spectrum.entries()) {
        if (coeff == 0.0) continue;
        total += std::pow(eigenvalue(params, mode), 1.0 + alpha0) * coeff * coeff;
    }
    return total;
}

}  // namespace spde2d
