#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "spde2d/coeff.hpp"
#include "spde2d/grids.hpp"
#include "spde2d/model.hpp"
#include "spde2d/ou.hpp"

namespace spde2d {

// Full experiment description, mirroring the flat key=value config file.
// Defaults reproduce the reference setup at desk scale.
struct ExperimentConfig {
    SpdeParams params{0.0, 0.2, 0.2, 0.2};
    NoiseSpec noise{0.5, -19.5, 0.1};
    double alpha0 = 2.99;  // smoothness exponent for the condition checks
    InitialSpectrum spectrum{{{ModeIndex{1, 1}, 3.0}}};

    Truncation trunc{128, 128};
    TimeGrid time_grid{1000};
    SpatialGrid spatial_grid{200, 200};

    double b = 0.05;
    int m1 = 15;
    int n = 50;

    ModeIndex mode{1, 1};
    bool mu0_known = false;

    ThetaBox theta_box;
    XiBox xi_box;
    Interval lambda_box{0.01, 50.0};
    Interval mu_box{1e-4, 1e3};

    int replications = 1;
    std::uint64_t seed = 20240801;
    int threads = 0;  // 0 = hardware default
    std::string out_dir = ".";
    std::string format = "csv";  // simulate output: csv | binary
    std::string reference_path;  // optional reference table for the summary

    double condition_warn_threshold = 1.0;
    double balance_warn_factor = 10.0;  // warn when m/N or N/m exceeds this

    // Derived views (validated).
    SpatialThinning spatial_thinning() const;
    TemporalThinning temporal_thinning() const;
    void validate_all() const;
};

// Parses the documented key=value format (# comments, blank lines allowed;
// unknown keys rejected).  See the README for the key list.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Serialization used for provenance in artifacts; parse_config_text inverts it.
std::string config_to_text(const ExperimentConfig& config);

}  // namespace spde2d
