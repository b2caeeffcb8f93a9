#include "spde2d/config.hpp"

#include <fstream>
#include <sstream>

#include "spde2d/errors.hpp"

namespace spde2d {

SpatialThinning ExperimentConfig::spatial_thinning() const {
    return SpatialThinning::create(b, m1, spatial_grid, time_grid);
}

TemporalThinning ExperimentConfig::temporal_thinning() const {
    return TemporalThinning::create(n, time_grid);
}

void ExperimentConfig::validate_all() const {
    validate(params, theta_box);
    validate(noise);
    if (!(alpha0 > 0.0 && alpha0 < 3.0)) throw config_error("alpha0 must lie in (0,3)");
    validate(trunc);
    validate(time_grid);
    validate(spatial_grid);
    validate(mode);
    (void)spatial_thinning();
    (void)temporal_thinning();
    if (replications < 1) throw config_error("reps must be >= 1");
    if (threads < 0) throw config_error("threads must be >= 0");
    if (format != "csv" && format != "binary") throw config_error("format must be csv or binary");
    if (!(lambda_box.lo < lambda_box.hi)) throw config_error("lambda box empty");
    if (!(mu_box.lo > 0.0 && mu_box.lo < mu_box.hi)) throw config_error("mu box invalid");
    if (!(xi_box.kappa_min < xi_box.kappa_max && xi_box.eta_min < xi_box.eta_max &&
          xi_box.theta2_min > 0.0 && xi_box.theta2_min < xi_box.theta2_max)) {
        throw config_error("xi box invalid");
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

InitialSpectrum parse_spectrum(const std::string& text) {
    // "l1,l2:coeff[;l1,l2:coeff...]" or "none".
    std::vector<std::pair<ModeIndex, double>> entries;
    if (trim(text) == "none" || trim(text).empty()) return InitialSpectrum{std::move(entries)};
    std::istringstream iss(text);
    std::string item;
    while (std::getline(iss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto comma = item.find(',');
        const auto colon = item.find(':');
        if (comma == std::string::npos || colon == std::string::npos || colon < comma) {
            throw config_error("x0 entries must look like l1,l2:coeff, got: " + item);
        }
        ModeIndex mode{std::stoi(item.substr(0, comma)),
                       std::stoi(item.substr(comma + 1, colon - comma - 1))};
        entries.emplace_back(mode, std::stod(item.substr(colon + 1)));
    }
    return InitialSpectrum{std::move(entries)};
}

std::string spectrum_to_text(const InitialSpectrum& spectrum) {
    if (spectrum.empty()) return "none";
    std::ostringstream oss;
    oss.precision(17);
    bool first = true;
    for (const auto& [mode, coeff] : spectrum.entries()) {
        if (!first) oss << ";";
        oss << mode.l1 << "," << mode.l2 << ":" << coeff;
        first = false;
    }
    return oss.str();
}

bool parse_bool(const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw config_error("expected a boolean, got: " + value);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig config;
    std::istringstream iss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(iss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "theta0") config.params.theta0 = std::stod(value);
            else if (key == "theta1") config.params.theta1 = std::stod(value);
            else if (key == "eta1") config.params.eta1 = std::stod(value);
            else if (key == "theta2") config.params.theta2 = std::stod(value);
            else if (key == "alpha") config.noise.alpha = std::stod(value);
            else if (key == "mu0") config.noise.mu0 = std::stod(value);
            else if (key == "epsilon") config.noise.epsilon = std::stod(value);
            else if (key == "alpha0") config.alpha0 = std::stod(value);
            else if (key == "x0") config.spectrum = parse_spectrum(value);
            else if (key == "L1") config.trunc.L1 = std::stoi(value);
            else if (key == "L2") config.trunc.L2 = std::stoi(value);
            else if (key == "N") config.time_grid.num_steps = std::stoi(value);
            else if (key == "M1") config.spatial_grid.M1 = std::stoi(value);
            else if (key == "M2") config.spatial_grid.M2 = std::stoi(value);
            else if (key == "b") config.b = std::stod(value);
            else if (key == "m1") config.m1 = std::stoi(value);
            else if (key == "n") config.n = std::stoi(value);
            else if (key == "mode_l1") config.mode.l1 = std::stoi(value);
            else if (key == "mode_l2") config.mode.l2 = std::stoi(value);
            else if (key == "mu0_known") config.mu0_known = parse_bool(value);
            else if (key == "theta0_min") config.theta_box.theta0_min = std::stod(value);
            else if (key == "theta0_max") config.theta_box.theta0_max = std::stod(value);
            else if (key == "theta1_min") config.theta_box.theta1_min = std::stod(value);
            else if (key == "theta1_max") config.theta_box.theta1_max = std::stod(value);
            else if (key == "eta1_min") config.theta_box.eta1_min = std::stod(value);
            else if (key == "eta1_max") config.theta_box.eta1_max = std::stod(value);
            else if (key == "theta2_box_min") config.theta_box.theta2_min = std::stod(value);
            else if (key == "theta2_box_max") config.theta_box.theta2_max = std::stod(value);
            else if (key == "xi_kappa_min") config.xi_box.kappa_min = std::stod(value);
            else if (key == "xi_kappa_max") config.xi_box.kappa_max = std::stod(value);
            else if (key == "xi_eta_min") config.xi_box.eta_min = std::stod(value);
            else if (key == "xi_eta_max") config.xi_box.eta_max = std::stod(value);
            else if (key == "xi_theta2_min") config.xi_box.theta2_min = std::stod(value);
            else if (key == "xi_theta2_max") config.xi_box.theta2_max = std::stod(value);
            else if (key == "lambda_min") config.lambda_box.lo = std::stod(value);
            else if (key == "lambda_max") config.lambda_box.hi = std::stod(value);
            else if (key == "mu_min") config.mu_box.lo = std::stod(value);
            else if (key == "mu_max") config.mu_box.hi = std::stod(value);
            else if (key == "reps") config.replications = std::stoi(value);
            else if (key == "seed") config.seed = std::stoull(value);
            else if (key == "threads") config.threads = std::stoi(value);
            else if (key == "out") config.out_dir = value;
            else if (key == "format") config.format = value;
            else if (key == "reference") config.reference_path = value;
            else if (key == "condition_warn_threshold")
                config.condition_warn_threshold = std::stod(value);
            else if (key == "balance_warn_factor") config.balance_warn_factor = std::stod(value);
            else throw config_error("unknown config key: " + key);
        } catch (const config_error&) {
            throw;
        } catch (const std::exception&) {
            throw config_error("config line " + std::to_string(line_no) + ": bad value for " + key);
        }
    }
    config.validate_all();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config: " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return parse_config_text(oss.str());
}

std::string config_to_text(const ExperimentConfig& config) {
    std::ostringstream oss;
    oss.precision(17);
    oss << "theta0 = " << config.params.theta0 << "\n"
        << "theta1 = " << config.params.theta1 << "\n"
        << "eta1 = " << config.params.eta1 << "\n"
        << "theta2 = " << config.params.theta2 << "\n"
        << "alpha = " << config.noise.alpha << "\n"
        << "mu0 = " << config.noise.mu0 << "\n"
        << "epsilon = " << config.noise.epsilon << "\n"
        << "alpha0 = " << config.alpha0 << "\n"
        << "x0 = " << spectrum_to_text(config.spectrum) << "\n"
        << "L1 = " << config.trunc.L1 << "\n"
        << "L2 = " << config.trunc.L2 << "\n"
        << "N = " << config.time_grid.num_steps << "\n"
        << "M1 = " << config.spatial_grid.M1 << "\n"
        << "M2 = " << config.spatial_grid.M2 << "\n"
        << "b = " << config.b << "\n"
        << "m1 = " << config.m1 << "\n"
        << "n = " << config.n << "\n"
        << "mode_l1 = " << config.mode.l1 << "\n"
        << "mode_l2 = " << config.mode.l2 << "\n"
        << "mu0_known = " << (config.mu0_known ? "true" : "false") << "\n"
        << "xi_kappa_min = " << config.xi_box.kappa_min << "\n"
        << "xi_kappa_max = " << config.xi_box.kappa_max << "\n"
        << "xi_eta_min = " << config.xi_box.eta_min << "\n"
        << "xi_eta_max = " << config.xi_box.eta_max << "\n"
        << "xi_theta2_min = " << config.xi_box.theta2_min << "\n"
        << "xi_theta2_max = " << config.xi_box.theta2_max << "\n"
        << "lambda_min = " << config.lambda_box.lo << "\n"
        << "lambda_max = " << config.lambda_box.hi << "\n"
        << "mu_min = " << config.mu_box.lo << "\n"
        << "mu_max = " << config.mu_box.hi << "\n"
        << "reps = " << config.replications << "\n"
        << "seed = " << config.seed << "\n";
    return oss.str();
}

}  // namespace spde2d
