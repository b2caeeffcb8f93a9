// Command-line front end: simulate fields, fit the coefficient and reaction
// parameters, run Monte Carlo batches, tabulate phi, and check the sampling
// design conditions.
//
// Exit codes: 0 success, 2 invalid configuration, 3 estimation degenerate in
// all replications.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "spde2d/conditions.hpp"
#include "spde2d/errors.hpp"
#include "spde2d/field_io.hpp"
#include "spde2d/harness.hpp"
#include "spde2d/parallel.hpp"
#include "spde2d/phi.hpp"
#include "spde2d/rng.hpp"

namespace {

namespace fs = std::filesystem;
using namespace spde2d;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    std::optional<int> threads;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* opt = cmd->add_option("--config", args.config_path, "experiment config file");
    if (config_required) opt->required();
    cmd->add_option("--seed", args.seed, "base seed (overrides config)");
    cmd->add_option("--reps", args.reps, "replication count (overrides config)");
    cmd->add_option("--threads", args.threads, "worker threads (overrides config)");
    cmd->add_option("--out", args.out, "output directory (overrides config)");
    cmd->add_option("--format", args.format, "simulate output format: csv|binary");
}

ExperimentConfig resolve_config(const CommonArgs& args) {
    ExperimentConfig config =
        args.config_path.empty() ? ExperimentConfig{} : load_config(args.config_path);
    if (args.seed) config.seed = *args.seed;
    if (args.reps) config.replications = *args.reps;
    if (args.threads) config.threads = *args.threads;
    if (args.out) config.out_dir = *args.out;
    if (args.format) config.format = *args.format;
    config.validate_all();
    return config;
}

int cmd_simulate(const CommonArgs& args) {
    const ExperimentConfig config = resolve_config(args);
    const int threads = config.threads > 0 ? config.threads : default_thread_count();
    const std::uint64_t rep_seed =
        mix_seed(mix_seed(config.seed, seed_tag::replication), 0);
    const CoefficientPaths paths =
        simulate_coordinates(config.params, config.noise, config.spectrum, config.trunc,
                             config.time_grid, rep_seed, threads);
    FieldData field = assemble_field(paths, config.params, config.spatial_grid, threads);
    field.meta.noise = config.noise;
    field.meta.seed = rep_seed;
    field.meta.config_text = config_to_text(config);

    fs::create_directories(config.out_dir);
    if (config.format == "binary") {
        const fs::path path = fs::path(config.out_dir) / "field.bin";
        write_field(field, path.string());
        std::cout << "wrote " << path.string() << "\n";
    } else {
        const fs::path path = fs::path(config.out_dir) / "field.csv";
        write_field_csv(field, path.string());
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

FieldData field_for_fit(const ExperimentConfig& config, const std::string& field_path,
                        int threads) {
    if (!field_path.empty()) return read_field(field_path);
    const std::uint64_t rep_seed = mix_seed(mix_seed(config.seed, seed_tag::replication), 0);
    const CoefficientPaths paths =
        simulate_coordinates(config.params, config.noise, config.spectrum, config.trunc,
                             config.time_grid, rep_seed, threads);
    return assemble_field(paths, config.params, config.spatial_grid, threads);
}

int cmd_fit_coeff(const CommonArgs& args, const std::string& field_path) {
    const ExperimentConfig config = resolve_config(args);
    const int threads = config.threads > 0 ? config.threads : default_thread_count();
    const FieldData field = field_for_fit(config, field_path, threads);
    const SpatialThinning thin = config.spatial_thinning();
    const IncrementStats stats =
        increment_stats(field, thin, config.noise.alpha, config.noise.epsilon, threads);
    FitCoeffOptions opts;
    opts.xi = config.xi_box;
    const CoeffEstimate est = fit_coeff(stats, thin, opts);
    std::cout << "theta1_hat = " << est.theta1_hat << "\n"
              << "eta1_hat = " << est.eta1_hat << "\n"
              << "theta2_hat = " << est.theta2_hat << "\n"
              << "kappa_hat = " << est.kappa_hat << "\n"
              << "eta_hat = " << est.eta_hat << "\n"
              << "contrast = " << est.contrast << "\n"
              << "bound_hit = " << (est.bound_hit ? "true" : "false") << "\n";
    return 0;
}

int cmd_fit_reaction(const CommonArgs& args, const std::string& field_path,
                     std::optional<double> kappa, std::optional<double> eta) {
    const ExperimentConfig config = resolve_config(args);
    const int threads = config.threads > 0 ? config.threads : default_thread_count();
    const FieldData field = field_for_fit(config, field_path, threads);

    CoeffEstimate coeff;
    if (kappa && eta) {
        coeff.kappa_hat = *kappa;
        coeff.eta_hat = *eta;
        // theta2 still needs the contrast fit for the reaction map.
    }
    const SpatialThinning thin = config.spatial_thinning();
    const IncrementStats stats =
        increment_stats(field, thin, config.noise.alpha, config.noise.epsilon, threads);
    FitCoeffOptions opts;
    opts.xi = config.xi_box;
    const CoeffEstimate fitted = fit_coeff(stats, thin, opts);
    if (!(kappa && eta)) {
        coeff = fitted;
    } else {
        coeff.theta2_hat = fitted.theta2_hat;
        coeff.theta1_hat = coeff.kappa_hat * coeff.theta2_hat;
        coeff.eta1_hat = coeff.eta_hat * coeff.theta2_hat;
    }

    const TemporalThinning tthin = config.temporal_thinning();
    const ApproxCoordinatePath path = approx_coordinate_path(
        field, config.mode, coeff.kappa_hat, coeff.eta_hat, tthin, threads);
    const std::optional<double> mu0_known =
        config.mu0_known ? std::optional<double>(config.noise.mu0) : std::nullopt;
    const double x0 = config.spectrum.coefficient(config.mode);
    const ReactionEstimate est =
        estimate_reaction(path, coeff, config.noise, mu0_known, config.lambda_box, config.mu_box,
                          x0 != 0.0 ? std::optional<double>(x0) : std::nullopt);
    std::cout << "lambda_hat = " << est.lambda_hat << "\n"
              << "theta0_hat = " << est.theta0_hat << "\n";
    if (est.mu0_hat) std::cout << "mu0_hat = " << *est.mu0_hat << "\n";
    std::cout << "sd_theta0 = " << est.sd_theta0 << "\n";
    if (est.sd_mu0) std::cout << "sd_mu0 = " << *est.sd_mu0 << "\n";
    std::cout << "degenerate = " << (est.degenerate ? "true" : "false") << "\n";
    return 0;
}

int cmd_mc(const CommonArgs& args, const std::string& reference) {
    ExperimentConfig config = resolve_config(args);
    if (!reference.empty()) config.reference_path = reference;
    const McResult result = run_mc(config);
    int degenerate = 0;
    for (const auto& rep : result.replications) {
        if (!rep.ok || rep.reaction.degenerate) ++degenerate;
    }
    std::cout << "replications = " << result.replications.size() << "\n"
              << "failures = " << result.summary.failures << "\n";
    for (const auto& row : result.summary.rows) {
        std::cout << row.name << ": mean = " << row.mean_all << ", sd = " << row.sd_all;
        if (row.reference_mean) std::cout << " (reference " << *row.reference_mean << ")";
        std::cout << "\n";
    }
    std::cout << "artifacts written under " << config.out_dir << "\n";
    if (degenerate == static_cast<int>(result.replications.size())) return 3;
    return 0;
}

int cmd_phi(const CommonArgs& args, double theta2_min, double theta2_max, int points) {
    const ExperimentConfig config = resolve_config(args);
    const SpatialThinning thin = config.spatial_thinning();
    if (!(theta2_min > 0.0 && theta2_max > theta2_min && points >= 2)) {
        throw config_error("phi: need 0 < theta2-min < theta2-max and points >= 2");
    }
    fs::create_directories(config.out_dir);
    const fs::path path = fs::path(config.out_dir) / "phi.csv";
    std::ofstream out(path);
    out.precision(17);
    out << "theta2,phi\n";
    for (int i = 0; i < points; ++i) {
        const double theta2 =
            theta2_min + (theta2_max - theta2_min) * i / (points - 1);
        out << theta2 << ',' << phi(thin.r(), config.noise.alpha, theta2) << '\n';
    }
    std::cout << "wrote " << path.string() << " (r = " << thin.r()
              << ", alpha = " << config.noise.alpha << ")\n";
    return 0;
}

int cmd_check_conditions(const CommonArgs& args) {
    const ExperimentConfig config = resolve_config(args);
    const ConditionsReport report = check_conditions(config);
    std::cout << report.to_text();
    if (!config.out_dir.empty()) {
        fs::create_directories(config.out_dir);
        std::ofstream out(fs::path(config.out_dir) / "conditions.txt");
        out << report.to_text();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and calibration toolkit for a 2-d advection-diffusion SPDE"};
    app.require_subcommand(1);

    CommonArgs sim_args, coeff_args, reaction_args, mc_args, phi_args, cond_args;
    std::string coeff_field, reaction_field, mc_reference;
    std::optional<double> reaction_kappa, reaction_eta;
    double phi_theta2_min = 0.05, phi_theta2_max = 2.0;
    int phi_points = 50;

    auto* sim = app.add_subcommand("simulate", "generate a field and write the container");
    add_common(sim, sim_args);

    auto* fitc = app.add_subcommand("fit-coeff", "fit the advection/diffusion coefficients");
    add_common(fitc, coeff_args);
    fitc->add_option("--field", coeff_field, "field container to fit (simulated when omitted)");

    auto* fitr = app.add_subcommand("fit-reaction", "fit the reaction parameter");
    add_common(fitr, reaction_args);
    fitr->add_option("--field", reaction_field, "field container to fit (simulated when omitted)");
    fitr->add_option("--kappa", reaction_kappa, "use this kappa instead of refitting");
    fitr->add_option("--eta", reaction_eta, "use this eta instead of refitting");

    auto* mc = app.add_subcommand("mc", "run a Monte Carlo batch and write CSV artifacts");
    add_common(mc, mc_args);
    mc->add_option("--reference", mc_reference, "reference table for summary comparison columns");

    auto* phi_cmd = app.add_subcommand("phi", "tabulate phi over a theta2 grid");
    add_common(phi_cmd, phi_args, /*config_required=*/false);
    phi_cmd->add_option("--theta2-min", phi_theta2_min, "grid start")->capture_default_str();
    phi_cmd->add_option("--theta2-max", phi_theta2_max, "grid end")->capture_default_str();
    phi_cmd->add_option("--points", phi_points, "grid size")->capture_default_str();

    auto* cond = app.add_subcommand("check-conditions", "numeric sampling-design condition report");
    add_common(cond, cond_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (fitc->parsed()) return cmd_fit_coeff(coeff_args, coeff_field);
        if (fitr->parsed()) return cmd_fit_reaction(reaction_args, reaction_field, reaction_kappa,
                                                    reaction_eta);
        if (mc->parsed()) return cmd_mc(mc_args, mc_reference);
        if (phi_cmd->parsed()) return cmd_phi(phi_args, phi_theta2_min, phi_theta2_max, phi_points);
        if (cond->parsed()) return cmd_check_conditions(cond_args);
    } catch (const config_error& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const degenerate_data_error& ex) {
        std::cerr << "degenerate data: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
