#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spde2d/harness.hpp"
#include "spde2d/rng.hpp"

using namespace spde2d;

namespace {

// Small aligned configuration that runs the full pipeline in well under a
// second per replication.
ExperimentConfig tiny_config() {
    ExperimentConfig config;
    config.params = {0.0, 0.2, 0.2, 0.2};
    config.noise = {0.5, -19.5, 0.1};
    config.spectrum = InitialSpectrum{{{ModeIndex{1, 1}, 3.0}}};
    config.trunc = {16, 16};
    config.time_grid = {50};
    config.spatial_grid = {40, 40};
    config.b = 0.1;
    config.m1 = 4;
    config.n = 10;
    config.replications = 5;
    config.seed = 777;
    config.out_dir = (std::filesystem::temp_directory_path() / "spde2d_mc_test").string();
    return config;
}

}  // namespace

TEST_CASE("replications are deterministic bit for bit") {
    const ExperimentConfig config = tiny_config();
    const ReplicationResult a = run_replication(config, 3);
    const ReplicationResult b = run_replication(config, 3);
    CHECK(a.ok);
    CHECK(a.seed == b.seed);
    CHECK(a.coeff.theta2_hat == b.coeff.theta2_hat);
    CHECK(a.coeff.kappa_hat == b.coeff.kappa_hat);
    CHECK(a.reaction.theta0_hat == b.reaction.theta0_hat);
    CHECK(a.reaction.lambda_hat == b.reaction.lambda_hat);

    const ReplicationResult other = run_replication(config, 4);
    CHECK(other.seed != a.seed);
    CHECK(other.coeff.theta2_hat != a.coeff.theta2_hat);
}

TEST_CASE("serial and parallel mc runs write identical artifacts") {
    ExperimentConfig config = tiny_config();
    namespace fs = std::filesystem;

    config.threads = 1;
    config.out_dir = (fs::temp_directory_path() / "spde2d_mc_serial").string();
    const McResult serial = run_mc(config);

    config.threads = 8;
    config.out_dir = (fs::temp_directory_path() / "spde2d_mc_parallel").string();
    const McResult parallel = run_mc(config);

    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream oss;
        oss << in.rdbuf();
        return oss.str();
    };
    const std::string serial_csv =
        slurp(fs::temp_directory_path() / "spde2d_mc_serial" / "replications.csv");
    const std::string parallel_csv =
        slurp(fs::temp_directory_path() / "spde2d_mc_parallel" / "replications.csv");
    CHECK(!serial_csv.empty());
    CHECK(serial_csv == parallel_csv);
    CHECK(serial.summary.rows.size() == parallel.summary.rows.size());
    for (std::size_t i = 0; i < serial.summary.rows.size(); ++i) {
        CHECK(serial.summary.rows[i].mean_all == parallel.summary.rows[i].mean_all);
    }
    fs::remove_all(fs::temp_directory_path() / "spde2d_mc_serial");
    fs::remove_all(fs::temp_directory_path() / "spde2d_mc_parallel");
}

TEST_CASE("replications csv round-trips exactly") {
    ExperimentConfig config = tiny_config();
    config.replications = 3;
    config.out_dir = (std::filesystem::temp_directory_path() / "spde2d_mc_csv").string();
    const McResult result = run_mc(config);

    std::ostringstream out;
    write_replications_csv(result.replications, out);
    std::istringstream in(out.str());
    const std::vector<ReplicationResult> parsed = read_replications_csv(in);
    REQUIRE(parsed.size() == result.replications.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].rep == result.replications[i].rep);
        CHECK(parsed[i].seed == result.replications[i].seed);
        CHECK(parsed[i].coeff.theta2_hat == result.replications[i].coeff.theta2_hat);
        CHECK(parsed[i].reaction.theta0_hat == result.replications[i].reaction.theta0_hat);
        CHECK(parsed[i].reaction.mu0_hat.has_value() ==
              result.replications[i].reaction.mu0_hat.has_value());
        if (parsed[i].reaction.mu0_hat.has_value()) {
            CHECK(*parsed[i].reaction.mu0_hat == *result.replications[i].reaction.mu0_hat);
        }
    }
    std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("summary means equal a direct recomputation from the csv") {
    ExperimentConfig config = tiny_config();
    config.replications = 4;
    config.out_dir = (std::filesystem::temp_directory_path() / "spde2d_mc_sum").string();
    const McResult result = run_mc(config);

    std::ostringstream out;
    write_replications_csv(result.replications, out);
    std::istringstream in(out.str());
    const auto parsed = read_replications_csv(in);
    double mean = 0.0;
    int count = 0;
    for (const auto& rep : parsed) {
        if (!rep.ok) continue;
        mean += (rep.coeff.theta2_hat - mean) / ++count;
    }
    for (const auto& row : result.summary.rows) {
        if (row.name == "theta2_hat") {
            CHECK(std::abs(row.mean_all - mean) < 1e-12);
            CHECK(row.n_all == count);
        }
    }
    std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("single-replication summary reports zero dispersion") {
    ExperimentConfig config = tiny_config();
    config.replications = 1;
    config.out_dir = (std::filesystem::temp_directory_path() / "spde2d_mc_one").string();
    const McResult result = run_mc(config);
    for (const auto& row : result.summary.rows) {
        if (row.n_all > 0) CHECK(row.sd_all == 0.0);
    }
    std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("reference table attaches to matching rows") {
    namespace fs = std::filesystem;
    const fs::path ref_path = fs::temp_directory_path() / "spde2d_ref.csv";
    {
        std::ofstream out(ref_path);
        out << "m1,n,estimator,mean,sd\n";
        out << "4,10,theta2_hat,0.201,0.0036\n";
        out << "15,50,theta2_hat,0.999,0.1\n";
    }
    ExperimentConfig config = tiny_config();
    config.replications = 2;
    config.reference_path = ref_path.string();
    config.out_dir = (fs::temp_directory_path() / "spde2d_mc_ref").string();
    const McResult result = run_mc(config);
    bool found = false;
    for (const auto& row : result.summary.rows) {
        if (row.name == "theta2_hat") {
            REQUIRE(row.reference_mean.has_value());
            CHECK(*row.reference_mean == 0.201);
            found = true;
        }
    }
    CHECK(found);
    fs::remove(ref_path);
    fs::remove_all(config.out_dir);
}

TEST_CASE("vanishing-noise replication identifies theta2 sharply") {
    // noise-free initial value (x0 = 0 keeps the squared-increment statistic
    // purely stochastic) and a truncation fine enough that the cutoff bias is
    // negligible at this dt
    ExperimentConfig config;
    config.params = {0.0, 0.2, 0.2, 0.2};
    config.noise = {0.5, -19.5, 1e-8};
    config.spectrum = InitialSpectrum{};
    config.trunc = {400, 400};
    config.time_grid = {100};
    config.spatial_grid = {40, 40};
    config.b = 0.1;
    config.m1 = 4;
    config.n = 10;
    config.seed = 3;

    const CoefficientPaths paths = simulate_coordinates(
        config.params, config.noise, config.spectrum, config.trunc, config.time_grid,
        mix_seed(mix_seed(config.seed, seed_tag::replication), 0), 2);
    const FieldData field = assemble_field(paths, config.params, config.spatial_grid, 2);
    const SpatialThinning thin = config.spatial_thinning();
    const IncrementStats stats =
        increment_stats(field, thin, config.noise.alpha, config.noise.epsilon, 2);
    FitCoeffOptions opts;
    opts.xi = config.xi_box;
    const CoeffEstimate est = fit_coeff(stats, thin, opts);
    CHECK(est.theta2_hat == doctest::Approx(0.2).epsilon(0.05));
}
