#include "spde2d/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "spde2d/errors.hpp"
#include "spde2d/parallel.hpp"
#include "spde2d/rng.hpp"
#include "spde2d/simulate.hpp"

namespace spde2d {

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

struct Welford {
    int n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }
    double sd() const { return n > 1 ? std::sqrt(m2 / (n - 1)) : 0.0; }
};

std::string format_double(double v) {
    std::ostringstream oss;
    oss.precision(17);
    oss << v;
    return oss.str();
}

}  // namespace

ReplicationResult run_replication(const ExperimentConfig& config, int rep_index) {
    ReplicationResult result;
    result.rep = rep_index;
    result.seed = mix_seed(mix_seed(config.seed, seed_tag::replication),
                           static_cast<std::uint64_t>(rep_index));
    const auto t0 = std::chrono::steady_clock::now();
    try {
        config.validate_all();
        const int inner_threads = 1;  // replication-level parallelism owns the budget

        const CoefficientPaths paths =
            simulate_coordinates(config.params, config.noise, config.spectrum, config.trunc,
                                 config.time_grid, result.seed, inner_threads);
        const FieldData field =
            assemble_field(paths, config.params, config.spatial_grid, inner_threads);

        const SpatialThinning sthin = config.spatial_thinning();
        const IncrementStats stats =
            increment_stats(field, sthin, config.noise.alpha, config.noise.epsilon, inner_threads);
        FitCoeffOptions fit_opts;
        fit_opts.xi = config.xi_box;
        result.coeff = fit_coeff(stats, sthin, fit_opts);

        const TemporalThinning tthin = config.temporal_thinning();
        const ApproxCoordinatePath path =
            approx_coordinate_path(field, config.mode, result.coeff.kappa_hat,
                                   result.coeff.eta_hat, tthin, inner_threads);
        const std::optional<double> mu0_known =
            config.mu0_known ? std::optional<double>(config.noise.mu0) : std::nullopt;
        const double x0 = config.spectrum.coefficient(config.mode);
        result.reaction = estimate_reaction(path, result.coeff, config.noise, mu0_known,
                                            config.lambda_box, config.mu_box,
                                            x0 != 0.0 ? std::optional<double>(x0) : std::nullopt);
        result.ok = true;
        result.flagged = result.coeff.bound_hit || result.reaction.lambda_bound_hit ||
                         result.reaction.mu_bound_hit || result.reaction.degenerate;
    } catch (const std::exception& ex) {
        result.ok = false;
        result.error = ex.what();
        result.flagged = true;
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::vector<ReferenceEntry> load_reference_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open reference table: " + path);
    std::vector<ReferenceEntry> entries;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {  // "m1,n,estimator,mean,sd"
            header = false;
            continue;
        }
        std::istringstream ls(line);
        std::string item;
        ReferenceEntry e;
        std::getline(ls, item, ','); e.m1 = std::stoi(item);
        std::getline(ls, item, ','); e.n = std::stoi(item);
        std::getline(ls, e.estimator, ',');
        std::getline(ls, item, ','); e.mean = std::stod(item);
        std::getline(ls, item, ','); e.sd = std::stod(item);
        entries.push_back(std::move(e));
    }
    return entries;
}

SummaryTable summarize(const ExperimentConfig& config,
                       const std::vector<ReplicationResult>& reps,
                       const std::vector<ReferenceEntry>& reference) {
    SummaryTable table;
    table.replications = static_cast<int>(reps.size());
    table.config_echo = config_to_text(config);

    struct Row {
        std::string name;
        double truth;
        std::function<std::optional<double>(const ReplicationResult&)> get;
    };
    const std::vector<Row> rows = {
        {"theta1_hat", config.params.theta1,
         [](const ReplicationResult& r) { return std::optional<double>(r.coeff.theta1_hat); }},
        {"eta1_hat", config.params.eta1,
         [](const ReplicationResult& r) { return std::optional<double>(r.coeff.eta1_hat); }},
        {"theta2_hat", config.params.theta2,
         [](const ReplicationResult& r) { return std::optional<double>(r.coeff.theta2_hat); }},
        {"theta0_hat", config.params.theta0,
         [](const ReplicationResult& r) { return std::optional<double>(r.reaction.theta0_hat); }},
        {"mu0_hat", config.noise.mu0,
         [](const ReplicationResult& r) -> std::optional<double> {
             if (r.reaction.mu0_hat.has_value()) return *r.reaction.mu0_hat;
             return std::nullopt;
         }},
    };

    for (const auto& row : rows) {
        EstimatorSummary s;
        s.name = row.name;
        s.true_value = row.truth;
        Welford all, unflagged;
        for (const auto& rep : reps) {
            if (!rep.ok) continue;
            const auto value = row.get(rep);
            if (!value.has_value()) continue;
            all.add(*value);
            if (!rep.flagged) unflagged.add(*value);
        }
        s.n_all = all.n;
        s.mean_all = all.n > 0 ? all.mean : nan_value();
        s.sd_all = all.n > 0 ? all.sd() : nan_value();
        s.n_unflagged = unflagged.n;
        s.mean_unflagged = unflagged.n > 0 ? unflagged.mean : nan_value();
        s.sd_unflagged = unflagged.n > 0 ? unflagged.sd() : nan_value();
        for (const auto& ref : reference) {
            if (ref.m1 == config.m1 && ref.n == config.n && ref.estimator == row.name) {
                s.reference_mean = ref.mean;
                s.reference_sd = ref.sd;
            }
        }
        table.rows.push_back(std::move(s));
    }
    for (const auto& rep : reps) {
        if (!rep.ok) ++table.failures;
    }
    return table;
}

void write_replications_csv(const std::vector<ReplicationResult>& reps, std::ostream& out) {
    out << "rep,seed,ok,flagged,theta1_hat,eta1_hat,theta2_hat,kappa_hat,eta_hat,"
           "theta0_hat,mu0_hat,lambda_hat,mu_hat,contrast_u,contrast_v,"
           "coeff_bound_hit,lambda_bound_hit,mu_bound_hit,degenerate,error\n";
    for (const auto& r : reps) {
        out << r.rep << ',' << r.seed << ',' << (r.ok ? 1 : 0) << ',' << (r.flagged ? 1 : 0) << ','
            << format_double(r.coeff.theta1_hat) << ',' << format_double(r.coeff.eta1_hat) << ','
            << format_double(r.coeff.theta2_hat) << ',' << format_double(r.coeff.kappa_hat) << ','
            << format_double(r.coeff.eta_hat) << ',' << format_double(r.reaction.theta0_hat) << ','
            << format_double(r.reaction.mu0_hat.value_or(nan_value())) << ','
            << format_double(r.reaction.lambda_hat) << ','
            << format_double(r.reaction.mu_hat.value_or(nan_value())) << ','
            << format_double(r.coeff.contrast) << ',' << format_double(r.reaction.contrast) << ','
            << (r.coeff.bound_hit ? 1 : 0) << ',' << (r.reaction.lambda_bound_hit ? 1 : 0) << ','
            << (r.reaction.mu_bound_hit ? 1 : 0) << ',' << (r.reaction.degenerate ? 1 : 0) << ','
            << r.error << '\n';
    }
}

std::vector<ReplicationResult> read_replications_csv(std::istream& in) {
    std::vector<ReplicationResult> reps;
    std::string line;
    if (!std::getline(in, line)) return reps;  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string item;
        ReplicationResult r;
        const auto next = [&]() {
            if (!std::getline(ls, item, ',')) throw config_error("replications.csv: short row");
            return item;
        };
        r.rep = std::stoi(next());
        r.seed = std::stoull(next());
        r.ok = next() == "1";
        r.flagged = next() == "1";
        r.coeff.theta1_hat = std::stod(next());
        r.coeff.eta1_hat = std::stod(next());
        r.coeff.theta2_hat = std::stod(next());
        r.coeff.kappa_hat = std::stod(next());
        r.coeff.eta_hat = std::stod(next());
        r.reaction.theta0_hat = std::stod(next());
        const double mu0 = std::stod(next());
        if (!std::isnan(mu0)) r.reaction.mu0_hat = mu0;
        r.reaction.lambda_hat = std::stod(next());
        const double mu = std::stod(next());
        if (!std::isnan(mu)) r.reaction.mu_hat = mu;
        r.coeff.contrast = std::stod(next());
        r.reaction.contrast = std::stod(next());
        r.coeff.bound_hit = next() == "1";
        r.reaction.lambda_bound_hit = next() == "1";
        r.reaction.mu_bound_hit = next() == "1";
        r.reaction.degenerate = next() == "1";
        std::getline(ls, r.error);
        reps.push_back(std::move(r));
    }
    return reps;
}

void write_summary_csv(const SummaryTable& summary, std::ostream& out) {
    out << "estimator,true_value,n_all,mean_all,sd_all,n_unflagged,mean_unflagged,sd_unflagged,"
           "reference_mean,reference_sd\n";
    for (const auto& row : summary.rows) {
        out << row.name << ',' << format_double(row.true_value) << ',' << row.n_all << ','
            << format_double(row.mean_all) << ',' << format_double(row.sd_all) << ','
            << row.n_unflagged << ',' << format_double(row.mean_unflagged) << ','
            << format_double(row.sd_unflagged) << ',';
        if (row.reference_mean.has_value()) out << format_double(*row.reference_mean);
        out << ',';
        if (row.reference_sd.has_value()) out << format_double(*row.reference_sd);
        out << '\n';
    }
}

McResult run_mc(const ExperimentConfig& config) {
    config.validate_all();
    McResult result;
    result.replications.resize(static_cast<std::size_t>(config.replications));
    const int threads = config.threads > 0 ? config.threads : default_thread_count();

    parallel_for(0, config.replications, threads, [&](int rep) {
        result.replications[static_cast<std::size_t>(rep)] = run_replication(config, rep);
    });

    std::vector<ReferenceEntry> reference;
    if (!config.reference_path.empty()) {
        reference = load_reference_table(config.reference_path);
    }
    result.summary = summarize(config, result.replications, reference);
    result.conditions = check_conditions(config);

    namespace fs = std::filesystem;
    const fs::path out_dir(config.out_dir);
    if (!out_dir.empty()) fs::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "replications.csv");
        if (!out) throw config_error("cannot write replications.csv under " + config.out_dir);
        write_replications_csv(result.replications, out);
    }
    {
        std::ofstream out(out_dir / "summary.csv");
        if (!out) throw config_error("cannot write summary.csv under " + config.out_dir);
        write_summary_csv(result.summary, out);
    }
    {
        std::ofstream out(out_dir / "conditions.txt");
        if (!out) throw config_error("cannot write conditions.txt under " + config.out_dir);
        out << result.conditions.to_text();
    }
    return result;
}

}  // namespace spde2d
