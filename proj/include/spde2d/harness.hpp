#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spde2d/conditions.hpp"
#include "spde2d/config.hpp"
#include "spde2d/reaction.hpp"

namespace spde2d {

struct ReplicationResult {
    int rep = 0;
    std::uint64_t seed = 0;
    bool ok = false;            // pipeline completed (possibly with flags)
    std::string error;          // failure description when !ok
    CoeffEstimate coeff;
    ReactionEstimate reaction;
    bool flagged = false;       // any optimizer bound hit or degeneracy
    double wall_seconds = 0.0;  // diagnostics only; never written to CSV
};

// Executes the full pipeline for one replication: simulate coordinates,
// assemble the field, fit the coefficient parameters on the thinned spatial
// grid, reconstruct the chosen coordinate process, fit the reaction
// parameters.  Deterministic given (config, config.seed, rep_index).
// Estimator errors are captured in the result, never thrown.
ReplicationResult run_replication(const ExperimentConfig& config, int rep_index);

struct EstimatorSummary {
    std::string name;
    double true_value = 0.0;
    int n_all = 0;
    double mean_all = 0.0;
    double sd_all = 0.0;
    int n_unflagged = 0;
    double mean_unflagged = 0.0;
    double sd_unflagged = 0.0;
    std::optional<double> reference_mean;
    std::optional<double> reference_sd;
};

struct SummaryTable {
    std::vector<EstimatorSummary> rows;
    int replications = 0;
    int failures = 0;
    std::string config_echo;
};

struct McResult {
    std::vector<ReplicationResult> replications;
    SummaryTable summary;
    ConditionsReport conditions;
};

// Full-scale reference values for comparison columns (see data/ for the
// shipped table).  Matched on (m1, n, estimator name).
struct ReferenceEntry {
    int m1 = 0;
    int n = 0;
    std::string estimator;
    double mean = 0.0;
    double sd = 0.0;
};
std::vector<ReferenceEntry> load_reference_table(const std::string& path);

// Runs config.replications replications on a bounded worker pool with
// independent derived seeds, writes replications.csv, summary.csv and
// conditions.txt under config.out_dir, and returns everything in memory.
// CSV content is identical for any thread count.
McResult run_mc(const ExperimentConfig& config);

// CSV layer.  Fixed column order documented in the README; numbers are
// printed with 17 significant digits so parse(write(x)) == x exactly.
void write_replications_csv(const std::vector<ReplicationResult>& reps, std::ostream& out);
std::vector<ReplicationResult> read_replications_csv(std::istream& in);
void write_summary_csv(const SummaryTable& summary, std::ostream& out);

SummaryTable summarize(const ExperimentConfig& config,
                       const std::vector<ReplicationResult>& reps,
                       const std::vector<ReferenceEntry>& reference = {});

}  // namespace spde2d
