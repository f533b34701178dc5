#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/sampling.hpp"
#include "core/simulator.hpp"

namespace dlsr {

/// Thrown for malformed or inconsistent configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown for numerical failures such as a non-unique plan after all seed
/// retries (CLI exit code 2).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Declarative description of one experiment; see README for the key schema.
struct ExperimentConfig {
    enum class GraphSource { knn_random, edge_list, intel_lab };
    GraphSource graph_source = GraphSource::knn_random;
    int graph_n = 100;
    int graph_knn = 4;
    std::uint64_t graph_seed = 1;
    std::string graph_path;

    std::string data_path;   // intel_lab
    std::string data_locs;
    std::string data_start = "2004-02-28 01:06:15";
    std::string data_end = "2004-02-28 17:56:15";
    int data_resample_seconds = 30;

    LaplacianKind laplacian = LaplacianKind::normalized;

    int sample_m = 20;
    std::uint64_t sample_seed = 1;
    std::vector<int> sample_set;  // explicit set overrides m/seed
    int sample_max_redraws = 20;

    double omega = -1.0;  // < 0: footnote cutoff bound policy
    DelayModel delays = DelayModel::hops;

    Schedule schedule;
    double signal_delta = 0.0;
    std::uint64_t signal_seed = 1;
    double signal_norm = 10.0;
    double init_out_band = 0.0;  // fraction of initial energy out of band

    int steps = 1000;
    Mode mode = Mode::message_passing;
    int repeat_seeds = 1;
    std::vector<int> tracked_nodes;
    int steady_window = 50;
    double sweep_converge_rel = 0.5;

    std::vector<double> sweep_mu, sweep_beta, sweep_delta;

    std::string out = "run";
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);
void apply_config_key(ExperimentConfig& config, const std::string& key, const std::string& value);

struct RunSummary {
    double omega = 0.0;
    double bound_a = 0.0;
    double bound_b = 0.0;
    int tau_max = 0;
    std::uint64_t sample_seed_used = 0;
    int redraws = 0;
    int steps = 0;
    bool converged = false;
    double steady_error = 0.0;
    double steady_relative_error = 0.0;
    double convergence_rate_value = 1.0;
    std::optional<double> rate_exponent;
    double final_relative_error = 0.0;
};

/// Builds graph + plan + truth from a config, simulates once per repeat
/// seed, writes trace CSVs and a JSON sidecar next to `out`, and returns
/// the summary of the first seed (plus aggregates in the sidecar).
RunSummary run_experiment(const ExperimentConfig& config);

struct SweepCell {
    double mu, beta, delta;
    bool valid;               // false when mu*beta >= 1 or a parameter is negative
    double converged_fraction;  // -1 for invalid cells
};

/// Grid sweep over sweep_mu x sweep_beta x sweep_delta with repeat_seeds
/// runs per cell; writes `<out>_sweep.csv` and returns the table.
std::vector<SweepCell> run_sweep(const ExperimentConfig& config);

}  // namespace dlsr
