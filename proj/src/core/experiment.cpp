#include "core/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace dlsr {

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    for (const auto& item : split_list(value)) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("config: bad number '" + item + "' in " + key);
        }
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& value, const std::string& key) {
    std::vector<int> out;
    for (const auto& item : split_list(value)) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("config: bad integer '" + item + "' in " + key);
        }
    }
    return out;
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        return std::stod(value);
    } catch (const std::exception&) {
        throw ConfigError("config: bad number '" + value + "' for " + key);
    }
}

long long parse_int(const std::string& value, const std::string& key) {
    try {
        return std::stoll(value);
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer '" + value + "' for " + key);
    }
}

}  // namespace

void apply_config_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
    if (key == "graph.source") {
        if (value == "knn_random") c.graph_source = ExperimentConfig::GraphSource::knn_random;
        else if (value == "edge_list") c.graph_source = ExperimentConfig::GraphSource::edge_list;
        else if (value == "intel_lab") c.graph_source = ExperimentConfig::GraphSource::intel_lab;
        else throw ConfigError("config: unknown graph.source '" + value + "'");
    } else if (key == "graph.n") c.graph_n = static_cast<int>(parse_int(value, key));
    else if (key == "graph.knn") c.graph_knn = static_cast<int>(parse_int(value, key));
    else if (key == "graph.seed") c.graph_seed = static_cast<std::uint64_t>(parse_int(value, key));
    else if (key == "graph.path") c.graph_path = value;
    else if (key == "data.path") c.data_path = value;
    else if (key == "data.locs") c.data_locs = value;
    else if (key == "data.start") c.data_start = value;
    else if (key == "data.end") c.data_end = value;
    else if (key == "data.resample_seconds")
        c.data_resample_seconds = static_cast<int>(parse_int(value, key));
    else if (key == "laplacian") {
        if (value == "normalized") c.laplacian = LaplacianKind::normalized;
        else if (value == "unnormalized") c.laplacian = LaplacianKind::unnormalized;
        else throw ConfigError("config: unknown laplacian '" + value + "'");
    } else if (key == "sample.m") c.sample_m = static_cast<int>(parse_int(value, key));
    else if (key == "sample.seed") c.sample_seed = static_cast<std::uint64_t>(parse_int(value, key));
    else if (key == "sample.set") c.sample_set = parse_int_list(value, key);
    else if (key == "sample.max_redraws")
        c.sample_max_redraws = static_cast<int>(parse_int(value, key));
    else if (key == "omega.policy") {
        if (value == "footnote_bound") c.omega = -1.0;
        else if (value != "explicit")
            throw ConfigError("config: unknown omega.policy '" + value + "'");
    } else if (key == "omega.value") c.omega = parse_double(value, key);
    else if (key == "delays") {
        if (value == "hops") c.delays = DelayModel::hops;
        else if (value == "zero") c.delays = DelayModel::zero;
        else throw ConfigError("config: unknown delays '" + value + "'");
    } else if (key == "schedule.kind") {
        if (value == "constant") c.schedule.kind = Schedule::Kind::constant;
        else if (value == "diminishing") c.schedule.kind = Schedule::Kind::diminishing;
        else throw ConfigError("config: unknown schedule.kind '" + value + "'");
    } else if (key == "schedule.mu") c.schedule.mu1 = parse_double(value, key);
    else if (key == "schedule.beta") c.schedule.beta1 = parse_double(value, key);
    else if (key == "signal.delta") c.signal_delta = parse_double(value, key);
    else if (key == "signal.seed") c.signal_seed = static_cast<std::uint64_t>(parse_int(value, key));
    else if (key == "signal.norm") c.signal_norm = parse_double(value, key);
    else if (key == "signal.init_out_band") c.init_out_band = parse_double(value, key);
    else if (key == "steps") c.steps = static_cast<int>(parse_int(value, key));
    else if (key == "mode") {
        if (value == "message_passing") c.mode = Mode::message_passing;
        else if (value == "closed_form") c.mode = Mode::closed_form;
        else throw ConfigError("config: unknown mode '" + value + "'");
    } else if (key == "repeat.seeds") c.repeat_seeds = static_cast<int>(parse_int(value, key));
    else if (key == "trace.nodes") c.tracked_nodes = parse_int_list(value, key);
    else if (key == "steady.window") c.steady_window = static_cast<int>(parse_int(value, key));
    else if (key == "sweep.mu") c.sweep_mu = parse_double_list(value, key);
    else if (key == "sweep.beta") c.sweep_beta = parse_double_list(value, key);
    else if (key == "sweep.delta") c.sweep_delta = parse_double_list(value, key);
    else if (key == "sweep.converge_rel") c.sweep_converge_rel = parse_double(value, key);
    else if (key == "out") c.out = value;
    else throw ConfigError("config: unknown key '" + key + "'");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        auto strip = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        apply_config_key(config, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

struct Setup {
    Graph graph;
    SamplingPlan plan;
    TimeVaryingSignal truth;
    std::uint64_t sample_seed_used;
    int redraws;
};

Graph build_graph(const ExperimentConfig& c, std::vector<std::array<double, 2>>* intel_points,
                  TimeVaryingSignal* intel_signal) {
    switch (c.graph_source) {
        case ExperimentConfig::GraphSource::knn_random:
            if (c.graph_n < 2) throw ConfigError("config: graph.n must be at least 2");
            return knn_geometric_graph(random_points(c.graph_n, c.graph_seed), c.graph_knn);
        case ExperimentConfig::GraphSource::edge_list:
            if (c.graph_path.empty()) throw ConfigError("config: graph.path required");
            return load_edge_list(c.graph_path);
        case ExperimentConfig::GraphSource::intel_lab: {
            if (c.data_path.empty() || c.data_locs.empty())
                throw ConfigError("config: data.path and data.locs required for intel_lab");
            IntelLabData data = load_intel_lab(c.data_path, c.data_locs, c.data_start, c.data_end,
                                              c.data_resample_seconds);
            *intel_points = data.points;
            *intel_signal = std::move(data.signal);
            return knn_geometric_graph(*intel_points, c.graph_knn);
        }
    }
    throw ConfigError("config: bad graph source");
}

Setup build_setup(const ExperimentConfig& c) {
    std::vector<std::array<double, 2>> intel_points;
    TimeVaryingSignal intel_signal;
    Graph graph = build_graph(c, &intel_points, &intel_signal);

    if (!graph.connected())
        throw NumericError("setup: graph is disconnected; choose another graph seed");

    SamplingPlan plan;
    std::uint64_t seed_used = c.sample_seed;
    int redraws = 0;
    if (!c.sample_set.empty()) {
        plan = make_plan(graph, c.laplacian, c.sample_set, c.omega, c.delays);
        if (!plan.unique())
            throw NumericError("setup: explicit sample set is not a uniqueness set (A = " +
                               std::to_string(plan.bound_a) + ")");
    } else {
        bool ok = false;
        for (int attempt = 0; attempt <= c.sample_max_redraws; ++attempt) {
            seed_used = c.sample_seed + static_cast<std::uint64_t>(attempt);
            auto sample = random_sample_set(graph.size(), c.sample_m, seed_used);
            plan = make_plan(graph, c.laplacian, sample, c.omega, c.delays);
            if (plan.unique()) {
                ok = true;
                redraws = attempt;
                break;
            }
        }
        if (!ok)
            throw NumericError("setup: no uniqueness set found after " +
                               std::to_string(c.sample_max_redraws + 1) + " sample draws");
    }

    Setup setup{std::move(graph), std::move(plan), {}, seed_used, redraws};
    if (c.graph_source == ExperimentConfig::GraphSource::intel_lab) {
        setup.truth = std::move(intel_signal);
        if (static_cast<int>(setup.truth.frames.size()) < c.steps + 1)
            throw ConfigError("config: steps exceed available data frames (" +
                              std::to_string(setup.truth.frames.size()) + ")");
    } else {
        setup.truth = synthetic_time_varying(setup.plan.band, setup.plan.basis, c.signal_seed,
                                             c.signal_norm, c.signal_delta, c.steps);
    }
    return setup;
}

Signal make_initial(const ExperimentConfig& c, const Setup& setup) {
    const int n = setup.plan.n();
    if (c.init_out_band <= 0.0) return Signal::Zero(n);
    if (c.init_out_band >= 1.0)
        throw ConfigError("config: signal.init_out_band must be in [0, 1)");
    double scale = setup.truth.frame(0).norm();
    if (scale == 0.0) scale = 1.0;
    Signal in_band = generate_bandlimited(setup.plan.band, setup.plan.basis, c.signal_seed + 777,
                                          1.0);
    std::mt19937_64 rng(c.signal_seed + 778);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Signal raw(n);
    for (int i = 0; i < n; ++i) raw(i) = gauss(rng);
    Signal out_band = project(raw, setup.plan.band, setup.plan.basis, Side::high);
    if (out_band.norm() == 0.0)
        throw NumericError("setup: band spans the whole spectrum, no out-of-band direction");
    out_band /= out_band.norm();
    return scale * (std::sqrt(1.0 - c.init_out_band) * in_band +
                    std::sqrt(c.init_out_band) * out_band);
}

RunSummary summarize(const ExperimentConfig& c, const Setup& setup, const RunResult& run) {
    RunSummary summary;
    summary.omega = setup.plan.band.omega;
    summary.bound_a = setup.plan.bound_a;
    summary.bound_b = setup.plan.bound_b;
    summary.tau_max = setup.plan.tau_max;
    summary.sample_seed_used = setup.sample_seed_used;
    summary.redraws = setup.redraws;
    summary.steps = c.steps;
    summary.final_relative_error = run.trace.back().relative;

    ConvergenceReport report = convergence_rate(run.trace, c.steady_window);
    summary.converged = report.converged;
    summary.steady_error = report.steady_error;
    summary.convergence_rate_value = report.rate;

    int window = std::min<int>(c.steady_window, run.trace.size());
    double rel = 0.0;
    for (int i = static_cast<int>(run.trace.size()) - window; i < static_cast<int>(run.trace.size());
         ++i)
        rel += run.trace[i].relative;
    summary.steady_relative_error = rel / window;

    try {
        int k_min = std::max(1, c.steps / 100);
        summary.rate_exponent = rate_exponent_fit(run.trace, k_min, c.steps);
    } catch (const std::exception&) {
        summary.rate_exponent.reset();
    }
    return summary;
}

void write_nodes_csv(const ExperimentConfig& c, const RunResult& run, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run: cannot open " + path);
    out.precision(17);
    out << "k";
    for (int v : c.tracked_nodes) out << ",truth_" << v << ",estimate_" << v;
    out << "\n";
    for (std::size_t k = 0; k < run.node_truths[0].size(); ++k) {
        out << k;
        for (std::size_t t = 0; t < c.tracked_nodes.size(); ++t)
            out << "," << run.node_truths[t][k] << "," << run.node_estimates[t][k];
        out << "\n";
    }
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& c) {
    if (c.steps < 1) throw ConfigError("config: steps must be >= 1");
    if (c.repeat_seeds < 1) throw ConfigError("config: repeat.seeds must be >= 1");
    if (c.schedule.mu1 < 0.0 || c.schedule.beta1 < 0.0)
        throw ConfigError("config: schedule parameters must be nonnegative");
    if (c.schedule.mu1 * c.schedule.beta1 >= 1.0)
        throw ConfigError("config: schedule requires mu * beta < 1");

    Setup setup = build_setup(c);

    nlohmann::json meta{
        {"n", setup.plan.n()},
        {"sample_set", setup.plan.sample_set},
        {"omega", setup.plan.band.omega},
        {"band_dim", setup.plan.band.dim},
        {"frame_bound_a", setup.plan.bound_a},
        {"frame_bound_b", setup.plan.bound_b},
        {"tau_max", setup.plan.tau_max},
        {"sample_seed_used", setup.sample_seed_used},
        {"redraws", setup.redraws},
        {"mode", c.mode == Mode::message_passing ? "message_passing" : "closed_form"},
        {"schedule",
         {{"kind", c.schedule.kind == Schedule::Kind::constant ? "constant" : "diminishing"},
          {"mu", c.schedule.mu1},
          {"beta", c.schedule.beta1}}},
        {"delta", c.signal_delta},
        {"steps", c.steps},
    };

    RunSummary first;
    nlohmann::json seeds = nlohmann::json::array();
    for (int r = 0; r < c.repeat_seeds; ++r) {
        ExperimentConfig cr = c;
        cr.signal_seed = c.signal_seed + static_cast<std::uint64_t>(r);
        Setup* active = &setup;
        Setup local{setup.graph, setup.plan, {}, setup.sample_seed_used, setup.redraws};
        if (r > 0 && c.graph_source != ExperimentConfig::GraphSource::intel_lab) {
            local.truth = synthetic_time_varying(setup.plan.band, setup.plan.basis, cr.signal_seed,
                                                 c.signal_norm, c.signal_delta, c.steps);
            active = &local;
        }

        SimOptions options;
        options.steps = c.steps;
        options.mode = c.mode;
        options.tracked_nodes = c.tracked_nodes;
        Signal initial = make_initial(cr, *active);
        if (initial.norm() > 0.0) options.initial = initial;

        RunResult run = simulate(active->graph, active->plan, c.schedule, active->truth, options);
        std::string trace_path = c.repeat_seeds == 1
                                     ? c.out + "_trace.csv"
                                     : c.out + "_trace_s" + std::to_string(cr.signal_seed) + ".csv";
        save_trace_csv(run.trace, trace_path);
        if (!c.tracked_nodes.empty() && r == 0)
            write_nodes_csv(c, run, c.out + "_nodes.csv");

        RunSummary summary = summarize(cr, *active, run);
        if (r == 0) first = summary;
        seeds.push_back({{"signal_seed", cr.signal_seed},
                         {"trace", trace_path},
                         {"converged", summary.converged},
                         {"steady_error", summary.steady_error},
                         {"steady_relative_error", summary.steady_relative_error},
                         {"convergence_rate", summary.convergence_rate_value},
                         {"rate_exponent", summary.rate_exponent
                                               ? nlohmann::json(*summary.rate_exponent)
                                               : nlohmann::json(nullptr)},
                         {"final_relative_error", summary.final_relative_error}});
    }
    meta["runs"] = seeds;

    std::ofstream out(c.out + "_meta.json");
    if (!out) throw std::runtime_error("run: cannot open " + c.out + "_meta.json");
    out << meta.dump(2) << "\n";
    return first;
}

std::vector<SweepCell> run_sweep(const ExperimentConfig& c) {
    if (c.sweep_mu.empty() || c.sweep_beta.empty())
        throw ConfigError("config: sweep requires sweep.mu and sweep.beta lists");
    std::vector<double> deltas = c.sweep_delta.empty() ? std::vector<double>{c.signal_delta}
                                                       : c.sweep_delta;

    Setup setup = build_setup(c);
    std::vector<SweepCell> cells;

    for (double delta : deltas) {
        for (double beta : c.sweep_beta) {
            for (double mu : c.sweep_mu) {
                SweepCell cell{mu, beta, delta, true, 0.0};
                if (mu < 0.0 || beta < 0.0 || delta < 0.0 || mu * beta >= 1.0) {
                    cell.valid = false;
                    cell.converged_fraction = -1.0;
                    cells.push_back(cell);
                    continue;
                }
                int converged = 0;
                for (int r = 0; r < c.repeat_seeds; ++r) {
                    std::uint64_t seed = c.signal_seed + static_cast<std::uint64_t>(r);
                    TimeVaryingSignal truth = synthetic_time_varying(
                        setup.plan.band, setup.plan.basis, seed, c.signal_norm, delta, c.steps);
                    Schedule schedule{Schedule::Kind::constant, mu, beta};
                    SimOptions options;
                    options.steps = c.steps;
                    options.mode = Mode::closed_form;
                    RunResult run = simulate(setup.graph, setup.plan, schedule, truth, options);

                    bool bounded = true;
                    double cap = 10.0 * (run.trace.front().total + truth.frame(0).norm() + 1.0);
                    for (const TraceRow& row : run.trace)
                        if (!std::isfinite(row.total) || row.total > cap) bounded = false;
                    ConvergenceReport report = convergence_rate(run.trace, c.steady_window);
                    int window = std::min<int>(c.steady_window, run.trace.size());
                    double rel = 0.0;
                    for (int i = static_cast<int>(run.trace.size()) - window;
                         i < static_cast<int>(run.trace.size()); ++i)
                        rel += run.trace[i].relative;
                    rel /= window;
                    if (bounded && report.converged && rel <= c.sweep_converge_rel) ++converged;
                }
                cell.converged_fraction =
                    static_cast<double>(converged) / static_cast<double>(c.repeat_seeds);
                cells.push_back(cell);
            }
        }
    }

    std::ofstream out(c.out + "_sweep.csv");
    if (!out) throw std::runtime_error("sweep: cannot open " + c.out + "_sweep.csv");
    out.precision(17);
    out << "mu,beta,delta,valid,converged_fraction\n";
    for (const SweepCell& cell : cells)
        out << cell.mu << "," << cell.beta << "," << cell.delta << "," << (cell.valid ? 1 : 0)
            << "," << cell.converged_fraction << "\n";
    return cells;
}

}  // namespace dlsr
