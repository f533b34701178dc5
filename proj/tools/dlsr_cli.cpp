// Command-line harness for the DLSR simulation library. Talks to the core
// exclusively through the C API in dlsr.h.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlsr.h"

namespace {

// Exit codes: 0 ok, 1 config error, 2 numerical failure.
int exit_code(dlsr_status status) {
    switch (status) {
        case DLSR_OK:
            return 0;
        case DLSR_ERR_NUMERIC:
            return 2;
        default:
            return 1;
    }
}

int report(dlsr_status status) {
    if (status != DLSR_OK) std::fprintf(stderr, "error: %s\n", dlsr_last_error());
    return exit_code(status);
}

struct ConfigHandle {
    dlsr_config* ptr = nullptr;
    ~ConfigHandle() { dlsr_config_free(ptr); }
};

dlsr_status apply_overrides(dlsr_config* config,
                            const std::vector<std::pair<std::string, std::string>>& overrides) {
    for (const auto& [key, value] : overrides) {
        dlsr_status status = dlsr_config_set(config, key.c_str(), value.c_str());
        if (status != DLSR_OK) return status;
    }
    return DLSR_OK;
}

void print_summary(const dlsr_result* result) {
    double omega = 0, a = 0, b = 0, steady = 0, steady_rel = 0, rate = 0, final_rel = 0;
    int tau_max = 0, converged = 0;
    dlsr_result_omega(result, &omega);
    dlsr_result_frame_bounds(result, &a, &b);
    dlsr_result_tau_max(result, &tau_max);
    dlsr_result_converged(result, &converged);
    dlsr_result_steady_error(result, &steady);
    dlsr_result_steady_relative_error(result, &steady_rel);
    dlsr_result_convergence_rate(result, &rate);
    dlsr_result_final_relative_error(result, &final_rel);
    std::printf("omega            %.6g\n", omega);
    std::printf("frame bounds     A=%.6g B=%.6g\n", a, b);
    std::printf("tau_max          %d\n", tau_max);
    std::printf("converged        %s\n", converged ? "yes" : "no");
    std::printf("steady error     %.6g\n", steady);
    std::printf("steady rel error %.6g\n", steady_rel);
    std::printf("convergence rate %.6g\n", rate);
    std::printf("final rel error  %.6g\n", final_rel);
    double exponent = 0;
    if (dlsr_result_rate_exponent(result, &exponent) == DLSR_OK)
        std::printf("rate exponent    %.6g\n", exponent);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DLSR: distributed reconstruction of bandlimited graph signals"};
    app.require_subcommand(1);

    // gen-graph
    auto* gen = app.add_subcommand("gen-graph", "Generate a random geometric k-NN graph");
    std::uint64_t gen_seed = 1;
    int gen_n = 100, gen_k = 4;
    std::string gen_out = "graph.txt";
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--knn", gen_k, "neighbors per vertex");
    gen->add_option("--seed", gen_seed, "point placement seed");
    gen->add_option("--out", gen_out, "edge-list output path");

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "Build and save a sampling plan");
    std::string plan_graph, plan_out = "plan.json", plan_laplacian = "normalized";
    int plan_m = 20, plan_redraws = 20;
    std::uint64_t plan_seed = 1;
    double plan_omega = -1.0;
    bool plan_zero_delays = false;
    plan_cmd->add_option("--graph", plan_graph, "edge-list file")->required();
    plan_cmd->add_option("--m", plan_m, "sample set size");
    plan_cmd->add_option("--seed", plan_seed, "sample draw seed");
    plan_cmd->add_option("--omega", plan_omega, "explicit cutoff (< 0: admissible bound)");
    plan_cmd->add_option("--laplacian", plan_laplacian, "normalized|unnormalized");
    plan_cmd->add_option("--max-redraws", plan_redraws, "extra draws if non-unique");
    plan_cmd->add_flag("--zero-delays", plan_zero_delays, "ignore hop delays");
    plan_cmd->add_option("--out", plan_out, "plan JSON output path");

    // run / sweep / real-data share config + overrides
    std::string run_config, run_out, run_mode;
    std::int64_t run_seed = -1, run_steps = -1;
    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", run_config, "experiment config file");
        if (config_required) opt->required();
        cmd->add_option("--seed", run_seed, "override signal seed");
        cmd->add_option("--steps", run_steps, "override step count");
        cmd->add_option("--out", run_out, "override output prefix");
        cmd->add_option("--mode", run_mode, "message_passing|closed_form");
    };
    auto* run_cmd = app.add_subcommand("run", "Run one experiment from a config file");
    add_common(run_cmd, true);
    auto* sweep_cmd = app.add_subcommand("sweep", "Convergence-region sweep over mu x beta x delta");
    add_common(sweep_cmd, true);
    auto* real_cmd = app.add_subcommand("real-data", "Reconstruct the Intel lab temperature data");
    add_common(real_cmd, false);
    std::string real_data, real_locs;
    real_cmd->add_option("--data", real_data, "Intel lab readings file")->required();
    real_cmd->add_option("--locs", real_locs, "mote locations file (id x y per line)")->required();

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        dlsr_graph* graph = nullptr;
        dlsr_status status = dlsr_graph_random_geometric(gen_n, gen_k, gen_seed, &graph);
        if (status == DLSR_OK) status = dlsr_graph_save(graph, gen_out.c_str());
        if (status == DLSR_OK) {
            int connected = 0;
            dlsr_graph_is_connected(graph, &connected);
            std::printf("wrote %s (n=%d, connected=%s)\n", gen_out.c_str(), gen_n,
                        connected ? "yes" : "no");
        }
        dlsr_graph_free(graph);
        return report(status);
    }

    if (plan_cmd->parsed()) {
        dlsr_graph* graph = nullptr;
        dlsr_status status = dlsr_graph_load(plan_graph.c_str(), &graph);
        dlsr_plan* plan = nullptr;
        if (status == DLSR_OK) {
            int kind = plan_laplacian == "unnormalized" ? 1 : 0;
            status = dlsr_plan_build_random(graph, plan_m, plan_seed, plan_omega, kind,
                                            plan_zero_delays ? 1 : 0, plan_redraws, &plan);
        }
        if (status == DLSR_OK) status = dlsr_plan_save(plan, plan_out.c_str());
        if (status == DLSR_OK) {
            double omega = 0, a = 0, b = 0;
            int tau_max = 0;
            dlsr_plan_omega(plan, &omega);
            dlsr_plan_frame_bounds(plan, &a, &b);
            dlsr_plan_tau_max(plan, &tau_max);
            std::printf("wrote %s (omega=%.6g, A=%.6g, B=%.6g, tau_max=%d)\n", plan_out.c_str(),
                        omega, a, b, tau_max);
        }
        dlsr_plan_free(plan);
        dlsr_graph_free(graph);
        return report(status);
    }

    // run / sweep / real-data
    ConfigHandle config;
    dlsr_status status =
        run_config.empty() ? dlsr_config_new(&config.ptr)
                           : dlsr_config_load(run_config.c_str(), &config.ptr);
    if (status != DLSR_OK) return report(status);

    std::vector<std::pair<std::string, std::string>> overrides;
    if (real_cmd->parsed()) {
        overrides.emplace_back("graph.source", "intel_lab");
        overrides.emplace_back("data.path", real_data);
        overrides.emplace_back("data.locs", real_locs);
    }
    if (run_seed >= 0) overrides.emplace_back("signal.seed", std::to_string(run_seed));
    if (run_steps >= 0) overrides.emplace_back("steps", std::to_string(run_steps));
    if (!run_out.empty()) overrides.emplace_back("out", run_out);
    if (!run_mode.empty()) overrides.emplace_back("mode", run_mode);
    status = apply_overrides(config.ptr, overrides);
    if (status != DLSR_OK) return report(status);

    if (sweep_cmd->parsed()) {
        status = dlsr_sweep(config.ptr);
        if (status == DLSR_OK) std::printf("sweep complete\n");
        return report(status);
    }

    dlsr_result* result = nullptr;
    status = dlsr_run(config.ptr, &result);
    if (status == DLSR_OK) print_summary(result);
    dlsr_result_free(result);
    return report(status);
}
