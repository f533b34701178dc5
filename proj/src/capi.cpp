#include "dlsr.h"

#include <string>
#include <vector>

#include "core/experiment.hpp"

namespace {

thread_local std::string g_last_error;

dlsr_status fail(dlsr_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

dlsr_status from_exception() {
    try {
        throw;
    } catch (const dlsr::ConfigError& e) {
        std::string what = e.what();
        if (what.find("cannot open") != std::string::npos)
            return fail(DLSR_ERR_IO, what);
        return fail(DLSR_ERR_INVALID, what);
    } catch (const dlsr::NumericError& e) {
        return fail(DLSR_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(DLSR_ERR_INVALID, e.what());
    } catch (const std::runtime_error& e) {
        std::string what = e.what();
        if (what.find("cannot open") != std::string::npos)
            return fail(DLSR_ERR_IO, what);
        return fail(DLSR_ERR_NUMERIC, what);
    } catch (const std::exception& e) {
        return fail(DLSR_ERR_INTERNAL, e.what());
    }
}

}  // namespace

struct dlsr_graph {
    dlsr::Graph graph;
};

struct dlsr_plan {
    dlsr::SamplingPlan plan;
};

struct dlsr_config {
    dlsr::ExperimentConfig config;
};

struct dlsr_result {
    dlsr::RunSummary summary;
};

extern "C" {

const char* dlsr_last_error(void) { return g_last_error.c_str(); }

dlsr_status dlsr_graph_knn(const double* xy, size_t n, int k, dlsr_graph** out) {
    if (!xy || !out) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        std::vector<std::array<double, 2>> points(n);
        for (size_t i = 0; i < n; ++i) points[i] = {xy[2 * i], xy[2 * i + 1]};
        *out = new dlsr_graph{dlsr::knn_geometric_graph(points, k)};
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

dlsr_status dlsr_graph_random_geometric(size_t n, int k, uint64_t seed, dlsr_graph** out) {
    if (!out) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        auto points = dlsr::random_points(static_cast<int>(n), seed);
        *out = new dlsr_graph{dlsr::knn_geometric_graph(points, k)};
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

dlsr_status dlsr_graph_load(const char* path, dlsr_graph** out) {
    if (!path || !out) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        *out = new dlsr_graph{dlsr::load_edge_list(path)};
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

dlsr_status dlsr_graph_save(const dlsr_graph* g, const char* path) {
    if (!g || !path) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        dlsr::save_edge_list(g->graph, path);
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

dlsr_status dlsr_graph_vertex_count(const dlsr_graph* g, size_t* out) {
    if (!g || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = static_cast<size_t>(g->graph.size());
    return DLSR_OK;
}

dlsr_status dlsr_graph_edge_count(const dlsr_graph* g, size_t* out) {
    if (!g || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = g->graph.edges().size();
    return DLSR_OK;
}

dlsr_status dlsr_graph_is_connected(const dlsr_graph* g, int* out) {
    if (!g || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = g->graph.connected() ? 1 : 0;
    return DLSR_OK;
}

void dlsr_graph_free(dlsr_graph* g) { delete g; }

static dlsr::LaplacianKind kind_from_int(int laplacian_kind) {
    return laplacian_kind == 0 ? dlsr::LaplacianKind::normalized
                               : dlsr::LaplacianKind::unnormalized;
}

dlsr_status dlsr_plan_build(const dlsr_graph* g, const size_t* samples, size_t m, double omega,
                            int laplacian_kind, int zero_delays, dlsr_plan** out) {
    if (!g || !samples || !out) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        std::vector<int> sample(samples, samples + m);
        auto delays = zero_delays ? dlsr::DelayModel::zero : dlsr::DelayModel::hops;
        *out = new dlsr_plan{
            dlsr::make_plan(g->graph, kind_from_int(laplacian_kind), sample, omega, delays)};
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

dlsr_status dlsr_plan_build_random(const dlsr_graph* g, size_t m, uint64_t seed, double omega,
                                   int laplacian_kind, int zero_delays, int max_redraws,
                                   dlsr_plan** out) {
    if (!g || !out) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        auto delays = zero_delays ? dlsr::DelayModel::zero : dlsr::DelayModel::hops;
        for (int attempt = 0; attempt <= max_redraws; ++attempt) {
            auto sample = dlsr::random_sample_set(g->graph.size(), static_cast<int>(m),
                                                  seed + static_cast<uint64_t>(attempt));
            auto plan =
                dlsr::make_plan(g->graph, kind_from_int(laplacian_kind), sample, omega, delays);
            if (plan.unique()) {
                *out = new dlsr_plan{std::move(plan)};
                return DLSR_OK;
            }
        }
        return fail(DLSR_ERR_NUMERIC, "no uniqueness set found after " +
                                          std::to_string(max_redraws + 1) + " draws");
    } catch (...) {
        return from_exception();
    }
}

dlsr_status dlsr_plan_omega(const dlsr_plan* p, double* out) {
    if (!p || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = p->plan.band.omega;
    return DLSR_OK;
}

dlsr_status dlsr_plan_frame_bounds(const dlsr_plan* p, double* a, double* b) {
    if (!p || !a || !b) return fail(DLSR_ERR_INVALID, "null argument");
    *a = p->plan.bound_a;
    *b = p->plan.bound_b;
    return DLSR_OK;
}

dlsr_status dlsr_plan_tau_max(const dlsr_plan* p, int* out) {
    if (!p || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = p->plan.tau_max;
    return DLSR_OK;
}

dlsr_status dlsr_plan_unique(const dlsr_plan* p, int* out) {
    if (!p || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = p->plan.unique() ? 1 : 0;
    return DLSR_OK;
}

dlsr_status dlsr_plan_save(const dlsr_plan* p, const char* path) {
    if (!p || !path) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        dlsr::save_plan_json(p->plan, path);
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

void dlsr_plan_free(dlsr_plan* p) { delete p; }

dlsr_status dlsr_config_new(dlsr_config** out) {
    if (!out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = new dlsr_config{};
    return DLSR_OK;
}

dlsr_status dlsr_config_load(const char* path, dlsr_config** out) {
    if (!path || !out) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        *out = new dlsr_config{dlsr::parse_config_file(path)};
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

dlsr_status dlsr_config_set(dlsr_config* c, const char* key, const char* value) {
    if (!c || !key || !value) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        dlsr::apply_config_key(c->config, key, value);
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

void dlsr_config_free(dlsr_config* c) { delete c; }

dlsr_status dlsr_run(const dlsr_config* c, dlsr_result** out) {
    if (!c) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        dlsr::RunSummary summary = dlsr::run_experiment(c->config);
        if (out) *out = new dlsr_result{summary};
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

dlsr_status dlsr_sweep(const dlsr_config* c) {
    if (!c) return fail(DLSR_ERR_INVALID, "null argument");
    try {
        dlsr::run_sweep(c->config);
        return DLSR_OK;
    } catch (...) {
        return from_exception();
    }
}

dlsr_status dlsr_result_steady_error(const dlsr_result* r, double* out) {
    if (!r || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = r->summary.steady_error;
    return DLSR_OK;
}

dlsr_status dlsr_result_steady_relative_error(const dlsr_result* r, double* out) {
    if (!r || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = r->summary.steady_relative_error;
    return DLSR_OK;
}

dlsr_status dlsr_result_convergence_rate(const dlsr_result* r, double* out) {
    if (!r || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = r->summary.convergence_rate_value;
    return DLSR_OK;
}

dlsr_status dlsr_result_rate_exponent(const dlsr_result* r, double* out) {
    if (!r || !out) return fail(DLSR_ERR_INVALID, "null argument");
    if (!r->summary.rate_exponent)
        return fail(DLSR_ERR_NUMERIC, "no rate exponent available for this trace");
    *out = *r->summary.rate_exponent;
    return DLSR_OK;
}

dlsr_status dlsr_result_final_relative_error(const dlsr_result* r, double* out) {
    if (!r || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = r->summary.final_relative_error;
    return DLSR_OK;
}

dlsr_status dlsr_result_converged(const dlsr_result* r, int* out) {
    if (!r || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = r->summary.converged ? 1 : 0;
    return DLSR_OK;
}

dlsr_status dlsr_result_omega(const dlsr_result* r, double* out) {
    if (!r || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = r->summary.omega;
    return DLSR_OK;
}

dlsr_status dlsr_result_frame_bounds(const dlsr_result* r, double* a, double* b) {
    if (!r || !a || !b) return fail(DLSR_ERR_INVALID, "null argument");
    *a = r->summary.bound_a;
    *b = r->summary.bound_b;
    return DLSR_OK;
}

dlsr_status dlsr_result_tau_max(const dlsr_result* r, int* out) {
    if (!r || !out) return fail(DLSR_ERR_INVALID, "null argument");
    *out = r->summary.tau_max;
    return DLSR_OK;
}

void dlsr_result_free(dlsr_result* r) { delete r; }

}  // extern "C"
