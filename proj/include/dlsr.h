/* Distributed least-square reconstruction of bandlimited graph signals.
 *
 * C interface to the simulation core. All objects are opaque handles that
 * must be released with the matching *_free function. Functions return
 * DLSR_OK on success; on failure they return an error code and leave a
 * human-readable message retrievable with dlsr_last_error() (thread local).
 */
#ifndef DLSR_H
#define DLSR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dlsr_status {
    DLSR_OK = 0,
    DLSR_ERR_INVALID = 1, /* bad argument or configuration */
    DLSR_ERR_IO = 2,      /* file missing or unreadable */
    DLSR_ERR_NUMERIC = 3, /* non-unique plan, divergence, solver failure */
    DLSR_ERR_INTERNAL = 4
} dlsr_status;

typedef struct dlsr_graph dlsr_graph;
typedef struct dlsr_plan dlsr_plan;
typedef struct dlsr_config dlsr_config;
typedef struct dlsr_result dlsr_result;

const char* dlsr_last_error(void);

/* ---- graphs ------------------------------------------------------------ */

/* Symmetric-union k-nearest-neighbor graph over 2-D points (xy interleaved,
 * length 2n), weights 1/dist^2. */
dlsr_status dlsr_graph_knn(const double* xy, size_t n, int k, dlsr_graph** out);

/* Same construction over n points drawn uniformly from the unit square. */
dlsr_status dlsr_graph_random_geometric(size_t n, int k, uint64_t seed, dlsr_graph** out);

/* Edge-list text format: header "n <count>", then "u v w" per line. */
dlsr_status dlsr_graph_load(const char* path, dlsr_graph** out);
dlsr_status dlsr_graph_save(const dlsr_graph* g, const char* path);

dlsr_status dlsr_graph_vertex_count(const dlsr_graph* g, size_t* out);
dlsr_status dlsr_graph_edge_count(const dlsr_graph* g, size_t* out);
dlsr_status dlsr_graph_is_connected(const dlsr_graph* g, int* out);

void dlsr_graph_free(dlsr_graph* g);

/* ---- sampling plans ---------------------------------------------------- */

/* Builds a plan for an explicit sample set. Pass omega < 0 to select the
 * admissible-cutoff policy (smallest singular value of the squared
 * Laplacian restricted to the complement of S). laplacian_kind: 0 =
 * normalized, 1 = unnormalized. zero_delays != 0 replaces hop delays with
 * zeros. Building succeeds even for non-unique sets; query dlsr_plan_unique
 * before simulating. */
dlsr_status dlsr_plan_build(const dlsr_graph* g, const size_t* samples, size_t m, double omega,
                            int laplacian_kind, int zero_delays, dlsr_plan** out);

/* Draws m vertices uniformly; retries with seed+1, ... until the set is a
 * uniqueness set, at most max_redraws extra draws. */
dlsr_status dlsr_plan_build_random(const dlsr_graph* g, size_t m, uint64_t seed, double omega,
                                   int laplacian_kind, int zero_delays, int max_redraws,
                                   dlsr_plan** out);

dlsr_status dlsr_plan_omega(const dlsr_plan* p, double* out);
dlsr_status dlsr_plan_frame_bounds(const dlsr_plan* p, double* a, double* b);
dlsr_status dlsr_plan_tau_max(const dlsr_plan* p, int* out);
dlsr_status dlsr_plan_unique(const dlsr_plan* p, int* out);
dlsr_status dlsr_plan_save(const dlsr_plan* p, const char* path);

void dlsr_plan_free(dlsr_plan* p);

/* ---- experiment configs ------------------------------------------------ */

/* Flat key = value configuration; see README for the schema. */
dlsr_status dlsr_config_new(dlsr_config** out);
dlsr_status dlsr_config_load(const char* path, dlsr_config** out);
dlsr_status dlsr_config_set(dlsr_config* c, const char* key, const char* value);
void dlsr_config_free(dlsr_config* c);

/* Runs the configured experiment, writing the trace CSV(s) and metadata
 * sidecar next to the configured output prefix. */
dlsr_status dlsr_run(const dlsr_config* c, dlsr_result** out);

/* Grid sweep over the configured sweep.mu x sweep.beta x sweep.delta lists;
 * writes <out>_sweep.csv. */
dlsr_status dlsr_sweep(const dlsr_config* c);

/* ---- run summaries ----------------------------------------------------- */

dlsr_status dlsr_result_steady_error(const dlsr_result* r, double* out);
dlsr_status dlsr_result_steady_relative_error(const dlsr_result* r, double* out);
dlsr_status dlsr_result_convergence_rate(const dlsr_result* r, double* out);
/* DLSR_ERR_NUMERIC when no exponent could be fitted (nonpositive errors). */
dlsr_status dlsr_result_rate_exponent(const dlsr_result* r, double* out);
dlsr_status dlsr_result_final_relative_error(const dlsr_result* r, double* out);
dlsr_status dlsr_result_converged(const dlsr_result* r, int* out);
dlsr_status dlsr_result_omega(const dlsr_result* r, double* out);
dlsr_status dlsr_result_frame_bounds(const dlsr_result* r, double* a, double* b);
dlsr_status dlsr_result_tau_max(const dlsr_result* r, int* out);

void dlsr_result_free(dlsr_result* r);

#ifdef __cplusplus
}
#endif

#endif /* DLSR_H */
