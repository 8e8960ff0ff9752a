/* udsched - workflow scheduling simulator with fuzzy pricing-class control.
 *
 * All functions returning uds_status are non-throwing; on failure they
 * return a code and leave a human-readable message in uds_last_error()
 * (thread-local).  Out-parameters are written only on UDS_OK.  Every
 * handle is freed with the matching *_free function.
 */
#ifndef UDSCHED_H
#define UDSCHED_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uds_status {
    UDS_OK = 0,
    UDS_ERR_PARSE = 1,      /* malformed input document */
    UDS_ERR_CYCLE = 2,      /* dependency cycle */
    UDS_ERR_REFERENCE = 3,  /* unknown id referenced */
    UDS_ERR_VALIDATION = 4, /* precondition violated */
    UDS_ERR_CONSTRAINT = 5, /* schedule constraint violated */
    UDS_ERR_WATCHDOG = 6,   /* simulated time exceeded the cap */
    UDS_ERR_IO = 7,         /* file could not be read or written */
    UDS_ERR_INTERNAL = 8
} uds_status;

typedef struct uds_catalog uds_catalog;
typedef struct uds_workflow uds_workflow;
typedef struct uds_result uds_result;

const char* uds_version(void);

/* Message for the most recent failing call on this thread ("" if none). */
const char* uds_last_error(void);

/* ---- VM catalogs ---------------------------------------------------- */

/* Built-in five-type catalog, one reliable and one unreliable instance
 * per type (pool of 10). */
uds_status uds_catalog_default(uds_catalog** out);

/* Loads a catalog file: optional "base_mips = <v>" line plus one
 * "type <name> <vcpus> <price_reliable> <price_unreliable> <p_hourly>"
 * line per VM type. */
uds_status uds_catalog_load(const char* path, uds_catalog** out);

/* Copy with every interruption probability set to zero. */
uds_status uds_catalog_zero_hazards(const uds_catalog* in, uds_catalog** out);

int uds_catalog_pool_size(const uds_catalog* c);
double uds_catalog_slowest_mips(const uds_catalog* c);
void uds_catalog_free(uds_catalog* c);

/* ---- workflows ------------------------------------------------------ */

/* DAX job runtimes are interpreted as seconds on the slowest catalog VM.
 * The loaded graph is normalized to a single entry and a single exit. */
uds_status uds_workflow_load_dax(const char* path, const uds_catalog* c,
                                 uds_workflow** out);
uds_status uds_workflow_parse_dax(const char* xml_text, const uds_catalog* c,
                                  uds_workflow** out);

/* pattern: pipeline | fanout_fanin | aggregation | distribution |
 * redistribution.  Deterministic for a given (pattern, n_tasks, seed). */
uds_status uds_workflow_synthetic(const char* pattern, int n_tasks, uint64_t seed,
                                  uds_workflow** out);

typedef struct uds_workflow_info {
    int n_tasks;  /* including pseudo tasks */
    int n_edges;
    int n_pseudo; /* inserted by normalization */
    int entry_id;
    int exit_id;
} uds_workflow_info;

uds_status uds_workflow_get_info(const uds_workflow* w, uds_workflow_info* out);
void uds_workflow_free(uds_workflow* w);

/* ---- reference bounds ----------------------------------------------- */

typedef struct uds_bounds {
    double m_lower; /* makespan of the static min-finish-time plan */
    double c_lower; /* cost of the static cheapest plan */
    double m_upper; /* m_lower * (1 + a) */
    double c_upper; /* c_lower * (1 + b) */
    double heft_plan_cost;   /* cost of the makespan-optimal plan */
    double gc_plan_makespan; /* makespan of the cost-optimal plan */
} uds_bounds;

uds_status uds_compute_bounds(const uds_workflow* w, const uds_catalog* c, double a,
                              double b, uds_bounds* out);

/* ---- simulation ----------------------------------------------------- */

typedef struct uds_run_params {
    double theta; /* reliable-class threshold in [0,1] */
    double a;     /* makespan bound slack, > 0 */
    double b;     /* cost bound slack, > 0 */
    uint64_t seed;
    double slot_seconds;
    double billing_cycle_seconds;
    double bandwidth_mbps;
    double provisioning_seconds;
    int variation_enabled;
    double variation_mean;
    double variation_stdev;
    double variation_cap;
    double max_sim_seconds;
} uds_run_params;

/* Fills the defaults: theta 0.5, a 2, b 2, seed 1, 1 s slots, 3600 s
 * billing cycle, 20 Mbps, 96.9 s provisioning, variation on
 * (0.095/0.05 capped at 0.19), 5e7 s watchdog. */
void uds_run_params_init(uds_run_params* p);

uds_status uds_run(const uds_workflow* w, const uds_catalog* c,
                   const uds_run_params* p, uds_result** out);

typedef struct uds_metrics {
    double m_final;
    double c_final;
    double m_lower;
    double c_lower;
    double norm_m_final; /* m_final / m_lower */
    double norm_c_final; /* c_final / c_lower */
    double acc;          /* percent of first-attempt pricing decisions that
                          * match a reference assignment */
    double succ_r;       /* percent of tasks finishing on attempt 1 */
    int delta;           /* correct decisions behind acc */
    int n_tasks;         /* scored (non-pseudo) tasks */
    int n_revocations;
    int n_retried_tasks;
} uds_metrics;

uds_status uds_result_metrics(const uds_result* r, uds_metrics* out);

/* CSV columns: task,vm,pricing,est,eft,ast,aft,attempt */
uds_status uds_result_write_trace_csv(const uds_result* r, const char* path);
void uds_result_free(uds_result* r);

/* ---- helpers -------------------------------------------------------- */

/* Pricing-model indicator of the default fuzzy controller; inputs are
 * clamped to [0,1].  Returns NaN on internal failure. */
double uds_flc_pmi(double norm_m, double norm_c);

/* Stable per-run seed derivation for sweeps and replications. */
uint64_t uds_derive_seed(uint64_t master_seed, const char* label, uint64_t index);

#ifdef __cplusplus
}
#endif

#endif /* UDSCHED_H */
