/* nsbench — incompressible Navier-Stokes playground with swappable pressure
 * solvers and a benchmarking harness.
 *
 * C API: every entry point returns an nsb_status; objects are opaque handles
 * released with the matching _free call. nsb_last_error() describes the most
 * recent failure on the calling thread.
 */
#ifndef NSBENCH_H
#define NSBENCH_H

#include <stddef.h>

#if defined(_WIN32)
#define NSB_API __declspec(dllexport)
#else
#define NSB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nsb_status {
    NSB_OK = 0,
    NSB_ERR_INVALID_ARGUMENT = 1,
    NSB_ERR_CONFIG = 2,
    NSB_ERR_IO = 3,
    NSB_ERR_SINGULAR = 4,
    NSB_ERR_NO_CONVERGENCE = 5,
    NSB_ERR_INTERNAL = 6
} nsb_status;

NSB_API const char *nsb_status_name(nsb_status s);

/* Message for the last failing call on this thread; empty string if none. */
NSB_API const char *nsb_last_error(void);

/* ---- configuration ----------------------------------------------------- */

typedef struct nsb_config nsb_config;

NSB_API nsb_status nsb_config_create(nsb_config **out);
NSB_API void nsb_config_free(nsb_config *c);

/* Keys use the documented config vocabulary (case, nx, ny, re, solver, tol,
 * omega, omega_sweep, out_dir, ...). Values are strings; validation happens
 * when the config is consumed, except for immediately checkable keys. */
NSB_API nsb_status nsb_config_set(nsb_config *c, const char *key, const char *value);
NSB_API nsb_status nsb_config_get(const nsb_config *c, const char *key, char *buf, size_t bufsz);

/* JSON object of key/value strings. */
NSB_API nsb_status nsb_config_load(nsb_config *c, const char *path);
NSB_API nsb_status nsb_config_save(const nsb_config *c, const char *path);

/* ---- time marching ------------------------------------------------------ */

typedef struct nsb_run_summary {
    long cycles_run;
    double final_time;
    double monitor_u;
    double max_divergence;
    int reached_steady;
    long active_cells;
    long total_poisson_iterations;
} nsb_run_summary;

/* Marches the configured case, writing snapshots, Time_U.csv and the final
 * fields under out_dir. */
NSB_API nsb_status nsb_run(const nsb_config *c, nsb_run_summary *out);

/* ---- solver benchmarks -------------------------------------------------- */

typedef struct nsb_report nsb_report;

typedef struct nsb_report_row {
    char method[16];
    double omega;
    long iterations;
    double work_units;
    double wall_seconds;
    int converged;
} nsb_report_row;

/* Races the configured solvers ("solvers" key, comma separated; empty = all)
 * on the case's first pressure solve, from identical zero starts. */
NSB_API nsb_status nsb_race(const nsb_config *c, nsb_report **out);

/* One solve per omega in the configured sweep grid for each swept method;
 * rows carry (method, omega, iterations). */
NSB_API nsb_status nsb_sweep_omega(const nsb_config *c, nsb_report **out);

NSB_API long nsb_report_size(const nsb_report *r);
NSB_API nsb_status nsb_report_get(const nsb_report *r, long index, nsb_report_row *out);

/* Writes report.csv plus per-method trace/sweep CSVs under dir. */
NSB_API nsb_status nsb_report_emit(const nsb_report *r, const char *dir);
NSB_API void nsb_report_free(nsb_report *r);

/* ---- manufactured-solution verification --------------------------------- */

typedef struct nsb_mms_summary {
    double max_error;
    long iterations;
    double work_units;
    int converged;
    double reductions[64]; /* per-iteration residual reduction factors */
    long n_reductions;     /* entries filled in reductions */
} nsb_mms_summary;

NSB_API nsb_status nsb_mms(const nsb_config *c, nsb_mms_summary *out);

#ifdef __cplusplus
}
#endif

#endif /* NSBENCH_H */
