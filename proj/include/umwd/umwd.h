/* SPDX-License-Identifier: Apache-2.0 */
/*
 * umwd: constant-modulus waveform design for joint sensing and
 * communication. C interface of the shared library.
 *
 * Conventions:
 *  - every function returns a umwd_status; UMWD_OK is 0;
 *  - on failure, umwd_last_error() returns a thread-local message that
 *    stays valid until the next failing call on the same thread;
 *  - objects are opaque handles created and destroyed here; destroy
 *    functions accept NULL;
 *  - complex buffers are doubles with re/im interleaved, row-major over
 *    an N x M matrix (sample index fastest along rows, antennas across),
 *    i.e. buffer[2*(t*M + k)] is Re X[t][k] and [.. + 1] is Im X[t][k].
 */

#ifndef UMWD_H
#define UMWD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UMWD_API __declspec(dllexport)
#else
#define UMWD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum umwd_status {
    UMWD_OK = 0,
    UMWD_ERR_NULL_POINTER = 1,
    UMWD_ERR_INVALID_ARGUMENT = 2,
    UMWD_ERR_DIMENSION_MISMATCH = 3,
    UMWD_ERR_SINGULAR_RETRACTION = 4,
    UMWD_ERR_INVALID_STATE = 5,
    UMWD_ERR_INTERNAL = 6
} umwd_status;

/* Termination reason of a solver run. */
typedef enum umwd_solve_status {
    UMWD_SOLVE_CONVERGED = 0, /* sampling radius exhausted with a small direction */
    UMWD_SOLVE_STALLED = 1,   /* sampling radius exhausted during line-search stalls */
    UMWD_SOLVE_MAX_ITERS = 2
} umwd_solve_status;

/* Which correlation term the solver minimizes alongside the beampattern
 * term: sum of |P| (the design objective) or sum of |P|^2 (the smooth
 * comparison variant). */
typedef enum umwd_objective_kind {
    UMWD_CORR_ABS = 0,
    UMWD_CORR_SQUARED = 1
} umwd_objective_kind;

typedef struct umwd_scenario umwd_scenario;
typedef struct umwd_waveform umwd_waveform;
typedef struct umwd_trace umwd_trace;

/* ------------------------------------------------------------------ */
/* Library info                                                        */

UMWD_API const char *umwd_version(void);

/* Thread-local message for the last failing call on this thread; the
 * empty string when no failure has been recorded. */
UMWD_API const char *umwd_last_error(void);

/* ------------------------------------------------------------------ */
/* Scenario                                                            */

typedef struct umwd_scenario_params {
    int32_t m;                  /* antennas */
    int32_t n;                  /* samples per waveform */
    double d_over_lambda;       /* element spacing over wavelength */
    double grid_step_deg;       /* angle grid resolution */
    const double *desired_angles_deg;
    size_t desired_count;
    double comm_angle_deg;
    const int32_t *delays;      /* correlation delay set */
    size_t delay_count;
    double mainlobe_halfwidth_deg; /* guard half-width; < 0 selects 2 * grid_step_deg */
    double weight_g;
    double weight_h;
} umwd_scenario_params;

UMWD_API umwd_status umwd_scenario_create(const umwd_scenario_params *params,
                                          umwd_scenario **out);
UMWD_API void umwd_scenario_destroy(umwd_scenario *sc);

UMWD_API umwd_status umwd_scenario_dims(const umwd_scenario *sc, int32_t *n, int32_t *m);

/* Number of grid angles (with or without the +-90 endpoints). */
UMWD_API umwd_status umwd_scenario_grid_size(const umwd_scenario *sc, int include_endpoints,
                                             size_t *count);

/* Number of (pair, delay) entries in the correlation profile. */
UMWD_API umwd_status umwd_scenario_profile_size(const umwd_scenario *sc, size_t *count);

/* ------------------------------------------------------------------ */
/* Waveforms                                                           */

/* Copy an interleaved buffer (2*n*m doubles, layout above) into a new
 * waveform object. */
UMWD_API umwd_status umwd_waveform_create(int32_t n, int32_t m, const double *interleaved,
                                          umwd_waveform **out);
UMWD_API void umwd_waveform_destroy(umwd_waveform *wf);

UMWD_API umwd_status umwd_waveform_dims(const umwd_waveform *wf, int32_t *n, int32_t *m);

/* Copy the waveform out as interleaved doubles; the buffer must hold
 * 2*n*m values. */
UMWD_API umwd_status umwd_waveform_data(const umwd_waveform *wf, double *interleaved);

/* Uniform random unit-modulus waveform of the scenario's dimensions. */
UMWD_API umwd_status umwd_waveform_random(const umwd_scenario *sc, uint64_t seed,
                                          umwd_waveform **out);

/* ------------------------------------------------------------------ */
/* Design                                                              */

typedef struct umwd_solve_options {
    double epsilon0;        /* initial sampling radius */
    double epsilon_shrink;  /* radius multiplier on shrink */
    double epsilon_min;     /* radius at which the run terminates */
    int32_t sample_count;   /* subgradients per iteration */
    double armijo_c;        /* sufficient-decrease constant */
    double backtrack_factor;
    double alpha0;          /* first trial step */
    double direction_tol;   /* direction norm triggering a shrink */
    int32_t max_iters;
    uint64_t seed;          /* drives the sampling streams */
} umwd_solve_options;

UMWD_API void umwd_solve_options_default(umwd_solve_options *opts);

typedef struct umwd_iterate_info {
    int64_t iteration;
    double objective;      /* f at the end of the iteration */
    double direction_norm; /* minimum-norm-point norm */
    double step;           /* accepted step, 0 on shrink */
    double epsilon;        /* sampling radius after the iteration */
    double wall_s;         /* elapsed seconds, informational */
} umwd_iterate_info;

/* Called after every iteration; user owns no pointers in info. */
typedef void (*umwd_progress_fn)(const umwd_iterate_info *info, void *user);

typedef struct umwd_solve_summary {
    int32_t status;        /* umwd_solve_status */
    int64_t iterations;
    int64_t accepted_steps;
    double final_objective;
} umwd_solve_summary;

/* Minimize the scenario objective on the unit-modulus manifold from x0
 * (NULL: random start drawn from opts->seed). Any of out_summary and
 * out_trace may be NULL; *out_waveform is always produced on UMWD_OK.
 * The trace holds one entry per iteration. */
UMWD_API umwd_status umwd_design(const umwd_scenario *sc, const umwd_solve_options *opts,
                                 umwd_objective_kind kind, const umwd_waveform *x0,
                                 umwd_progress_fn progress, void *user,
                                 umwd_waveform **out_waveform, umwd_solve_summary *out_summary,
                                 umwd_trace **out_trace);

UMWD_API umwd_status umwd_trace_size(const umwd_trace *trace, size_t *count);
UMWD_API umwd_status umwd_trace_entry(const umwd_trace *trace, size_t index,
                                      umwd_iterate_info *out);
UMWD_API void umwd_trace_destroy(umwd_trace *trace);

/* ------------------------------------------------------------------ */
/* Evaluation                                                          */

/* f, g, h of the scenario objective at the waveform. Output pointers
 * may individually be NULL. */
UMWD_API umwd_status umwd_objective(const umwd_scenario *sc, const umwd_waveform *wf,
                                    double *total, double *g, double *h);

/* Beampattern over the grid. Buffers must hold umwd_scenario_grid_size
 * values; angles_deg, power and power_db may individually be NULL.
 * power_db is clipped at -300 dB; normalize shifts it to a 0 dB peak. */
UMWD_API umwd_status umwd_beampattern_sweep(const umwd_scenario *sc, const umwd_waveform *wf,
                                            int include_endpoints, int normalize,
                                            double *angles_deg, double *power,
                                            double *power_db);

/* Correlation profile over all (desired pair, delay) entries, in the
 * order reported by the scenario. Buffers must hold
 * umwd_scenario_profile_size values; any output pointer may be NULL.
 * norm_db is 20*log10(|value|/peak) clipped at -300 dB, peak the
 * strongest desired-angle auto term. */
UMWD_API umwd_status umwd_correlation_profile(const umwd_scenario *sc, const umwd_waveform *wf,
                                              int32_t *pair_i, int32_t *pair_j, int32_t *tau,
                                              double *value_re, double *value_im,
                                              double *norm_db, double *peak);

/* Q(||X a_comm|| / sigma): matched-filter error probability for
 * antipodal signalling. */
UMWD_API umwd_status umwd_analytic_ber(const umwd_scenario *sc, const umwd_waveform *wf,
                                       double sigma, double *ber);

/* Noise level for an SNR point; the axis is referenced to the nominal
 * received energy N*M of a unit-modulus waveform: sigma^2 = M / snr. */
UMWD_API umwd_status umwd_sigma_for_snr_db(const umwd_scenario *sc, double snr_db,
                                           double *sigma);

/* Monte Carlo BER at each SNR point (equiprobable antipodal symbol,
 * y = s X a_comm + n, matched-filter decision). All output buffers have
 * one entry per SNR point and may individually be NULL. */
UMWD_API umwd_status umwd_ber_monte_carlo(const umwd_scenario *sc, const umwd_waveform *wf,
                                          const double *snr_db, size_t snr_count,
                                          int64_t trials, uint64_t seed, double *analytic,
                                          double *mc, double *ci_lo, double *ci_hi,
                                          int64_t *errors);

#ifdef __cplusplus
}
#endif

#endif /* UMWD_H */
