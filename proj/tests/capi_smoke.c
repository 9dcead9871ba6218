/* SPDX-License-Identifier: Apache-2.0 */
/* Compile-and-link check that the shared library is usable from plain C:
 * build a scenario, run a short design, query the evaluation entry
 * points, and free everything. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "umwd/umwd.h"

static int fail(const char *where) {
    fprintf(stderr, "capi_smoke: %s failed: %s\n", where, umwd_last_error());
    return 1;
}

int main(void) {
    const double desired[2] = {-30.0, 40.0};
    const int32_t delays[3] = {0, 1, 2};
    umwd_scenario_params params;
    umwd_scenario *sc = NULL;
    umwd_waveform *start = NULL;
    umwd_waveform *designed = NULL;
    umwd_trace *trace = NULL;
    umwd_solve_options opts;
    umwd_solve_summary summary;
    double total = 0.0, g = 0.0, h = 0.0, sigma = 0.0, ber = 0.0;
    int32_t n = 0, m = 0;
    size_t grid = 0, terms = 0, steps = 0;

    memset(&params, 0, sizeof(params));
    params.m = 2;
    params.n = 16;
    params.d_over_lambda = 0.5;
    params.grid_step_deg = 1.0;
    params.desired_angles_deg = desired;
    params.desired_count = 2;
    params.comm_angle_deg = 0.0;
    params.delays = delays;
    params.delay_count = 3;
    params.mainlobe_halfwidth_deg = -1.0;
    params.weight_g = 1.0;
    params.weight_h = 1.0;

    if (umwd_scenario_create(&params, &sc) != UMWD_OK) return fail("scenario_create");
    if (umwd_scenario_dims(sc, &n, &m) != UMWD_OK) return fail("scenario_dims");
    if (n != 16 || m != 2) {
        fprintf(stderr, "capi_smoke: unexpected dims %d x %d\n", (int)n, (int)m);
        return 1;
    }
    if (umwd_scenario_grid_size(sc, 0, &grid) != UMWD_OK) return fail("grid_size");
    if (grid != 179) {
        fprintf(stderr, "capi_smoke: unexpected grid size %zu\n", grid);
        return 1;
    }
    if (umwd_scenario_profile_size(sc, &terms) != UMWD_OK) return fail("profile_size");
    if (terms != 12) {
        fprintf(stderr, "capi_smoke: unexpected profile size %zu\n", terms);
        return 1;
    }

    if (umwd_waveform_random(sc, 1, &start) != UMWD_OK) return fail("waveform_random");
    if (umwd_objective(sc, start, &total, &g, &h) != UMWD_OK) return fail("objective");
    if (fabs(total - (g + h)) > 1e-9 * fabs(total)) {
        fprintf(stderr, "capi_smoke: objective parts do not add up\n");
        return 1;
    }

    umwd_solve_options_default(&opts);
    opts.max_iters = 5;
    if (umwd_design(sc, &opts, UMWD_CORR_ABS, start, NULL, NULL, &designed, &summary, &trace) !=
        UMWD_OK)
        return fail("design");
    if (umwd_trace_size(trace, &steps) != UMWD_OK) return fail("trace_size");
    if ((int64_t)steps != summary.iterations) {
        fprintf(stderr, "capi_smoke: trace length disagrees with the summary\n");
        return 1;
    }

    if (umwd_sigma_for_snr_db(sc, -10.0, &sigma) != UMWD_OK) return fail("sigma_for_snr_db");
    if (umwd_analytic_ber(sc, designed, sigma, &ber) != UMWD_OK) return fail("analytic_ber");
    if (!(ber >= 0.0 && ber <= 0.5)) {
        fprintf(stderr, "capi_smoke: error rate %g out of range\n", ber);
        return 1;
    }

    umwd_trace_destroy(trace);
    umwd_waveform_destroy(designed);
    umwd_waveform_destroy(start);
    umwd_scenario_destroy(sc);
    umwd_trace_destroy(NULL);
    umwd_waveform_destroy(NULL);
    umwd_scenario_destroy(NULL);
    printf("capi_smoke: ok\n");
    return 0;
}
