// SPDX-License-Identifier: Apache-2.0
// C ABI wrapper over the core library: opaque handles, status codes and
// a thread-local error message. Exceptions never cross this boundary.

#include "umwd/umwd.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "core/error.hpp"
#include "core/eval.hpp"
#include "core/manifold.hpp"
#include "core/objective.hpp"
#include "core/rng.hpp"
#include "core/scenario.hpp"
#include "core/solver.hpp"

struct umwd_scenario {
    umwd::Scenario sc;
};

struct umwd_waveform {
    umwd::CMat x;
};

struct umwd_trace {
    std::vector<umwd::IterateRecord> records;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string &msg) { g_last_error = msg; }

umwd_status map_code(umwd::ErrorCode code) {
    switch (code) {
    case umwd::ErrorCode::invalid_argument:
        return UMWD_ERR_INVALID_ARGUMENT;
    case umwd::ErrorCode::dimension_mismatch:
        return UMWD_ERR_DIMENSION_MISMATCH;
    case umwd::ErrorCode::singular_retraction:
        return UMWD_ERR_SINGULAR_RETRACTION;
    case umwd::ErrorCode::invalid_state:
        return UMWD_ERR_INVALID_STATE;
    }
    return UMWD_ERR_INTERNAL;
}

// Runs fn inside the exception barrier; fn returns a umwd_status.
template <typename Fn> umwd_status guarded(Fn &&fn) {
    try {
        return fn();
    } catch (const umwd::Error &e) {
        set_error(e.what());
        return map_code(e.code());
    } catch (const std::bad_alloc &) {
        set_error("out of memory");
        return UMWD_ERR_INTERNAL;
    } catch (const std::exception &e) {
        set_error(e.what());
        return UMWD_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return UMWD_ERR_INTERNAL;
    }
}

umwd_status require(bool ok, const char *msg) {
    if (ok) return UMWD_OK;
    set_error(msg);
    return UMWD_ERR_NULL_POINTER;
}

int32_t map_status(umwd::SolveStatus s) {
    switch (s) {
    case umwd::SolveStatus::converged:
        return UMWD_SOLVE_CONVERGED;
    case umwd::SolveStatus::stalled:
        return UMWD_SOLVE_STALLED;
    case umwd::SolveStatus::max_iters:
        return UMWD_SOLVE_MAX_ITERS;
    }
    return UMWD_SOLVE_MAX_ITERS;
}

umwd_iterate_info to_info(const umwd::IterateRecord &r) {
    umwd_iterate_info info;
    info.iteration = r.k;
    info.objective = r.objective;
    info.direction_norm = r.direction_norm;
    info.step = r.step;
    info.epsilon = r.epsilon;
    info.wall_s = r.wall_s;
    return info;
}

} // namespace

extern "C" {

const char *umwd_version(void) { return "0.1.0"; }

const char *umwd_last_error(void) { return g_last_error.c_str(); }

umwd_status umwd_scenario_create(const umwd_scenario_params *params, umwd_scenario **out) {
    if (umwd_status s = require(params && out, "umwd_scenario_create: NULL argument"))
        return s;
    return guarded([&] {
        umwd::ScenarioParams p;
        p.m = params->m;
        p.n = params->n;
        p.d_over_lambda = params->d_over_lambda;
        p.grid_step_deg = params->grid_step_deg;
        if (params->desired_count > 0 && !params->desired_angles_deg) {
            set_error("umwd_scenario_create: desired_angles_deg is NULL");
            return UMWD_ERR_NULL_POINTER;
        }
        p.desired_angles_deg.assign(params->desired_angles_deg,
                                    params->desired_angles_deg + params->desired_count);
        p.comm_angle_deg = params->comm_angle_deg;
        if (params->delay_count > 0 && !params->delays) {
            set_error("umwd_scenario_create: delays is NULL");
            return UMWD_ERR_NULL_POINTER;
        }
        p.delays.assign(params->delays, params->delays + params->delay_count);
        p.mainlobe_halfwidth_deg = params->mainlobe_halfwidth_deg;
        p.weight_g = params->weight_g;
        p.weight_h = params->weight_h;
        *out = new umwd_scenario{umwd::Scenario(p)};
        return UMWD_OK;
    });
}

void umwd_scenario_destroy(umwd_scenario *sc) { delete sc; }

umwd_status umwd_scenario_dims(const umwd_scenario *sc, int32_t *n, int32_t *m) {
    if (umwd_status s = require(sc != nullptr, "umwd_scenario_dims: NULL scenario")) return s;
    if (n) *n = sc->sc.n();
    if (m) *m = sc->sc.m();
    return UMWD_OK;
}

umwd_status umwd_scenario_grid_size(const umwd_scenario *sc, int include_endpoints,
                                    size_t *count) {
    if (umwd_status s = require(sc && count, "umwd_scenario_grid_size: NULL argument")) return s;
    *count = sc->sc.grid().size() + (include_endpoints ? 2 : 0);
    return UMWD_OK;
}

umwd_status umwd_scenario_profile_size(const umwd_scenario *sc, size_t *count) {
    if (umwd_status s = require(sc && count, "umwd_scenario_profile_size: NULL argument"))
        return s;
    *count = sc->sc.profile_terms().size();
    return UMWD_OK;
}

umwd_status umwd_waveform_create(int32_t n, int32_t m, const double *interleaved,
                                 umwd_waveform **out) {
    if (umwd_status s = require(interleaved && out, "umwd_waveform_create: NULL argument"))
        return s;
    return guarded([&] {
        if (n <= 0 || m <= 0) {
            set_error("umwd_waveform_create: dims must be positive");
            return UMWD_ERR_INVALID_ARGUMENT;
        }
        umwd::CMat x(n, m);
        for (int32_t t = 0; t < n; ++t)
            for (int32_t k = 0; k < m; ++k) {
                const size_t base = 2 * (static_cast<size_t>(t) * m + k);
                x(t, k) = {interleaved[base], interleaved[base + 1]};
            }
        *out = new umwd_waveform{std::move(x)};
        return UMWD_OK;
    });
}

void umwd_waveform_destroy(umwd_waveform *wf) { delete wf; }

umwd_status umwd_waveform_dims(const umwd_waveform *wf, int32_t *n, int32_t *m) {
    if (umwd_status s = require(wf != nullptr, "umwd_waveform_dims: NULL waveform")) return s;
    if (n) *n = static_cast<int32_t>(wf->x.rows());
    if (m) *m = static_cast<int32_t>(wf->x.cols());
    return UMWD_OK;
}

umwd_status umwd_waveform_data(const umwd_waveform *wf, double *interleaved) {
    if (umwd_status s = require(wf && interleaved, "umwd_waveform_data: NULL argument")) return s;
    const auto n = wf->x.rows();
    const auto m = wf->x.cols();
    for (Eigen::Index t = 0; t < n; ++t)
        for (Eigen::Index k = 0; k < m; ++k) {
            const size_t base = 2 * (static_cast<size_t>(t) * m + k);
            interleaved[base] = wf->x(t, k).real();
            interleaved[base + 1] = wf->x(t, k).imag();
        }
    return UMWD_OK;
}

umwd_status umwd_waveform_random(const umwd_scenario *sc, uint64_t seed, umwd_waveform **out) {
    if (umwd_status s = require(sc && out, "umwd_waveform_random: NULL argument")) return s;
    return guarded([&] {
        *out = new umwd_waveform{umwd::random_baseline(sc->sc, seed)};
        return UMWD_OK;
    });
}

void umwd_solve_options_default(umwd_solve_options *opts) {
    if (!opts) return;
    const umwd::SolverConfig d;
    opts->epsilon0 = d.epsilon0;
    opts->epsilon_shrink = d.epsilon_shrink;
    opts->epsilon_min = d.epsilon_min;
    opts->sample_count = d.sample_count;
    opts->armijo_c = d.armijo_c;
    opts->backtrack_factor = d.backtrack_factor;
    opts->alpha0 = d.alpha0;
    opts->direction_tol = d.direction_tol;
    opts->max_iters = d.max_iters;
    opts->seed = d.seed;
}

umwd_status umwd_design(const umwd_scenario *sc, const umwd_solve_options *opts,
                        umwd_objective_kind kind, const umwd_waveform *x0,
                        umwd_progress_fn progress, void *user, umwd_waveform **out_waveform,
                        umwd_solve_summary *out_summary, umwd_trace **out_trace) {
    if (umwd_status s = require(sc && opts && out_waveform, "umwd_design: NULL argument"))
        return s;
    return guarded([&] {
        if (kind != UMWD_CORR_ABS && kind != UMWD_CORR_SQUARED) {
            set_error("umwd_design: unknown objective kind");
            return UMWD_ERR_INVALID_ARGUMENT;
        }
        umwd::SolverConfig cfg;
        cfg.epsilon0 = opts->epsilon0;
        cfg.epsilon_shrink = opts->epsilon_shrink;
        cfg.epsilon_min = opts->epsilon_min;
        cfg.sample_count = opts->sample_count;
        cfg.armijo_c = opts->armijo_c;
        cfg.backtrack_factor = opts->backtrack_factor;
        cfg.alpha0 = opts->alpha0;
        cfg.direction_tol = opts->direction_tol;
        cfg.max_iters = opts->max_iters;
        cfg.seed = opts->seed;

        umwd::CMat start;
        if (x0) {
            start = x0->x;
        } else {
            // The start gets its own stream so it never collides with
            // the per-iteration sampling streams.
            umwd::Rng rng(umwd::derive_seed(cfg.seed, 0x696e6974u, 0)); // "init"
            start = umwd::random_point(sc->sc.n(), sc->sc.m(), rng);
        }

        umwd::ObjectiveFn fn = (kind == UMWD_CORR_ABS)
                                   ? umwd::make_design_objective(sc->sc)
                                   : umwd::make_l2_variant_objective(sc->sc);

        umwd::ProgressFn cb;
        if (progress)
            cb = [progress, user](const umwd::IterateRecord &r) {
                umwd_iterate_info info = to_info(r);
                progress(&info, user);
            };

        auto [x, trace] = umwd::solve(start, fn, cfg, cb);

        *out_waveform = new umwd_waveform{std::move(x)};
        if (out_summary) {
            out_summary->status = map_status(trace.status);
            out_summary->iterations = static_cast<int64_t>(trace.records.size());
            out_summary->accepted_steps = trace.accepted_steps;
            out_summary->final_objective =
                trace.records.empty() ? fn.value((*out_waveform)->x) : trace.records.back().objective;
        }
        if (out_trace) *out_trace = new umwd_trace{std::move(trace.records)};
        return UMWD_OK;
    });
}

umwd_status umwd_trace_size(const umwd_trace *trace, size_t *count) {
    if (umwd_status s = require(trace && count, "umwd_trace_size: NULL argument")) return s;
    *count = trace->records.size();
    return UMWD_OK;
}

umwd_status umwd_trace_entry(const umwd_trace *trace, size_t index, umwd_iterate_info *out) {
    if (umwd_status s = require(trace && out, "umwd_trace_entry: NULL argument")) return s;
    if (index >= trace->records.size()) {
        set_error("umwd_trace_entry: index out of range");
        return UMWD_ERR_INVALID_ARGUMENT;
    }
    *out = to_info(trace->records[index]);
    return UMWD_OK;
}

void umwd_trace_destroy(umwd_trace *trace) { delete trace; }

umwd_status umwd_objective(const umwd_scenario *sc, const umwd_waveform *wf, double *total,
                           double *g, double *h) {
    if (umwd_status s = require(sc && wf, "umwd_objective: NULL argument")) return s;
    return guarded([&] {
        const umwd::ObjectiveBreakdown b = umwd::objective(wf->x, sc->sc);
        if (total) *total = b.total;
        if (g) *g = b.g;
        if (h) *h = b.h;
        return UMWD_OK;
    });
}

umwd_status umwd_beampattern_sweep(const umwd_scenario *sc, const umwd_waveform *wf,
                                   int include_endpoints, int normalize, double *angles_deg,
                                   double *power, double *power_db) {
    if (umwd_status s = require(sc && wf, "umwd_beampattern_sweep: NULL argument")) return s;
    return guarded([&] {
        const umwd::SweepSeries series =
            umwd::beampattern_sweep(wf->x, sc->sc, include_endpoints != 0, normalize != 0);
        const size_t count = series.angles_deg.size();
        if (angles_deg) std::memcpy(angles_deg, series.angles_deg.data(), count * sizeof(double));
        if (power) std::memcpy(power, series.power.data(), count * sizeof(double));
        if (power_db) std::memcpy(power_db, series.power_db.data(), count * sizeof(double));
        return UMWD_OK;
    });
}

umwd_status umwd_correlation_profile(const umwd_scenario *sc, const umwd_waveform *wf,
                                     int32_t *pair_i, int32_t *pair_j, int32_t *tau,
                                     double *value_re, double *value_im, double *norm_db,
                                     double *peak) {
    if (umwd_status s = require(sc && wf, "umwd_correlation_profile: NULL argument")) return s;
    return guarded([&] {
        const umwd::CorrelationProfile profile = umwd::correlation_profile(wf->x, sc->sc);
        for (size_t idx = 0; idx < profile.entries.size(); ++idx) {
            const umwd::ProfileEntry &e = profile.entries[idx];
            if (pair_i) pair_i[idx] = e.i;
            if (pair_j) pair_j[idx] = e.j;
            if (tau) tau[idx] = e.tau;
            if (value_re) value_re[idx] = e.value.real();
            if (value_im) value_im[idx] = e.value.imag();
            if (norm_db) norm_db[idx] = e.norm_db;
        }
        if (peak) *peak = profile.peak;
        return UMWD_OK;
    });
}

umwd_status umwd_analytic_ber(const umwd_scenario *sc, const umwd_waveform *wf, double sigma,
                              double *ber) {
    if (umwd_status s = require(sc && wf && ber, "umwd_analytic_ber: NULL argument")) return s;
    return guarded([&] {
        *ber = umwd::analytic_ber(wf->x, sc->sc, sigma);
        return UMWD_OK;
    });
}

umwd_status umwd_sigma_for_snr_db(const umwd_scenario *sc, double snr_db, double *sigma) {
    if (umwd_status s = require(sc && sigma, "umwd_sigma_for_snr_db: NULL argument")) return s;
    return guarded([&] {
        *sigma = umwd::sigma_for_snr_db(sc->sc, snr_db);
        return UMWD_OK;
    });
}

umwd_status umwd_ber_monte_carlo(const umwd_scenario *sc, const umwd_waveform *wf,
                                 const double *snr_db, size_t snr_count, int64_t trials,
                                 uint64_t seed, double *analytic, double *mc, double *ci_lo,
                                 double *ci_hi, int64_t *errors) {
    if (umwd_status s = require(sc && wf && (snr_db || snr_count == 0),
                                "umwd_ber_monte_carlo: NULL argument"))
        return s;
    return guarded([&] {
        const std::vector<double> points(snr_db, snr_db + snr_count);
        const std::vector<umwd::BerPoint> curve =
            umwd::ber_monte_carlo(wf->x, sc->sc, points, trials, seed);
        for (size_t idx = 0; idx < curve.size(); ++idx) {
            if (analytic) analytic[idx] = curve[idx].analytic;
            if (mc) mc[idx] = curve[idx].mc;
            if (ci_lo) ci_lo[idx] = curve[idx].ci_lo;
            if (ci_hi) ci_hi[idx] = curve[idx].ci_hi;
            if (errors) errors[idx] = curve[idx].errors;
        }
        return UMWD_OK;
    });
}

} // extern "C"
