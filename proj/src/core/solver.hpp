// SPDX-License-Identifier: Apache-2.0
// Gradient-sampling descent on the unit-modulus manifold.
//
// Per iteration: sample subgradients across an epsilon-ball of tangent
// offsets, transport them back to the iterate, take the minimum-norm
// point of their convex hull as the descent direction, and backtrack
// along the retraction. A small direction or a failed line search
// shrinks epsilon; the run converges when epsilon falls below
// epsilon_min with a small direction.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "core/scenario.hpp"

namespace umwd {

struct SolverConfig {
    double epsilon0 = 1e-1;         // initial sampling radius
    double epsilon_shrink = 0.5;    // radius multiplier on shrink
    double epsilon_min = 1e-6;      // radius at which the run terminates
    int sample_count = 10;          // subgradients per iteration (incl. the iterate's own)
    double armijo_c = 1e-4;         // sufficient-decrease constant
    double backtrack_factor = 0.5;  // step multiplier while backtracking
    double alpha0 = 1.0;            // first trial step
    double direction_tol = 1e-5;    // ||p|| threshold triggering a shrink
    int max_iters = 5000;
    std::uint64_t seed = 1;
};

enum class SolveStatus { converged, max_iters, stalled };

struct IterateRecord {
    int k = 0;
    double objective = 0.0;      // f at the end of the iteration
    double direction_norm = 0.0; // ||p_k||
    double step = 0.0;           // accepted alpha, 0 on shrink/stall
    double epsilon = 0.0;        // sampling radius after the iteration
    double wall_s = 0.0;         // elapsed seconds (informational only)
};

struct SolveTrace {
    std::vector<IterateRecord> records;
    SolveStatus status = SolveStatus::max_iters;
    int accepted_steps = 0;
};

// Objective evaluated by the solver: value and Euclidean subgradient
// (2 * d/dX* convention) at a manifold point.
struct ObjectiveFn {
    std::function<double(const CMat &)> value;
    std::function<CMat(const CMat &)> subgrad;
};

// The design objective f = w_g g + w_h h of the given scenario.
ObjectiveFn make_design_objective(const Scenario &sc);

// Transported subgradient set W at X for sampling radius epsilon.
// Element 0 is always the subgradient at X itself; elements i >= 1 are
// beta-scaled transported subgradients at retract(X, eta_i) with
// ||eta_i|| uniform on [0, epsilon]. Each sample draws from an
// independent stream derived from (config.seed, iteration, sample).
std::vector<CMat> sample_subdifferential(const CMat &X, double epsilon, const ObjectiveFn &fn,
                                         const SolverConfig &config, int iteration);

// Minimum-norm point of conv(W) and its norm. Satisfies the certificate
// inner(p, v) >= inner(p, p) - tol for every v in W, with tol relative
// to the largest element norm.
std::pair<CMat, double> min_norm_direction(const std::vector<CMat> &W);

struct LineSearchResult {
    bool accepted = false;
    double alpha = 0.0;
    double f_next = 0.0;
    CMat x_next;
};

// Armijo backtracking along retract(X, -alpha p) from config.alpha0;
// gives up (accepted = false) below alpha = 1e-16. Singular retractions
// count as failed trials.
LineSearchResult line_search(const CMat &X, double f_at_x, const CMat &p, const ObjectiveFn &fn,
                             const SolverConfig &config);

using ProgressFn = std::function<void(const IterateRecord &)>;

// Full driver loop. X0 must be unimodular. Deterministic given
// (X0, objective, config).
std::pair<CMat, SolveTrace> solve(const CMat &X0, const ObjectiveFn &fn,
                                  const SolverConfig &config, const ProgressFn &progress = {});

// Convenience overload for the scenario's own objective.
std::pair<CMat, SolveTrace> solve(const CMat &X0, const Scenario &sc, const SolverConfig &config,
                                  const ProgressFn &progress = {});

} // namespace umwd
