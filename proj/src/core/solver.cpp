// SPDX-License-Identifier: Apache-2.0

#include "core/solver.hpp"

#include <chrono>
#include <cmath>

#include "core/error.hpp"
#include "core/objective.hpp"
#include "core/rng.hpp"

namespace umwd {

namespace {

void validate(const SolverConfig &c) {
    if (!(c.epsilon0 > 0.0) || !(c.epsilon_min > 0.0) || c.epsilon_min >= c.epsilon0)
        throw Error(ErrorCode::invalid_argument, "solver: need 0 < epsilon_min < epsilon0");
    if (!(c.epsilon_shrink > 0.0 && c.epsilon_shrink < 1.0))
        throw Error(ErrorCode::invalid_argument, "solver: epsilon_shrink must lie in (0, 1)");
    if (c.sample_count < 1)
        throw Error(ErrorCode::invalid_argument, "solver: sample_count must be >= 1");
    if (!(c.armijo_c > 0.0 && c.armijo_c < 1.0))
        throw Error(ErrorCode::invalid_argument, "solver: armijo_c must lie in (0, 1)");
    if (!(c.backtrack_factor > 0.0 && c.backtrack_factor < 1.0))
        throw Error(ErrorCode::invalid_argument, "solver: backtrack_factor must lie in (0, 1)");
    if (!(c.alpha0 > 0.0) || !(c.direction_tol > 0.0) || c.max_iters < 1)
        throw Error(ErrorCode::invalid_argument, "solver: alpha0, direction_tol, max_iters must be positive");
}

// Gram matrix of W under the manifold metric.
Eigen::MatrixXd gram(const std::vector<CMat> &W) {
    const int k = static_cast<int>(W.size());
    Eigen::MatrixXd G(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            G(i, j) = G(j, i) = inner(W[i], W[j]);
    return G;
}

// Affine minimum-norm weights over the active set: minimize a^T G_SS a
// subject to sum(a) = 1, via the bordered KKT system. The complete
// orthogonal decomposition tolerates rank-deficient Gram blocks.
Eigen::VectorXd affine_weights(const Eigen::MatrixXd &G, const std::vector<int> &S) {
    const int m = static_cast<int>(S.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
            kkt(r, c) = G(S[r], S[c]);
    kkt.block(0, m, m, 1).setOnes();
    kkt.block(m, 0, 1, m).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    rhs[m] = 1.0;
    Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    return sol.head(m);
}

} // namespace

ObjectiveFn make_design_objective(const Scenario &sc) {
    ObjectiveFn fn;
    fn.value = [&sc](const CMat &X) { return objective(X, sc).total; };
    fn.subgrad = [&sc](const CMat &X) { return euclid_subgrad(X, sc); };
    return fn;
}

std::vector<CMat> sample_subdifferential(const CMat &X, double epsilon, const ObjectiveFn &fn,
                                         const SolverConfig &config, int iteration) {
    if (!(epsilon > 0.0))
        throw Error(ErrorCode::invalid_argument, "sample_subdifferential: epsilon must be positive");
    std::vector<CMat> W;
    W.reserve(config.sample_count);
    W.push_back(project(X, fn.subgrad(X)));
    for (int s = 1; s < config.sample_count; ++s) {
        Rng stream(derive_seed(config.seed, static_cast<std::uint64_t>(iteration),
                               static_cast<std::uint64_t>(s)));
        for (;;) {
            double radius = epsilon * stream.uniform();
            if (radius <= 0.0) {
                W.push_back(W.front());
                break;
            }
            CMat eta = random_tangent(X, radius, stream);
            CMat x_hat;
            try {
                x_hat = retract(X, eta);
            } catch (const Error &) {
                continue; // singular retraction: resample this point
            }
            CMat transported_eta = project(x_hat, eta);
            double denom = std::sqrt(inner(transported_eta, transported_eta));
            double beta = denom > 0.0 ? radius / denom : 10.0;
            beta = std::min(std::max(beta, 1.0), 10.0);
            W.push_back(project(X, fn.subgrad(x_hat)) / beta);
            break;
        }
    }
    return W;
}

std::pair<CMat, double> min_norm_direction(const std::vector<CMat> &W) {
    if (W.empty())
        throw Error(ErrorCode::invalid_argument, "min_norm_direction: empty set");
    const int k = static_cast<int>(W.size());
    const Eigen::MatrixXd G = gram(W);
    const double tol = 1e-10 * std::max(1.0, G.diagonal().maxCoeff());

    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(k);
    std::vector<int> S;
    int start;
    G.diagonal().minCoeff(&start);
    S.push_back(start);
    lambda[start] = 1.0;

    const int max_major = 20 * k + 50;
    for (int major = 0; major < max_major; ++major) {
        Eigen::VectorXd xv = G * lambda; // <x, v_j>
        double xx = lambda.dot(xv);
        int jstar;
        xv.minCoeff(&jstar);
        if (xv[jstar] >= xx - tol)
            break; // Wolfe optimality: no vertex strictly improves
        bool have = false;
        for (int idx : S)
            have = have || idx == jstar;
        if (!have)
            S.push_back(jstar);

        for (int minor = 0; minor < max_major; ++minor) {
            Eigen::VectorXd alpha = affine_weights(G, S);
            if ((alpha.array() >= -1e-12).all()) {
                lambda.setZero();
                std::vector<int> kept;
                for (int i = 0; i < alpha.size(); ++i)
                    if (alpha[i] > 1e-14) {
                        lambda[S[i]] = alpha[i];
                        kept.push_back(S[i]);
                    }
                if (kept.empty()) { // all weights collapsed; keep the best vertex
                    int best;
                    alpha.maxCoeff(&best);
                    lambda[S[best]] = 1.0;
                    kept.push_back(S[best]);
                }
                S = kept;
                break;
            }
            // Step toward the affine solution until a weight hits zero.
            double theta = 1.0;
            for (int i = 0; i < alpha.size(); ++i) {
                double li = lambda[S[i]];
                if (alpha[i] < 0.0 && alpha[i] < li)
                    theta = std::min(theta, li / (li - alpha[i]));
            }
            std::vector<int> kept;
            for (int i = 0; i < alpha.size(); ++i) {
                double w = (1.0 - theta) * lambda[S[i]] + theta * alpha[i];
                lambda[S[i]] = w > 1e-14 ? w : 0.0;
                if (lambda[S[i]] > 0.0)
                    kept.push_back(S[i]);
            }
            S = kept;
            if (S.empty()) { // numerical wipeout; restart from the best vertex
                int best;
                G.diagonal().minCoeff(&best);
                S.push_back(best);
                lambda.setZero();
                lambda[best] = 1.0;
                break;
            }
        }
    }

    CMat p = CMat::Zero(W[0].rows(), W[0].cols());
    for (int i = 0; i < k; ++i)
        if (lambda[i] != 0.0)
            p += lambda[i] * W[i];
    double norm2 = lambda.dot(G * lambda);
    return {p, std::sqrt(std::max(norm2, 0.0))};
}

LineSearchResult line_search(const CMat &X, double f_at_x, const CMat &p, const ObjectiveFn &fn,
                             const SolverConfig &config) {
    LineSearchResult out;
    const double pp = inner(p, p);
    if (!(pp > 0.0))
        throw Error(ErrorCode::invalid_argument, "line_search: direction must be nonzero");
    for (double alpha = config.alpha0; alpha >= 1e-16; alpha *= config.backtrack_factor) {
        CMat trial;
        try {
            trial = retract(X, -alpha * p);
        } catch (const Error &) {
            continue; // singular retraction: shorter steps may still work
        }
        double f_trial = fn.value(trial);
        // Compare decreases, not absolute values: f_at_x - c*alpha*pp can round
        // back to f_at_x for tiny alpha, which would accept a zero-progress step.
        if (f_at_x - f_trial >= config.armijo_c * alpha * pp) {
            out.accepted = true;
            out.alpha = alpha;
            out.f_next = f_trial;
            out.x_next = std::move(trial);
            return out;
        }
    }
    return out; // stall: no acceptable step above the floor
}

std::pair<CMat, SolveTrace> solve(const CMat &X0, const ObjectiveFn &fn,
                                  const SolverConfig &config, const ProgressFn &progress) {
    validate(config);
    if (!is_unimodular(X0))
        throw Error(ErrorCode::invalid_argument, "solve: X0 is not unimodular");

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    CMat X = X0;
    double fX = fn.value(X);
    double epsilon = config.epsilon0;
    SolveTrace trace;
    trace.records.reserve(static_cast<size_t>(config.max_iters));

    for (int k = 0; k < config.max_iters; ++k) {
        std::vector<CMat> W = sample_subdifferential(X, epsilon, fn, config, k);
        auto [p, direction_norm] = min_norm_direction(W);

        IterateRecord rec;
        rec.k = k;
        rec.direction_norm = direction_norm;

        if (direction_norm <= config.direction_tol) {
            epsilon *= config.epsilon_shrink;
            rec.objective = fX;
            rec.epsilon = epsilon;
            rec.wall_s = elapsed();
            trace.records.push_back(rec);
            if (progress)
                progress(rec);
            if (epsilon < config.epsilon_min) {
                trace.status = SolveStatus::converged;
                return {X, trace};
            }
            continue;
        }

        LineSearchResult ls = line_search(X, fX, p, fn, config);
        if (ls.accepted) {
            X = std::move(ls.x_next);
            fX = ls.f_next;
            ++trace.accepted_steps;
            rec.objective = fX;
            rec.step = ls.alpha;
            rec.epsilon = epsilon;
        } else {
            epsilon *= config.epsilon_shrink;
            rec.objective = fX;
            rec.epsilon = epsilon;
        }
        rec.wall_s = elapsed();
        trace.records.push_back(rec);
        if (progress)
            progress(rec);
        if (!ls.accepted && epsilon < config.epsilon_min) {
            trace.status = SolveStatus::stalled;
            return {X, trace};
        }
    }
    trace.status = SolveStatus::max_iters;
    return {X, trace};
}

std::pair<CMat, SolveTrace> solve(const CMat &X0, const Scenario &sc, const SolverConfig &config,
                                  const ProgressFn &progress) {
    ObjectiveFn fn = make_design_objective(sc);
    return solve(X0, fn, config, progress);
}

} // namespace umwd
