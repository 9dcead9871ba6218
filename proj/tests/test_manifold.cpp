// SPDX-License-Identifier: Apache-2.0

#include <complex>

#include "doctest.h"

#include "core/error.hpp"
#include "core/manifold.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

using umwd::CMat;
using umwd::CVec;

namespace {

CMat random_ambient(Eigen::Index n, Eigen::Index m, umwd::Rng &rng, double scale = 1.0) {
    CMat g(n, m);
    for (Eigen::Index c = 0; c < m; ++c)
        for (Eigen::Index r = 0; r < n; ++r)
            g(r, c) = scale * std::complex<double>(rng.normal(), rng.normal());
    return g;
}

} // namespace

TEST_CASE("inner is the real part of the Frobenius form") {
    CMat a(2, 1), b(2, 1);
    a << std::complex<double>(1, 2), std::complex<double>(3, -1);
    b << std::complex<double>(-1, 1), std::complex<double>(2, 2);
    // conj(1+2i)(-1+i) + conj(3-i)(2+2i) = (1+3i) + (4+8i)
    CHECK(umwd::inner(a, b) == doctest::Approx(5.0).epsilon(1e-14));

    umwd::Rng rng(7);
    CMat u = random_ambient(5, 3, rng);
    CMat v = random_ambient(5, 3, rng);
    CHECK(umwd::inner(u, v) == doctest::Approx(umwd::inner(v, u)).epsilon(1e-12));
    CHECK(umwd::inner(u, u) == doctest::Approx(u.squaredNorm()).epsilon(1e-12));

    CMat w = random_ambient(4, 3, rng);
    CHECK(oracles::error_code_of([&] { umwd::inner(u, w); }) ==
          umwd::ErrorCode::dimension_mismatch);
}

TEST_CASE("projection is tangent, idempotent and orthogonal") {
    umwd::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform() * 16);
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.uniform() * 6);
        CMat X = umwd::random_point(n, m, rng);
        CMat xi = random_ambient(n, m, rng);

        CMat p = umwd::project(X, xi);
        CHECK(umwd::is_tangent_at(X, p, 1e-12));
        CHECK((umwd::project(X, p) - p).cwiseAbs().maxCoeff() < 1e-13);

        // Orthogonal split: residual is perpendicular to every tangent.
        CMat v = umwd::random_tangent(X, 1.0, rng);
        CHECK(std::abs(umwd::inner(xi - p, v)) < 1e-10);
        CHECK(umwd::inner(xi, xi) ==
              doctest::Approx(umwd::inner(p, p) + umwd::inner(xi - p, xi - p)).epsilon(1e-10));

        // Self-adjoint: inner(P a, b) == inner(a, P b).
        CMat b = random_ambient(n, m, rng);
        CHECK(umwd::inner(p, b) == doctest::Approx(umwd::inner(xi, umwd::project(X, b)))
                                       .epsilon(1e-10));
    }
}

TEST_CASE("projection and retraction match the stacked real picture") {
    umwd::Rng rng(13);
    double max_err = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform() * 12);
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.uniform() * 4);
        CMat X = umwd::random_point(n, m, rng);
        CMat xi = random_ambient(n, m, rng, 0.35); // keeps X + xi away from zero

        CMat p = umwd::project(X, xi);
        CMat r = umwd::retract(X, xi);
        for (Eigen::Index c = 0; c < m; ++c) {
            const oracles::RealPair pp = oracles::project_column_real(X.col(c), xi.col(c));
            const oracles::RealPair rr = oracles::retract_column_real(X.col(c), xi.col(c));
            max_err = std::max(max_err, (p.col(c) - pp.first).cwiseAbs().maxCoeff());
            max_err = std::max(max_err, (p.col(c) - pp.second).cwiseAbs().maxCoeff());
            max_err = std::max(max_err, (r.col(c) - rr.first).cwiseAbs().maxCoeff());
            max_err = std::max(max_err, (r.col(c) - rr.second).cwiseAbs().maxCoeff());
        }
    }
    CHECK(max_err < 1e-12);
}

TEST_CASE("retraction keeps every entry on the unit circle") {
    umwd::Rng rng(17);
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        CMat X = umwd::random_point(8, 3, rng);
        const double norm = 0.01 + 10.0 * rng.uniform();
        CMat xi = umwd::random_tangent(X, norm, rng);
        CMat r;
        try {
            r = umwd::retract(X, xi);
        } catch (const umwd::Error &) {
            continue; // an entry of X + xi may vanish for large offsets
        }
        worst = std::max(worst, (r.cwiseAbs().array() - 1.0).abs().maxCoeff());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("retraction fixed point and singular input") {
    umwd::Rng rng(19);
    CMat X = umwd::random_point(6, 2, rng);
    CHECK((umwd::retract(X, CMat::Zero(6, 2)) - X).cwiseAbs().maxCoeff() < 1e-15);

    CHECK(oracles::error_code_of([&] { umwd::retract(X, -X); }) ==
          umwd::ErrorCode::singular_retraction);

    CMat xi = CMat::Zero(6, 2);
    xi(3, 1) = -X(3, 1); // exactly one vanishing entry is enough to refuse
    CHECK(oracles::error_code_of([&] { umwd::retract(X, xi); }) ==
          umwd::ErrorCode::singular_retraction);
}

TEST_CASE("riemannian gradient is the projected euclidean gradient") {
    umwd::Rng rng(23);
    CMat X = umwd::random_point(10, 3, rng);
    CMat e = random_ambient(10, 3, rng);
    CHECK((umwd::rgrad(X, e) - umwd::project(X, e)).cwiseAbs().maxCoeff() == 0.0);

    // Directional-derivative consistency for a smooth ambient function:
    // f = ||X - C||^2 has euclidean gradient 2 (X - C) in the library's
    // convention, and d/dt f(R_X(t V)) at 0 equals inner(rgrad, V).
    CMat C = random_ambient(10, 3, rng);
    auto f = [&C](const CMat &Y) { return (Y - C).squaredNorm(); };
    CMat egrad = 2.0 * (X - C);
    CMat V = umwd::random_tangent(X, 1.0, rng);
    const double fd = oracles::fd_along_retraction(f, X, V, 1e-6);
    CHECK(fd == doctest::Approx(umwd::inner(umwd::rgrad(X, egrad), V)).epsilon(1e-6));
}

TEST_CASE("random points are unimodular and reproducible") {
    umwd::Rng r1(31), r2(31), r3(32);
    CMat a = umwd::random_point(12, 4, r1);
    CMat b = umwd::random_point(12, 4, r2);
    CMat c = umwd::random_point(12, 4, r3);
    CHECK(umwd::is_unimodular(a));
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a - c).cwiseAbs().maxCoeff() > 1e-3);

    CHECK(oracles::error_code_of([&] { umwd::random_point(0, 3, r1); }) ==
          umwd::ErrorCode::invalid_argument);
}

TEST_CASE("random tangents have the requested norm") {
    umwd::Rng rng(37);
    CMat X = umwd::random_point(9, 2, rng);
    for (double norm : {1e-3, 1.0, 25.0}) {
        CMat t = umwd::random_tangent(X, norm, rng);
        CHECK(umwd::is_tangent_at(X, t));
        CHECK(std::sqrt(umwd::inner(t, t)) == doctest::Approx(norm).epsilon(1e-12));
    }
    CHECK(oracles::error_code_of([&] { umwd::random_tangent(X, 0.0, rng); }) ==
          umwd::ErrorCode::invalid_argument);
}

TEST_CASE("unimodularity and tangency predicates reject near misses") {
    umwd::Rng rng(41);
    CMat X = umwd::random_point(5, 2, rng);
    CHECK(umwd::is_unimodular(X));
    CMat Y = X;
    Y(2, 1) *= 1.0 + 5e-12;
    CHECK(!umwd::is_unimodular(Y, 1e-12));
    CHECK(umwd::is_unimodular(Y, 1e-11));

    CMat t = umwd::random_tangent(X, 1.0, rng);
    CHECK(umwd::is_tangent_at(X, t));
    CHECK(!umwd::is_tangent_at(X, t + 0.1 * X));
    CHECK(!umwd::is_tangent_at(X, CMat::Zero(4, 2))); // shape mismatch
}
