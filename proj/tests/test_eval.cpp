// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <complex>

#include "doctest.h"

#include "core/error.hpp"
#include "core/eval.hpp"
#include "core/objective.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

using umwd::CMat;
using umwd::CVec;
using umwd::Scenario;
using umwd::ScenarioParams;

namespace {

ScenarioParams eval_params() {
    ScenarioParams p;
    p.m = 2;
    p.n = 16;
    p.grid_step_deg = 1.0;
    p.desired_angles_deg = {-30.0, 40.0};
    p.comm_angle_deg = 0.0;
    p.delays = {0, 1, 2};
    return p;
}

// Every row (a1, -a0) annihilates the steering vector a at 30 degrees
// exactly: x . a = a1*a0 - a0*a1 cancels bitwise. Built from the
// scenario's own steering so no trigonometric rounding survives (the
// ideal a(30) = (1, i) misses by ~1e-16 because sin(pi/6) rounds).
CMat blind_at_30(const Scenario &sc) {
    const CVec a = sc.steering(30.0);
    REQUIRE(a.size() == 2);
    CMat X(sc.n(), 2);
    for (int t = 0; t < sc.n(); ++t) {
        X(t, 0) = a[1];
        X(t, 1) = -a[0];
    }
    return X;
}

} // namespace

TEST_CASE("beampattern sweep walks the grid and clips decibels") {
    Scenario sc(eval_params());
    umwd::Rng rng(3);
    CMat X = umwd::random_point(sc.n(), sc.m(), rng);

    const auto sweep = umwd::beampattern_sweep(X, sc);
    CHECK(sweep.angles_deg == sc.grid());
    REQUIRE(sweep.power.size() == sweep.angles_deg.size());
    for (size_t i = 0; i < sweep.power.size(); i += 37) {
        CHECK(sweep.power[i] ==
              doctest::Approx(umwd::beampattern(X, sweep.angles_deg[i], sc)).epsilon(1e-12));
        CHECK(sweep.power_db[i] ==
              doctest::Approx(10.0 * std::log10(sweep.power[i])).epsilon(1e-12));
    }

    const auto full = umwd::beampattern_sweep(X, sc, true);
    CHECK(full.angles_deg.size() == sweep.angles_deg.size() + 2);
    CHECK(full.angles_deg.front() == -90.0);
    CHECK(full.angles_deg.back() == 90.0);

    const auto normed = umwd::beampattern_sweep(X, sc, false, true);
    CHECK(*std::max_element(normed.power_db.begin(), normed.power_db.end()) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normed.power == sweep.power); // raw values untouched
}

TEST_CASE("all-ones waveform peaks at broadside") {
    Scenario sc(eval_params());
    const CMat X = CMat::Ones(sc.n(), sc.m());
    const auto sweep = umwd::beampattern_sweep(X, sc, true);
    const auto it = std::max_element(sweep.power.begin(), sweep.power.end());
    CHECK(sweep.angles_deg[static_cast<size_t>(it - sweep.power.begin())] == 0.0);
    CHECK(*it == doctest::Approx(static_cast<double>(sc.n()) * sc.m() * sc.m()).epsilon(1e-12));
}

TEST_CASE("blind waveform hits the decibel floor") {
    ScenarioParams p = eval_params();
    p.desired_angles_deg = {30.0, 40.0};
    Scenario sc(p);
    const CMat X = blind_at_30(sc);
    CHECK(umwd::beampattern(X, 30.0, sc) < 1e-24);
    const auto sweep = umwd::beampattern_sweep(X, sc);
    for (size_t i = 0; i < sweep.angles_deg.size(); ++i) {
        CHECK(sweep.power_db[i] >= umwd::kDbFloor);
        if (sweep.angles_deg[i] == 30.0) CHECK(sweep.power_db[i] == umwd::kDbFloor);
    }
    // The 30-degree column of the profile is exactly zero as well.
    const auto profile = umwd::correlation_profile(X, sc);
    for (const auto &e : profile.entries)
        if (e.i == 0 && e.j == 0) {
            CHECK(std::abs(e.value) == 0.0);
            CHECK(e.norm_db == umwd::kDbFloor);
        }
}

TEST_CASE("correlation profile is normalized to the strongest peak") {
    Scenario sc(eval_params());
    umwd::Rng rng(4);
    CMat X = umwd::random_point(sc.n(), sc.m(), rng);
    const auto profile = umwd::correlation_profile(X, sc);
    REQUIRE(profile.entries.size() == sc.profile_terms().size());

    const double peak = std::max(umwd::beampattern(X, -30.0, sc), umwd::beampattern(X, 40.0, sc));
    CHECK(profile.peak == doctest::Approx(peak).epsilon(1e-12));

    const auto &angles = sc.desired_angles_deg();
    for (const auto &e : profile.entries) {
        CHECK(e.norm_db <= 1e-9); // Cauchy-Schwarz: no entry exceeds the peak
        const auto direct = umwd::spatial_correlation(X, angles[e.i], angles[e.j], e.tau, sc);
        CHECK(std::abs(e.value - direct) < 1e-12);
        CHECK(e.norm_db ==
              doctest::Approx(20.0 * std::log10(std::abs(e.value) / peak)).epsilon(1e-9));
        if (e.i == e.j && e.tau == 0)
            CHECK(e.value.real() ==
                  doctest::Approx(umwd::beampattern(X, angles[e.i], sc)).epsilon(1e-12));
    }
}

TEST_CASE("correlation profile refuses a waveform blind to every target") {
    ScenarioParams p = eval_params();
    p.desired_angles_deg = {30.0};
    p.delays = {0, 1};
    Scenario sc(p);
    CHECK(oracles::error_code_of([&] { umwd::correlation_profile(blind_at_30(sc), sc); }) ==
          umwd::ErrorCode::invalid_state);
}

TEST_CASE("matched-filter detector signs and ties") {
    Scenario sc(eval_params());
    umwd::Rng rng(5);
    CMat X = umwd::random_point(sc.n(), sc.m(), rng);
    const CVec u = X * sc.steering(0.0);

    CHECK(umwd::ml_detect(u, X, sc, 0.0) == 1);
    CHECK(umwd::ml_detect(CVec(-u), X, sc, 0.0) == -1);
    CHECK(umwd::ml_detect(CVec(std::complex<double>(0.0, 1.0) * u), X, sc, 0.0) == 1); // tie

    for (int trial = 0; trial < 20; ++trial) {
        CVec y(sc.n());
        for (int t = 0; t < sc.n(); ++t) y[t] = {rng.normal(), rng.normal()};
        const int expected = u.dot(y).real() >= 0.0 ? 1 : -1;
        CHECK(umwd::ml_detect(y, X, sc, 0.0) == expected);
    }

    CHECK(oracles::error_code_of([&] { umwd::ml_detect(u.head(8), X, sc, 0.0); }) ==
          umwd::ErrorCode::dimension_mismatch);
}

TEST_CASE("noise level tracks the nominal received energy") {
    Scenario sc(eval_params());
    CHECK(umwd::sigma_for_snr_db(sc, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(umwd::sigma_for_snr_db(sc, 10.0) ==
          doctest::Approx(std::sqrt(2.0 / 10.0)).epsilon(1e-14));
    CHECK(umwd::sigma_for_snr_db(sc, -10.0) ==
          doctest::Approx(std::sqrt(20.0)).epsilon(1e-14));
}

TEST_CASE("wilson interval matches its defining quadratic") {
    for (long long n : {100LL, 1000LL, 100000LL})
        for (long long e : {0LL, 1LL, 5LL, n / 20, n / 2, n}) {
            const auto [lo, hi] = umwd::wilson_interval(e, n);
            const auto [rlo, rhi] = oracles::wilson_roots(e, n);
            CHECK(lo == doctest::Approx(rlo).epsilon(1e-12));
            CHECK(hi == doctest::Approx(rhi).epsilon(1e-12));
            const double p = static_cast<double>(e) / static_cast<double>(n);
            CHECK(lo <= p + 1e-15);
            CHECK(hi >= p - 1e-15);
        }
    CHECK(umwd::wilson_interval(0, 1000).first == 0.0);
    CHECK(umwd::wilson_interval(1000, 1000).second == 1.0);
    CHECK(oracles::error_code_of([] { umwd::wilson_interval(-1, 10); }) ==
          umwd::ErrorCode::invalid_argument);
    CHECK(oracles::error_code_of([] { umwd::wilson_interval(11, 10); }) ==
          umwd::ErrorCode::invalid_argument);
}

TEST_CASE("monte carlo error count reproduces the per-trial detector") {
    Scenario sc(eval_params());
    umwd::Rng rng(6);
    CMat X = umwd::random_point(sc.n(), sc.m(), rng);
    const CVec u = X * sc.comm_steering();
    const double snr_db = -9.0;
    const long long trials = 300; // stays inside one chunk
    const std::uint64_t seed = 77;

    const auto curve = umwd::ber_monte_carlo(X, sc, {snr_db}, trials, seed);
    REQUIRE(curve.size() == 1);

    // Replay the documented stream: per trial one uniform for the symbol,
    // then interleaved normals for the noise, and run the detector on the
    // assembled vector.
    const double sigma = umwd::sigma_for_snr_db(sc, snr_db);
    const double comp_std = sigma; // per real component, as documented
    umwd::Rng replay(umwd::derive_seed(seed, 0, 0));
    long long errors = 0;
    for (long long t = 0; t < trials; ++t) {
        const int s = replay.uniform() < 0.5 ? -1 : 1;
        CVec y(sc.n());
        for (int i = 0; i < sc.n(); ++i) {
            const double nr = comp_std * replay.normal();
            const double ni = comp_std * replay.normal();
            y[i] = static_cast<double>(s) * u[i] + std::complex<double>(nr, ni);
        }
        if (umwd::ml_detect(y, X, sc, sc.comm_angle_deg()) != s) ++errors;
    }
    CHECK(curve[0].errors == errors);
    CHECK(curve[0].mc == doctest::Approx(static_cast<double>(errors) / trials).epsilon(1e-15));
}

TEST_CASE("monte carlo estimate brackets the analytic value") {
    Scenario sc(eval_params());
    umwd::Rng rng(7);
    CMat X = umwd::random_point(sc.n(), sc.m(), rng);
    const auto curve = umwd::ber_monte_carlo(X, sc, {-12.0, -9.0}, 20000, 2037);
    REQUIRE(curve.size() == 2);
    for (const auto &pt : curve) {
        CHECK(pt.analytic ==
              doctest::Approx(umwd::analytic_ber(X, sc, umwd::sigma_for_snr_db(sc, pt.snr_db)))
                  .epsilon(1e-14));
        CHECK(pt.ci_lo <= pt.mc);
        CHECK(pt.mc <= pt.ci_hi);
        CHECK(pt.analytic >= pt.ci_lo);
        CHECK(pt.analytic <= pt.ci_hi);
    }

    const auto again = umwd::ber_monte_carlo(X, sc, {-12.0, -9.0}, 20000, 2037);
    CHECK(again[0].errors == curve[0].errors);
    const auto other = umwd::ber_monte_carlo(X, sc, {-12.0, -9.0}, 20000, 2025);
    CHECK(other[0].errors != curve[0].errors);
}

TEST_CASE("random baseline is unimodular and seed-stable") {
    Scenario sc(eval_params());
    CMat a = umwd::random_baseline(sc, 9);
    CMat b = umwd::random_baseline(sc, 9);
    CMat c = umwd::random_baseline(sc, 10);
    CHECK(a.rows() == sc.n());
    CHECK(a.cols() == sc.m());
    CHECK(umwd::is_unimodular(a));
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a - c).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("beam mixture start carries the requested lobes") {
    ScenarioParams p = eval_params();
    p.m = 8;
    p.n = 64;
    Scenario sc(p);
    const CMat X = umwd::beam_mixture_init(sc, {1.0, 1.0, 0.7}, 21);
    CHECK(umwd::is_unimodular(X));
    CHECK((X - umwd::beam_mixture_init(sc, {1.0, 1.0, 0.7}, 21)).cwiseAbs().maxCoeff() == 0.0);

    // Each steered beam should rise well above a far-away sidelobe.
    const double floor_level = umwd::beampattern(X, 75.0, sc);
    CHECK(umwd::beampattern(X, -30.0, sc) > 4.0 * floor_level);
    CHECK(umwd::beampattern(X, 40.0, sc) > 4.0 * floor_level);
    CHECK(umwd::beampattern(X, 0.0, sc) > 2.0 * floor_level);

    CHECK(oracles::error_code_of([&] { umwd::beam_mixture_init(sc, {1.0, 1.0}, 21); }) ==
          umwd::ErrorCode::invalid_argument);
    CHECK(oracles::error_code_of([&] { umwd::beam_mixture_init(sc, {1.0, -0.1, 0.5}, 21); }) ==
          umwd::ErrorCode::invalid_argument);
}

TEST_CASE("squared-correlation variant value and gradient") {
    Scenario sc(eval_params());
    umwd::Rng rng(8);
    CMat X = umwd::random_point(sc.n(), sc.m(), rng);

    double h2 = 0.0;
    const auto &angles = sc.desired_angles_deg();
    for (const auto &t : sc.correlation_terms()) {
        const auto z = umwd::spatial_correlation(X, angles[t.i], angles[t.j], t.tau, sc);
        h2 += std::norm(z);
    }
    const double expected = sc.weight_g() * umwd::g_value(X, sc) + sc.weight_h() * h2;
    CHECK(umwd::l2_variant_objective(X, sc) == doctest::Approx(expected).epsilon(1e-12));

    CMat fd = oracles::fd_gradient(
        [&sc](const CMat &Y) { return umwd::l2_variant_objective(Y, sc); }, X, 1e-5);
    CMat an = umwd::l2_variant_gradient(X, sc);
    CHECK((fd - an).norm() / an.norm() < 1e-6);

    const auto fn = umwd::make_l2_variant_objective(sc);
    CHECK(fn.value(X) == doctest::Approx(umwd::l2_variant_objective(X, sc)).epsilon(1e-15));
    CHECK((fn.subgrad(X) - an).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("evaluation entry points validate waveform dimensions") {
    Scenario sc(eval_params());
    umwd::Rng rng(9);
    CMat bad = umwd::random_point(8, 2, rng);
    const auto mismatch = umwd::ErrorCode::dimension_mismatch;
    CHECK(oracles::error_code_of([&] { umwd::beampattern_sweep(bad, sc); }) == mismatch);
    CHECK(oracles::error_code_of([&] { umwd::correlation_profile(bad, sc); }) == mismatch);
    CHECK(oracles::error_code_of([&] { umwd::ber_monte_carlo(bad, sc, {0.0}, 10, 1); }) ==
          mismatch);
    CHECK(oracles::error_code_of([&] { umwd::l2_variant_objective(bad, sc); }) == mismatch);
}
