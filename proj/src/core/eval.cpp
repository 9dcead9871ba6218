// SPDX-License-Identifier: Apache-2.0

#include "core/eval.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/objective.hpp"
#include "core/rng.hpp"

namespace umwd {
namespace {

double to_db_power(double v) {
    if (!(v > 0.0)) return kDbFloor;
    return std::max(10.0 * std::log10(v), kDbFloor);
}

double to_db_amplitude(double v) {
    if (!(v > 0.0)) return kDbFloor;
    return std::max(20.0 * std::log10(v), kDbFloor);
}

void check_waveform(const CMat &X, const Scenario &sc) {
    if (X.rows() != sc.params().n || X.cols() != sc.params().m)
        throw Error(ErrorCode::dimension_mismatch, "waveform: expected " +
                                                       std::to_string(sc.params().n) + "x" +
                                                       std::to_string(sc.params().m) + ", got " +
                                                       std::to_string(X.rows()) + "x" +
                                                       std::to_string(X.cols()));
}

// z = sum_n conj(u_i[n]) u_j[n + tau], as in the objective's terms.
std::complex<double> shifted_dot(const CVec &u_i, const CVec &u_j, int tau) {
    const Eigen::Index len = u_i.size() - tau;
    return u_i.head(len).dot(u_j.tail(len));
}

} // namespace

SweepSeries beampattern_sweep(const CMat &X, const Scenario &sc, bool include_endpoints,
                              bool normalize) {
    check_waveform(X, sc);
    SweepSeries out;
    out.angles_deg = include_endpoints ? sc.grid_with_endpoints() : sc.grid();
    out.power.reserve(out.angles_deg.size());
    out.power_db.reserve(out.angles_deg.size());
    for (double ang : out.angles_deg) {
        double p = beampattern(X, ang, sc);
        out.power.push_back(p);
        out.power_db.push_back(to_db_power(p));
    }
    if (normalize && !out.power_db.empty()) {
        const double top = *std::max_element(out.power_db.begin(), out.power_db.end());
        for (double &v : out.power_db) v = std::max(v - top, kDbFloor);
    }
    return out;
}

CorrelationProfile correlation_profile(const CMat &X, const Scenario &sc) {
    check_waveform(X, sc);
    const auto &angles = sc.params().desired_angles_deg;
    if (angles.empty())
        throw Error(ErrorCode::invalid_state, "correlation profile needs at least one desired angle");

    CorrelationProfile out;
    out.peak = 0.0;
    for (double ang : angles) out.peak = std::max(out.peak, beampattern(X, ang, sc));
    if (!(out.peak > 0.0))
        throw Error(ErrorCode::invalid_state,
                    "correlation profile undefined: zero beampattern at every desired angle");

    out.entries.reserve(sc.profile_terms().size());
    for (const auto &t : sc.profile_terms()) {
        ProfileEntry e;
        e.i = t.i;
        e.j = t.j;
        e.tau = t.tau;
        e.value = spatial_correlation(X, angles[static_cast<std::size_t>(t.i)],
                                      angles[static_cast<std::size_t>(t.j)], t.tau, sc);
        e.norm_db = to_db_amplitude(std::abs(e.value) / out.peak);
        out.entries.push_back(e);
    }
    return out;
}

int ml_detect(const Eigen::Ref<const CVec> &y, const CMat &X, const Scenario &sc,
              double theta_deg) {
    check_waveform(X, sc);
    if (y.size() != sc.params().n)
        throw Error(ErrorCode::dimension_mismatch,
                    "received vector: expected length " + std::to_string(sc.params().n) +
                        ", got " + std::to_string(y.size()));
    const CVec u = X * sc.steering(theta_deg);
    const double stat = u.dot(y).real(); // Re((X a)^H y); .dot conjugates the left factor
    return stat >= 0.0 ? 1 : -1;
}

double sigma_for_snr_db(const Scenario &sc, double snr_db) {
    const double snr_lin = std::pow(10.0, snr_db / 10.0);
    return std::sqrt(static_cast<double>(sc.params().m) / snr_lin);
}

std::pair<double, double> wilson_interval(long long errors, long long trials) {
    if (trials <= 0) throw Error(ErrorCode::invalid_argument, "trials must be positive");
    if (errors < 0 || errors > trials)
        throw Error(ErrorCode::invalid_argument, "errors outside [0, trials]");
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // At the boundaries one endpoint is exactly 0 or 1; center - half only
    // reaches it up to rounding, so pin those cases instead of clamping.
    const double lo = errors == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = errors == trials ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

std::vector<BerPoint> ber_monte_carlo(const CMat &X, const Scenario &sc,
                                      const std::vector<double> &snr_db, long long trials,
                                      std::uint64_t seed) {
    check_waveform(X, sc);
    if (trials <= 0) throw Error(ErrorCode::invalid_argument, "trials must be positive");

    const Eigen::Index n = sc.params().n;
    const CVec u = X * sc.comm_steering();
    const double span = u.squaredNorm(); // ||X a||^2, the noiseless statistic magnitude
    constexpr long long kChunk = 8192;

    std::vector<BerPoint> out;
    out.reserve(snr_db.size());
    for (std::size_t pt = 0; pt < snr_db.size(); ++pt) {
        const double sigma = sigma_for_snr_db(sc, snr_db[pt]);
        // Noise convention: each real component is N(0, sigma^2), so the
        // statistic Re(u^H n) has variance ||u||^2 sigma^2, matching the
        // Q(||X a|| / sigma) expression used for the analytic curve.
        const double comp_std = sigma;
        BerPoint bp;
        bp.snr_db = snr_db[pt];
        bp.analytic = analytic_ber(X, sc, sigma);

        long long errors = 0;
        long long done = 0;
        std::uint64_t chunk_idx = 0;
        while (done < trials) {
            const long long count = std::min(kChunk, trials - done);
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(pt), chunk_idx));
            for (long long t = 0; t < count; ++t) {
                const int s = rng.uniform() < 0.5 ? -1 : 1;
                // Decision statistic Re(u^H y) with y = s u + n, accumulated
                // sample by sample; identical to ml_detect on the drawn y.
                double stat = static_cast<double>(s) * span;
                for (Eigen::Index i = 0; i < n; ++i) {
                    const double nr = comp_std * rng.normal();
                    const double ni = comp_std * rng.normal();
                    stat += u[i].real() * nr + u[i].imag() * ni;
                }
                const int shat = stat >= 0.0 ? 1 : -1;
                if (shat != s) ++errors;
            }
            done += count;
            ++chunk_idx;
        }
        bp.errors = errors;
        bp.mc = static_cast<double>(errors) / static_cast<double>(trials);
        std::tie(bp.ci_lo, bp.ci_hi) = wilson_interval(errors, trials);
        out.push_back(bp);
    }
    return out;
}

CMat random_baseline(const Scenario &sc, std::uint64_t seed) {
    Rng rng(seed);
    return random_point(sc.params().n, sc.params().m, rng);
}

CMat beam_mixture_init(const Scenario &sc, const std::vector<double> &beam_gains,
                       std::uint64_t seed) {
    const auto &p = sc.params();
    const std::size_t beams = p.desired_angles_deg.size() + 1;
    if (beam_gains.size() != beams)
        throw Error(ErrorCode::invalid_argument,
                    "beam_gains: expected " + std::to_string(beams) + " entries (desired + comm), got " +
                        std::to_string(beam_gains.size()));
    for (double g : beam_gains)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw Error(ErrorCode::invalid_argument, "beam_gains: entries must be finite and >= 0");

    std::vector<CVec> a = sc.desired_steering();
    a.push_back(sc.comm_steering());

    Rng rng(seed);
    CMat X(p.n, p.m);
    Eigen::RowVectorXcd row(p.m);
    const double two_pi = 2.0 * M_PI;
    for (Eigen::Index t = 0; t < p.n; ++t) {
        row.setZero();
        for (std::size_t i = 0; i < beams; ++i) {
            const std::complex<double> w =
                beam_gains[i] * std::exp(std::complex<double>(0.0, two_pi * rng.uniform()));
            row.noalias() += w * a[i].adjoint(); // conj(a_i): row t then sums coherently toward angle i
        }
        for (Eigen::Index k = 0; k < p.m; ++k) {
            const double mag = std::abs(row[k]);
            X(t, k) = mag > 1e-14 ? row[k] / mag : std::complex<double>(1.0, 0.0);
        }
    }
    return X;
}

double l2_variant_objective(const CMat &X, const Scenario &sc) {
    check_waveform(X, sc);
    std::vector<CVec> u;
    u.reserve(sc.desired_steering().size());
    for (const CVec &a : sc.desired_steering()) u.emplace_back(X * a);
    double h2 = 0.0;
    for (const auto &t : sc.correlation_terms()) {
        const std::complex<double> z =
            shifted_dot(u[static_cast<std::size_t>(t.i)], u[static_cast<std::size_t>(t.j)], t.tau);
        h2 += std::norm(z);
    }
    return sc.params().weight_g * g_value(X, sc) + sc.params().weight_h * h2;
}

CMat l2_variant_gradient(const CMat &X, const Scenario &sc) {
    check_waveform(X, sc);
    const Eigen::Index n = X.rows();
    const std::vector<CVec> &a = sc.desired_steering();
    std::vector<CVec> u;
    u.reserve(a.size());
    for (const CVec &ai : a) u.emplace_back(X * ai);

    CMat G = CMat::Zero(n, X.cols());
    for (const auto &t : sc.correlation_terms()) {
        const auto &ui = u[static_cast<std::size_t>(t.i)];
        const auto &uj = u[static_cast<std::size_t>(t.j)];
        const std::complex<double> z = shifted_dot(ui, uj, t.tau);
        // d|z|^2 has the same two rank-one blocks as d|z| with the unit
        // phase z/|z| replaced by 2 conj(z) (and its conjugate); no kink.
        const std::complex<double> c = 2.0 * std::conj(z);
        const Eigen::Index len = n - t.tau;
        G.topRows(len).noalias() +=
            c * (uj.tail(len) * a[static_cast<std::size_t>(t.i)].adjoint());
        G.bottomRows(len).noalias() +=
            std::conj(c) * (ui.head(len) * a[static_cast<std::size_t>(t.j)].adjoint());
    }
    return sc.params().weight_g * grad_g(X, sc) + sc.params().weight_h * G;
}

ObjectiveFn make_l2_variant_objective(const Scenario &sc) {
    ObjectiveFn fn;
    fn.value = [&sc](const CMat &X) { return l2_variant_objective(X, sc); };
    fn.subgrad = [&sc](const CMat &X) { return l2_variant_gradient(X, sc); };
    return fn;
}

} // namespace umwd
