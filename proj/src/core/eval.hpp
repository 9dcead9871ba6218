// SPDX-License-Identifier: Apache-2.0
// Evaluation artifacts: beampattern sweeps, normalized correlation
// profiles, Monte Carlo BER with Wilson intervals, and the comparison
// baselines (random waveform, squared-magnitude correlation variant).

#pragma once

#include <complex>
#include <vector>

#include "core/scenario.hpp"
#include "core/solver.hpp"

namespace umwd {

// dB values below this floor are clipped for readability; raw linear
// values are kept alongside wherever a clipped series is produced.
inline constexpr double kDbFloor = -300.0;

struct SweepSeries {
    std::vector<double> angles_deg;
    std::vector<double> power;    // raw beampattern values
    std::vector<double> power_db; // 10 log10(power), clipped at kDbFloor
};

// Beampattern over the scenario grid. The grid is the open interval by
// default; the +-90 endpoints are appended on request. With normalize
// set, power_db is shifted so its maximum is 0 dB (raw power untouched).
SweepSeries beampattern_sweep(const CMat &X, const Scenario &sc, bool include_endpoints = false,
                              bool normalize = false);

struct ProfileEntry {
    int i = 0;   // desired-angle indices
    int j = 0;
    int tau = 0;
    std::complex<double> value; // raw correlation
    double norm_db = 0.0;       // 20 log10(|value| / peak), clipped at kDbFloor
};

struct CorrelationProfile {
    std::vector<ProfileEntry> entries; // all ordered pairs x delays
    double peak = 0.0;                 // max auto beampattern over desired angles
};

// Normalized to the strongest desired-angle auto term, so values never
// exceed 0 dB (Cauchy-Schwarz). Throws invalid_state when that peak is
// zero. Requires at least one desired angle.
CorrelationProfile correlation_profile(const CMat &X, const Scenario &sc);

// Matched-filter ML decision for antipodal signalling toward theta_deg:
// the sign of Re((X a_theta)^H y), ties resolved to +1. y has one entry
// per waveform sample (length N).
int ml_detect(const Eigen::Ref<const CVec> &y, const CMat &X, const Scenario &sc,
              double theta_deg);

// Noise level for a given SNR point. The axis is referenced to the
// nominal received energy of a unit-modulus waveform, E||X a||^2 = N*M,
// so one SNR axis is shared by every waveform of the same size and curve
// gaps reflect received-power differences: sigma^2 = M / snr_linear.
double sigma_for_snr_db(const Scenario &sc, double snr_db);

struct BerPoint {
    double snr_db = 0.0;
    double analytic = 0.0;
    double mc = 0.0;
    double ci_lo = 0.0; // Wilson 95% interval for the MC estimate
    double ci_hi = 0.0;
    long long errors = 0;
};

// Monte Carlo BER at each SNR point: equiprobable s in {+1, -1},
// y = s X a_comm + n where each real noise component is N(0, sigma^2),
// the convention under which the error rate is Q(||X a|| / sigma);
// errors counted under the ml_detect decision. Per trial the stream is
// consumed in a fixed order: one uniform for s, then 2N normals for n
// (re, im per sample).
// Trials are processed in fixed-size chunks with independent
// seed-derived streams per (point, chunk), so results do not depend on
// how chunks are scheduled.
std::vector<BerPoint> ber_monte_carlo(const CMat &X, const Scenario &sc,
                                      const std::vector<double> &snr_db, long long trials,
                                      std::uint64_t seed);

// Wilson 95% score interval for e errors in n trials.
std::pair<double, double> wilson_interval(long long errors, long long trials);

// Uniform random unimodular waveform of the scenario's dimensions.
CMat random_baseline(const Scenario &sc, std::uint64_t seed);

// Structured initial point for the solver: each row is the unit-modulus
// projection of a random-phase mixture of the K+1 steering vectors
// (desired angles first, comm last), one gain per beam. Independent
// per-sample phases decorrelate the beams over the waveform, so the
// start already carries one lobe per angle with powers set by the gains.
// Deterministic in (scenario, gains, seed).
CMat beam_mixture_init(const Scenario &sc, const std::vector<double> &beam_gains,
                       std::uint64_t seed);

// Comparison variant: correlation term summed as |P|^2 instead of |P|.
double l2_variant_objective(const CMat &X, const Scenario &sc);
CMat l2_variant_gradient(const CMat &X, const Scenario &sc);
ObjectiveFn make_l2_variant_objective(const Scenario &sc);

} // namespace umwd
