// SPDX-License-Identifier: Apache-2.0
// Scenario: array geometry, angle sets, delay set and term weights.
// Immutable after construction; caches everything the objective needs.

#pragma once

#include <vector>

#include "core/manifold.hpp"

namespace umwd {

struct ScenarioParams {
    int m = 8;                              // antennas
    int n = 128;                            // samples per waveform
    double d_over_lambda = 0.5;             // element spacing over wavelength
    double grid_step_deg = 0.1;             // angle grid resolution
    std::vector<double> desired_angles_deg; // sensing directions (K entries)
    double comm_angle_deg = 0.0;            // communication user direction
    std::vector<int> delays;                // correlation delay set Gamma
    double mainlobe_halfwidth_deg = -1.0;   // guard half-width; < 0 selects 2 * grid_step_deg
    double weight_g = 1.0;                  // beampattern term weight
    double weight_h = 1.0;                  // correlation term weight
};

// One correlation term: desired-angle indices (i, j) at delay tau.
struct CorrelationTerm {
    int i;
    int j;
    int tau;
};

class Scenario {
  public:
    // Validates parameters and builds caches. Error messages name the
    // offending parameter so front ends can surface them unchanged.
    explicit Scenario(const ScenarioParams &params);

    const ScenarioParams &params() const { return params_; }
    int m() const { return params_.m; }
    int n() const { return params_.n; }
    double weight_g() const { return params_.weight_g; }
    double weight_h() const { return params_.weight_h; }
    double comm_angle_deg() const { return params_.comm_angle_deg; }
    const std::vector<double> &desired_angles_deg() const { return params_.desired_angles_deg; }
    const std::vector<int> &delays() const { return params_.delays; }
    double mainlobe_halfwidth_deg() const { return params_.mainlobe_halfwidth_deg; }

    // Steering vector a_theta[k] = e^{j 2 pi (d/lambda) k sin theta},
    // k = 0..M-1. Accepts the closed interval [-90, 90].
    CVec steering(double theta_deg) const;

    // Interior angle grid {-90 + step, ..., 90 - step}; optionally with
    // the +-90 endpoints appended for evaluation sweeps.
    const std::vector<double> &grid() const { return grid_; }
    std::vector<double> grid_with_endpoints() const;

    // Grid points farther than the guard half-width from every protected
    // angle (desired and comm); the suppressed set of the beampattern term.
    const std::vector<double> &suppressed_angles() const { return suppressed_; }

    // Precombined Hermitian M x M matrix: sum of a a^H over the suppressed
    // set minus the same sum over desired angles and the comm angle.
    const CMat &abar() const { return abar_; }

    // Cached steering vectors for the desired angles, index-aligned with
    // desired_angles_deg(), and for the comm angle.
    const std::vector<CVec> &desired_steering() const { return a_desired_; }
    const CVec &comm_steering() const { return a_comm_; }

    // Ordered desired-angle pairs x delays, excluding (i == j, tau == 0):
    // the entries of the correlation objective term.
    const std::vector<CorrelationTerm> &correlation_terms() const { return terms_; }

    // All ordered pairs x delays, including the (i == j, tau == 0) peaks;
    // used by evaluation profiles.
    const std::vector<CorrelationTerm> &profile_terms() const { return profile_terms_; }

  private:
    ScenarioParams params_;
    std::vector<double> grid_;
    std::vector<double> suppressed_;
    std::vector<CVec> a_desired_;
    CVec a_comm_;
    CMat abar_;
    std::vector<CorrelationTerm> terms_;
    std::vector<CorrelationTerm> profile_terms_;
};

} // namespace umwd
