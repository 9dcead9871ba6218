// SPDX-License-Identifier: Apache-2.0

#include "core/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace umwd {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Protected angles must sit on the grid: the suppressed set is built by
// excluding grid points around them, and an off-grid angle would leave its
// own grid neighbour inside the suppressed sum.
void require_grid_aligned(double angle, double step, const char *key) {
    double k = (angle + 90.0) / step;
    if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, std::abs(k))) {
        std::ostringstream msg;
        msg << key << ": angle " << angle << " is not a multiple of grid_step_deg = " << step;
        throw Error(ErrorCode::invalid_argument, msg.str());
    }
}

void require_open_interval(double angle, const char *key) {
    if (!(angle > -90.0 && angle < 90.0)) {
        std::ostringstream msg;
        msg << key << ": angle " << angle << " must lie strictly inside (-90, 90)";
        throw Error(ErrorCode::invalid_argument, msg.str());
    }
}

} // namespace

Scenario::Scenario(const ScenarioParams &params) : params_(params) {
    if (params_.m < 1)
        throw Error(ErrorCode::invalid_argument, "m: antenna count must be >= 1");
    if (params_.n < 1)
        throw Error(ErrorCode::invalid_argument, "n: sample count must be >= 1");
    if (!(params_.d_over_lambda > 0.0))
        throw Error(ErrorCode::invalid_argument, "d_over_lambda: must be positive");
    if (!(params_.grid_step_deg > 0.0) || params_.grid_step_deg >= 180.0)
        throw Error(ErrorCode::invalid_argument, "grid_step_deg: must lie in (0, 180)");
    if (params_.mainlobe_halfwidth_deg < 0.0)
        params_.mainlobe_halfwidth_deg = 2.0 * params_.grid_step_deg;
    if (!(params_.weight_g >= 0.0))
        throw Error(ErrorCode::invalid_argument, "weights.g: must be >= 0");
    if (!(params_.weight_h >= 0.0))
        throw Error(ErrorCode::invalid_argument, "weights.h: must be >= 0");

    require_open_interval(params_.comm_angle_deg, "comm_angle_deg");
    require_grid_aligned(params_.comm_angle_deg, params_.grid_step_deg, "comm_angle_deg");
    for (double a : params_.desired_angles_deg) {
        require_open_interval(a, "desired_angles_deg");
        require_grid_aligned(a, params_.grid_step_deg, "desired_angles_deg");
    }

    std::vector<double> protected_angles = params_.desired_angles_deg;
    protected_angles.push_back(params_.comm_angle_deg);
    for (size_t i = 0; i < protected_angles.size(); ++i)
        for (size_t j = i + 1; j < protected_angles.size(); ++j)
            if (std::abs(protected_angles[i] - protected_angles[j]) < 1e-9)
                throw Error(ErrorCode::invalid_argument,
                            "desired_angles_deg/comm_angle_deg: angles must be pairwise distinct");

    if (params_.delays.empty())
        throw Error(ErrorCode::invalid_argument, "delays: set must be nonempty");
    std::set<int> delay_set;
    for (int tau : params_.delays) {
        if (tau < 0 || tau > params_.n - 1) {
            std::ostringstream msg;
            msg << "delays: tau = " << tau << " outside [0, n-1] = [0, " << params_.n - 1 << "]";
            throw Error(ErrorCode::invalid_argument, msg.str());
        }
        delay_set.insert(tau);
    }
    params_.delays.assign(delay_set.begin(), delay_set.end());

    // Interior grid {-90 + step, ..., 90 - step}.
    const double step = params_.grid_step_deg;
    for (long k = 1;; ++k) {
        double angle = -90.0 + step * static_cast<double>(k);
        if (angle >= 90.0 - 1e-12 * 90.0)
            break;
        grid_.push_back(angle);
    }

    const double guard = params_.mainlobe_halfwidth_deg + 1e-9;
    for (double angle : grid_) {
        bool keep = true;
        for (double p : protected_angles)
            if (std::abs(angle - p) <= guard) {
                keep = false;
                break;
            }
        if (keep)
            suppressed_.push_back(angle);
    }

    for (double a : params_.desired_angles_deg)
        a_desired_.push_back(steering(a));
    a_comm_ = steering(params_.comm_angle_deg);

    abar_ = CMat::Zero(params_.m, params_.m);
    for (double angle : suppressed_) {
        CVec a = steering(angle);
        abar_.noalias() += a * a.adjoint();
    }
    for (double angle : protected_angles) {
        CVec a = steering(angle);
        abar_.noalias() -= a * a.adjoint();
    }
    // Exact Hermitian symmetry regardless of accumulation rounding.
    abar_ = ((abar_ + abar_.adjoint()) * 0.5).eval();

    const int K = static_cast<int>(params_.desired_angles_deg.size());
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
            for (int tau : params_.delays) {
                profile_terms_.push_back({i, j, tau});
                if (!(i == j && tau == 0))
                    terms_.push_back({i, j, tau});
            }
}

CVec Scenario::steering(double theta_deg) const {
    if (!(theta_deg >= -90.0 && theta_deg <= 90.0))
        throw Error(ErrorCode::invalid_argument, "steering: angle outside [-90, 90]");
    const double phase = 2.0 * kPi * params_.d_over_lambda * std::sin(theta_deg * kPi / 180.0);
    CVec a(params_.m);
    for (int k = 0; k < params_.m; ++k)
        a[k] = std::complex<double>(std::cos(phase * k), std::sin(phase * k));
    return a;
}

std::vector<double> Scenario::grid_with_endpoints() const {
    std::vector<double> full;
    full.reserve(grid_.size() + 2);
    full.push_back(-90.0);
    full.insert(full.end(), grid_.begin(), grid_.end());
    full.push_back(90.0);
    return full;
}

} // namespace umwd
