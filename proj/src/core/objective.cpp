// SPDX-License-Identifier: Apache-2.0

#include "core/objective.hpp"

#include <cmath>

#include "core/error.hpp"

namespace umwd {

namespace {

void require_waveform_dims(const CMat &X, const Scenario &sc, const char *what) {
    if (X.rows() != sc.n() || X.cols() != sc.m())
        throw Error(ErrorCode::dimension_mismatch,
                    std::string(what) + ": waveform dims do not match scenario");
}

void require_delay(int tau, const Scenario &sc, const char *what) {
    if (tau < 0 || tau >= sc.n())
        throw Error(ErrorCode::invalid_argument, std::string(what) + ": tau outside [0, N-1]");
}

// z = sum_n conj(u_i[n]) u_j[n + tau]; the shift never materializes S_tau.
std::complex<double> shifted_dot(const CVec &u_i, const CVec &u_j, int tau) {
    const Eigen::Index len = u_i.size() - tau;
    return u_i.head(len).dot(u_j.tail(len)); // Eigen dot conjugates the left factor
}

std::vector<CVec> desired_responses(const CMat &X, const Scenario &sc) {
    std::vector<CVec> us;
    us.reserve(sc.desired_steering().size());
    for (const CVec &a : sc.desired_steering())
        us.emplace_back(X * a);
    return us;
}

} // namespace

double beampattern(const CMat &X, double theta_deg, const Scenario &sc) {
    return spatial_correlation(X, theta_deg, theta_deg, 0, sc).real();
}

std::complex<double> spatial_correlation(const CMat &X, double theta_i_deg, double theta_j_deg,
                                         int tau, const Scenario &sc) {
    require_waveform_dims(X, sc, "spatial_correlation");
    require_delay(tau, sc, "spatial_correlation");
    CVec u_i = X * sc.steering(theta_i_deg);
    CVec u_j = (theta_i_deg == theta_j_deg) ? u_i : CVec(X * sc.steering(theta_j_deg));
    return shifted_dot(u_i, u_j, tau);
}

double g_value(const CMat &X, const Scenario &sc) {
    require_waveform_dims(X, sc, "g_value");
    return (X.conjugate().cwiseProduct(X * sc.abar())).sum().real();
}

double h_value(const CMat &X, const Scenario &sc) {
    require_waveform_dims(X, sc, "h_value");
    const std::vector<CVec> us = desired_responses(X, sc);
    double total = 0.0;
    for (const CorrelationTerm &t : sc.correlation_terms())
        total += std::abs(shifted_dot(us[t.i], us[t.j], t.tau));
    return total;
}

ObjectiveBreakdown objective(const CMat &X, const Scenario &sc) {
    ObjectiveBreakdown out;
    out.g = g_value(X, sc);
    out.h = h_value(X, sc);
    out.total = sc.weight_g() * out.g + sc.weight_h() * out.h;
    return out;
}

CMat grad_g(const CMat &X, const Scenario &sc) {
    require_waveform_dims(X, sc, "grad_g");
    return 2.0 * (X * sc.abar());
}

CMat subgrad_h(const CMat &X, const Scenario &sc) {
    require_waveform_dims(X, sc, "subgrad_h");
    const std::vector<CVec> us = desired_responses(X, sc);
    const std::vector<CVec> &as = sc.desired_steering();
    const Eigen::Index N = X.rows();
    CMat G = CMat::Zero(X.rows(), X.cols());
    for (const CorrelationTerm &t : sc.correlation_terms()) {
        std::complex<double> z = shifted_dot(us[t.i], us[t.j], t.tau);
        double mag = std::abs(z);
        if (mag < 1e-12)
            continue; // 0 is a valid subdifferential element at the kink
        std::complex<double> c = z / mag;
        const Eigen::Index len = N - t.tau;
        // d|z| contributions: (z*/|z|) shifts u_j up, (z/|z|) shifts u_i down.
        G.topRows(len).noalias() += std::conj(c) * (us[t.j].tail(len) * as[t.i].adjoint());
        G.bottomRows(len).noalias() += c * (us[t.i].head(len) * as[t.j].adjoint());
    }
    return G;
}

CMat euclid_subgrad(const CMat &X, const Scenario &sc) {
    CMat g = grad_g(X, sc);
    if (sc.weight_h() != 0.0)
        return sc.weight_g() * g + sc.weight_h() * subgrad_h(X, sc);
    return sc.weight_g() * g;
}

double q_function(double x) { return 0.5 * std::erfc(x * 0.70710678118654752440084436210485); }

double analytic_ber(const CMat &X, const Scenario &sc, double sigma) {
    require_waveform_dims(X, sc, "analytic_ber");
    if (!(sigma > 0.0))
        throw Error(ErrorCode::invalid_argument, "analytic_ber: sigma must be positive");
    return q_function((X * sc.comm_steering()).norm() / sigma);
}

} // namespace umwd
