// SPDX-License-Identifier: Apache-2.0
// The design objective f = w_g * g + w_h * h and its Euclidean
// (sub)gradients.
//
//   g(X) = sum of beampattern over the suppressed grid
//        - sum over desired angles and the comm angle,
//          evaluated as tr(X^H X Abar) with the scenario's cached Abar;
//   h(X) = sum of |P_ij,tau(X)| over the scenario's correlation terms,
//          P_ij,tau = a_i^H X^H S_tau X a_j with S_tau the tau-sample
//          row shift.
//
// All gradients follow the library-wide convention 2 * d/dX*.

#pragma once

#include <complex>

#include "core/scenario.hpp"

namespace umwd {

struct ObjectiveBreakdown {
    double g = 0.0;
    double h = 0.0;
    double total = 0.0; // weight_g * g + weight_h * h
};

// P_theta(X) = || X a_theta ||^2.
double beampattern(const CMat &X, double theta_deg, const Scenario &sc);

// a_i^H X^H S_tau X a_j computed as a truncated inner product; tau must
// lie in [0, N-1].
std::complex<double> spatial_correlation(const CMat &X, double theta_i_deg, double theta_j_deg,
                                         int tau, const Scenario &sc);

double g_value(const CMat &X, const Scenario &sc);
double h_value(const CMat &X, const Scenario &sc);
ObjectiveBreakdown objective(const CMat &X, const Scenario &sc);

// 2 X Abar.
CMat grad_g(const CMat &X, const Scenario &sc);

// Sum over correlation terms of the subgradient of |P|; at entries with
// |P| < 1e-12 the kink element 0 is chosen.
CMat subgrad_h(const CMat &X, const Scenario &sc);

// weight_g * grad_g + weight_h * subgrad_h.
CMat euclid_subgrad(const CMat &X, const Scenario &sc);

// Gaussian tail Q(x) = P(Z > x).
double q_function(double x);

// Q(||X a_comm|| / sigma): error probability of the matched-filter
// detector for antipodal signalling. sigma must be positive.
double analytic_ber(const CMat &X, const Scenario &sc, double sigma);

} // namespace umwd
