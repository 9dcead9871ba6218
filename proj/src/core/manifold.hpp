// SPDX-License-Identifier: Apache-2.0
// Operators on the unit-modulus manifold UM(N,M): the set of N x M
// complex matrices whose every entry lies on the unit circle.
//
// Conventions used throughout the library:
//  - metric: inner(xi, eta) = Re(tr(xi^H eta)), the real part of the
//    Frobenius inner product;
//  - a tangent vector xi at X satisfies Re(xi .* conj(X)) = 0 entrywise;
//  - Euclidean gradients passed to rgrad() follow the Wirtinger
//    convention 2 * d f / d X*, so finite differences of f along V equal
//    inner(rgrad, V) for tangent V.

#pragma once

#include <Eigen/Dense>

#include "core/rng.hpp"

namespace umwd {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Re(tr(a^H b)). Throws dimension_mismatch if shapes differ.
double inner(const CMat &a, const CMat &b);

// Orthogonal projection onto the tangent space at X:
// P_X(xi) = xi - Re(xi .* conj(X)) .* X.
CMat project(const CMat &X, const CMat &xi);

// Riemannian gradient: projection of the Euclidean gradient.
CMat rgrad(const CMat &X, const CMat &egrad);

// Entrywise normalization retraction (X + xi) ./ |X + xi|.
// Throws singular_retraction if any entry of X + xi has modulus < 1e-14.
CMat retract(const CMat &X, const CMat &xi);

// Uniform random phases, entries e^{j phi}, phi ~ U[0, 2pi), filled in
// column-major order so the result is reproducible per generator state.
CMat random_point(Eigen::Index n, Eigen::Index m, Rng &rng);

// Random tangent direction at X with inner(xi, xi) = norm^2.
// Gaussian entries are projected and rescaled; the all-zero projection
// (probability zero) is resampled.
CMat random_tangent(const CMat &X, double norm, Rng &rng);

bool is_unimodular(const CMat &X, double tol = 1e-12);
bool is_tangent_at(const CMat &X, const CMat &xi, double tol = 1e-10);

} // namespace umwd
