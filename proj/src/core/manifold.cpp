// SPDX-License-Identifier: Apache-2.0

#include "core/manifold.hpp"

#include "core/error.hpp"

namespace umwd {

namespace {
void require_same_shape(const CMat &a, const CMat &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::dimension_mismatch, std::string(what) + ": shape mismatch");
}
} // namespace

double inner(const CMat &a, const CMat &b) {
    require_same_shape(a, b, "inner");
    return a.cwiseProduct(b.conjugate()).sum().real();
}

CMat project(const CMat &X, const CMat &xi) {
    require_same_shape(X, xi, "project");
    Eigen::ArrayXXd radial = (xi.array() * X.array().conjugate()).real();
    return xi.array() - radial.cast<std::complex<double>>() * X.array();
}

CMat rgrad(const CMat &X, const CMat &egrad) { return project(X, egrad); }

CMat retract(const CMat &X, const CMat &xi) {
    require_same_shape(X, xi, "retract");
    Eigen::ArrayXXcd sum = X.array() + xi.array();
    Eigen::ArrayXXd mod = sum.abs();
    if ((mod < 1e-14).any())
        throw Error(ErrorCode::singular_retraction,
                    "retract: an entry of X + xi has modulus below 1e-14");
    return sum / mod.cast<std::complex<double>>();
}

CMat random_point(Eigen::Index n, Eigen::Index m, Rng &rng) {
    if (n < 1 || m < 1)
        throw Error(ErrorCode::invalid_argument, "random_point: dimensions must be positive");
    CMat X(n, m);
    std::complex<double> *data = X.data();
    const Eigen::Index count = n * m;
    for (Eigen::Index idx = 0; idx < count; ++idx) {
        double phi = 6.283185307179586476925286766559 * rng.uniform();
        data[idx] = std::complex<double>(std::cos(phi), std::sin(phi));
    }
    return X;
}

CMat random_tangent(const CMat &X, double norm, Rng &rng) {
    if (!(norm > 0.0))
        throw Error(ErrorCode::invalid_argument, "random_tangent: norm must be positive");
    for (;;) {
        CMat g(X.rows(), X.cols());
        std::complex<double> *data = g.data();
        const Eigen::Index count = X.size();
        for (Eigen::Index idx = 0; idx < count; ++idx) {
            double re = rng.normal();
            double im = rng.normal();
            data[idx] = std::complex<double>(re, im);
        }
        CMat t = project(X, g);
        double n = std::sqrt(inner(t, t));
        if (n > 1e-300)
            return t * (norm / n);
    }
}

bool is_unimodular(const CMat &X, double tol) {
    return ((X.array().abs() - 1.0).abs() <= tol).all();
}

bool is_tangent_at(const CMat &X, const CMat &xi, double tol) {
    if (X.rows() != xi.rows() || X.cols() != xi.cols())
        return false;
    return ((xi.array() * X.array().conjugate()).real().abs() <= tol).all();
}

} // namespace umwd
