#pragma once

// Small dense reference implementations shared by the unit and acceptance
// tests. They are written from the definitions and deliberately avoid the
// library's fast paths.

#include <cmath>
#include <random>

#include "cdce/channel_model.hpp"
#include "cdce/types.hpp"

namespace cdce::testing {

inline CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = {g(rng), g(rng)};
    return m;
}

inline CVector random_vector(Eigen::Index n, std::mt19937_64& rng) {
    return random_matrix(n, 1, rng);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// F_n written out from exp(-j 2 pi a b / n) / sqrt(n) without index reduction.
inline CMatrix naive_dft(int n) {
    CMatrix f(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            f(a, b) = std::polar(1.0 / std::sqrt(double(n)), -2.0 * kPi * a * b / n);
        }
    }
    return f;
}

/// A_CP as an explicit (M+L) x M matrix.
inline CMatrix cp_add_matrix(const Dims& d) {
    CMatrix a = CMatrix::Zero(d.M + d.cp, d.M);
    for (int i = 0; i < d.cp; ++i) a(i, d.M - d.cp + i) = 1.0;
    for (int i = 0; i < d.M; ++i) a(d.cp + i, i) = 1.0;
    return a;
}

/// R_CP as an explicit M x (M+L) matrix.
inline CMatrix cp_remove_matrix(const Dims& d) {
    CMatrix r = CMatrix::Zero(d.M, d.M + d.cp);
    for (int i = 0; i < d.M; ++i) r(i, d.cp + i) = 1.0;
    return r;
}

inline CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

/// H_TF through explicit Kronecker factors (small dims only).
inline CMatrix dense_tf_channel(const CMatrix& g, const Dims& d) {
    const CMatrix in = identity(d.N);
    const CMatrix f = naive_dft(d.M);
    return kron(in, f) * kron(in, cp_remove_matrix(d)) * g * kron(in, cp_add_matrix(d)) *
           kron(in, CMatrix(f.adjoint()));
}

inline double rel_err(const CMatrix& a, const CMatrix& b) {
    const double s = std::max(b.norm(), 1e-300);
    return (a - b).norm() / s;
}

}  // namespace cdce::testing
