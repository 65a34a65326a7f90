#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

#include "qprenorm/errors.hpp"

namespace qpr {

/// Dense nonsymmetric eigen-decomposition, sorted by modulus (descending);
/// within a conjugate pair the +Im member comes first. residuals[i] =
/// ||A v_i - λ_i v_i||_2 / ||A||_F with ||v_i||_2 = 1.
struct EigenDecomposition {
    std::vector<std::complex<double>> values;
    Eigen::MatrixXcd vectors; // column i matches values[i]
    std::vector<double> residuals;
    bool converged = true;
};

inline EigenDecomposition eigen_decompose(const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    Eigen::EigenSolver<Eigen::MatrixXd> es;
    es.compute(A, /*computeEigenvectors=*/true);

    EigenDecomposition out;
    out.converged = (es.info() == Eigen::Success);

    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    const auto& ev = es.eigenvalues();
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double ma = std::abs(ev(a)), mb = std::abs(ev(b));
        if (ma != mb) return ma > mb;
        if (ev(a).imag() != ev(b).imag()) return ev(a).imag() > ev(b).imag();
        return ev(a).real() > ev(b).real();
    });

    const double anorm = A.norm();
    out.values.resize(static_cast<size_t>(n));
    out.vectors.resize(n, n);
    out.residuals.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const int j = idx[static_cast<size_t>(k)];
        out.values[static_cast<size_t>(k)] = ev(j);
        Eigen::VectorXcd v = es.eigenvectors().col(j);
        v /= v.norm();
        out.vectors.col(k) = v;
        out.residuals[static_cast<size_t>(k)] =
            (A * v - ev(j) * v).norm() / (anorm > 0 ? anorm : 1.0);
    }
    return out;
}

/// Nearest-eigenvalue matching helper used by sweeps and order validation.
inline int nearest_value_index(const std::vector<std::complex<double>>& pool,
                               std::complex<double> target,
                               const std::vector<bool>& taken) {
    int best = -1;
    double bestd = 0;
    for (size_t i = 0; i < pool.size(); ++i) {
        if (taken[i]) continue;
        const double d = std::abs(pool[i] - target);
        if (best < 0 || d < bestd) {
            best = static_cast<int>(i);
            bestd = d;
        }
    }
    return best;
}

} // namespace qpr
