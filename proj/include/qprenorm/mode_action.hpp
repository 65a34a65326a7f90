#pragma once

#include <Eigen/Dense>

#include "qprenorm/pair_field.hpp"
#include "qprenorm/renorm1d.hpp"
#include "qprenorm/taylor.hpp"

namespace qpr {

struct ModeActionOptions {
    ComposeOptions compose = {};
    double a_floor = 1e-8;
};

/// Dense export, row-major with a "rows,cols" header line.
inline std::string matrix_to_csv(const Eigen::MatrixXd& A) {
    std::string out = std::to_string(A.rows()) + "," + std::to_string(A.cols()) + "\n";
    char buf[40];
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", A(i, j));
            out += buf;
            out += (j + 1 < A.cols()) ? ',' : '\n';
        }
    }
    return out;
}

inline Eigen::VectorXd taylor_to_vec(const TaylorPoly& p, int N) {
    Eigen::VectorXd v(N + 1);
    for (int i = 0; i <= N; ++i) v(i) = p.coeff(i);
    return v;
}

inline TaylorPoly vec_to_taylor(const DiscDomain& dom, const Eigen::VectorXd& v) {
    return TaylorPoly(dom, std::vector<double>(v.data(), v.data() + v.size()));
}

/// The discretized mode operators of the derivative at a base map ψ:
///   L1(g) = (1/a) ψ'∘ψ(a z) g(a z),   L2(g) = (1/a) g∘ψ(a z),
/// cached as (N+1)^2 matrices, plus the rank-one completion of DR:
///   DR(ψ)u = L1 u + L2 u + u(1) E,
///   E(x) = (x/a) ψ'(ψ(ax)) ψ'(ax) - ψ(ψ(ax))/a^2.
/// Immutable after construction; applications are matrix-vector products.
class ModeAction {
public:
    explicit ModeAction(UnimodalMap base, ModeActionOptions opts = {})
        : base_(std::move(base)), opts_(opts) {
        a_ = base_.a();
        if (std::abs(a_) < opts_.a_floor)
            throw DegenerateScaling("ModeAction: |psi(1)| below floor");
        build();
    }

    const UnimodalMap& base() const { return base_; }
    double a() const { return a_; }
    int order() const { return base_.order(); }
    const Eigen::MatrixXd& L1() const { return L1_; }
    const Eigen::MatrixXd& L2() const { return L2_; }
    const Eigen::VectorXd& E() const { return E_; }
    const Eigen::VectorXd& eval1_functional() const { return w1_; }

    TaylorPoly apply_L1(const TaylorPoly& g) const {
        base_.psi.require_same_domain(g);
        return vec_to_taylor(g.domain(), L1_ * taylor_to_vec(g, order()));
    }

    TaylorPoly apply_L2(const TaylorPoly& g) const {
        base_.psi.require_same_domain(g);
        return vec_to_taylor(g.domain(), L2_ * taylor_to_vec(g, order()));
    }

    /// Directional derivative of the doubling operator at the base map.
    TaylorPoly d_renormalize(const TaylorPoly& u) const {
        base_.psi.require_same_domain(u);
        const Eigen::VectorXd uv = taylor_to_vec(u, order());
        const double u1 = w1_.dot(uv);
        return vec_to_taylor(u.domain(), L1_ * uv + L2_ * uv + u1 * E_);
    }

    /// Full (N+1)^2 matrix of DR(ψ) = L1 + L2 + E w1ᵀ.
    Eigen::MatrixXd dr_matrix() const { return L1_ + L2_ + E_ * w1_.transpose(); }

private:
    void build() {
        const DiscDomain dom = base_.domain();
        const int N = order();
        const TaylorPoly& psi = base_.psi;
        const TaylorPoly psi_prime = psi.derivative().truncated(N);
        const TaylorPoly inner = scale_arg(psi, a_, opts_.compose);          // ψ(a x)
        const TaylorPoly h1 = compose(psi_prime, inner, opts_.compose) * (1.0 / a_);

        L1_.resize(N + 1, N + 1);
        L2_.resize(N + 1, N + 1);

        // qn = (ψ(ax) - z0)/rho: normalized inner map, powers give L2 columns.
        std::vector<double> qn_c = inner.coeffs();
        qn_c[0] = (qn_c[0] - dom.z0) / dom.rho;
        for (size_t i = 1; i < qn_c.size(); ++i) qn_c[i] /= dom.rho;
        const TaylorPoly qn(dom, qn_c);

        // s = (a x - z0)/rho as a polynomial in w: powers give the argument
        // rescaling entering L1 columns.
        std::vector<double> s_c(static_cast<size_t>(N) + 1, 0.0);
        s_c[0] = (a_ * dom.z0 - dom.z0) / dom.rho;
        if (N >= 1) s_c[1] = a_;
        const TaylorPoly s(dom, s_c);

        TaylorPoly spow = TaylorPoly::constant(dom, 1.0, N);
        TaylorPoly qpow = TaylorPoly::constant(dom, 1.0, N);
        for (int j = 0; j <= N; ++j) {
            const TaylorPoly col1 = h1 * spow;
            const TaylorPoly col2 = qpow * (1.0 / a_);
            for (int i = 0; i <= N; ++i) {
                L1_(i, j) = col1.coeff(i);
                L2_(i, j) = col2.coeff(i);
            }
            if (j < N) {
                spow = spow * s;
                qpow = qpow * qn;
            }
        }

        // E(x) = x h1(x) ψ'(ax) - R(ψ)(x)/a.
        const TaylorPoly x_poly = TaylorPoly::identity(dom, N);
        const TaylorPoly dpsi_ax = scale_arg(psi_prime, a_, opts_.compose).truncated(N);
        const TaylorPoly rpsi = compose(psi, inner, opts_.compose) * (1.0 / a_);
        const TaylorPoly Epoly = x_poly * h1 * dpsi_ax - rpsi * (1.0 / a_);
        E_ = taylor_to_vec(Epoly, N);

        w1_.resize(N + 1);
        const double w1 = (1.0 - dom.z0) / dom.rho;
        double pw = 1.0;
        for (int i = 0; i <= N; ++i) {
            w1_(i) = pw;
            pw *= w1;
        }
    }

    UnimodalMap base_;
    ModeActionOptions opts_;
    double a_ = 0;
    Eigen::MatrixXd L1_, L2_;
    Eigen::VectorXd E_, w1_;
};

} // namespace qpr
