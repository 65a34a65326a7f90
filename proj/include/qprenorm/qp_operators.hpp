#pragma once

#include <cmath>
#include <utility>

#include "qprenorm/mode_action.hpp"
#include "qprenorm/pair_field.hpp"
#include "qprenorm/qp_function.hpp"
#include "qprenorm/rotation.hpp"

namespace qpr {

/// L_ω on pair fields, the DT_ω(Ψ) action on u(x)cos2πθ + v(x)sin2πθ:
///   DT V(θ,x) = (1/a)[V(θ+ω, ψ(ax)) + ψ'(ψ(ax)) V(θ, ax)]
/// which in the (u,v) representation reads
///   (u,v) -> (L1 u, L1 v) + [cos2πω  sin2πω; -sin2πω  cos2πω](L2 u, L2 v).
/// (The rotation is by -2πω here; the conjugate identification of B_1 with
/// RH⊕RH carries the +2πω block and a similar operator with the same
/// spectrum. The slope pipeline evaluates v_k pointwise in θ, which pins
/// this convention.)
inline PairField apply_Lomega(const ModeAction& act, RotationNumber omega, const PairField& p) {
    const double c = std::cos(2.0 * M_PI * omega.value);
    const double s = std::sin(2.0 * M_PI * omega.value);
    const int N = act.order();
    const Eigen::VectorXd uv = taylor_to_vec(p.u, N);
    const Eigen::VectorXd vv = taylor_to_vec(p.v, N);
    const Eigen::VectorXd l2u = act.L2() * uv;
    const Eigen::VectorXd l2v = act.L2() * vv;
    return PairField(vec_to_taylor(p.domain(), act.L1() * uv + c * l2u + s * l2v),
                     vec_to_taylor(p.domain(), act.L1() * vv - s * l2u + c * l2v));
}

/// Mode-k block of DT_ω(Ψ): conjugate to L_{kω}. Mode 0 is d_renormalize.
inline PairField dT_mode(const ModeAction& act, RotationNumber omega, int k, const PairField& p) {
    if (k == 0) throw std::invalid_argument("dT_mode: k = 0 is the d_renormalize block");
    return apply_Lomega(act, omega.times(k), p);
}

/// Planar rotation R_γ by +2πγ applied componentwise in function space.
inline PairField rotate_Rgamma(double gamma, const PairField& p) {
    const double c = std::cos(2.0 * M_PI * gamma);
    const double s = std::sin(2.0 * M_PI * gamma);
    return PairField(p.u * c - p.v * s, p.u * s + p.v * c);
}

/// Phase shift t_γ: v(θ,z) -> v(θ+γ,z). On the (u,v) representation of a
/// B_1 function this is forced by
/// u cos(2π(θ+γ)) + v sin(2π(θ+γ))
///   = [u cos2πγ + v sin2πγ] cos2πθ + [-u sin2πγ + v cos2πγ] sin2πθ,
/// i.e. rotation by -2πγ.
inline PairField phase_shift_tgamma(double gamma, const PairField& p) {
    const double c = std::cos(2.0 * M_PI * gamma);
    const double s = std::sin(2.0 * M_PI * gamma);
    return PairField(p.u * c + p.v * s, p.u * -s + p.v * c);
}

/// Point of the section B_1'(0,0): u(0) = 0 and v(0) > 0.
struct SectionPoint {
    PairField pair;

    explicit SectionPoint(PairField p) : pair(std::move(p)) {
        const double u0 = pair.u.eval_real(0.0);
        const double v0 = pair.v.eval_real(0.0);
        // Tolerance is scale-aware: rotation roundoff grows with |v|.
        if (!(std::abs(u0) < 1e-10 * std::max(1.0, v0)) || !(v0 > 0))
            throw ZeroSectionValue("SectionPoint: constraints u(0)=0, v(0)>0 violated (u0=" +
                                   std::to_string(u0) + ", v0=" + std::to_string(v0) + ")");
    }
};

/// The unique γ with t_γ(p) in the section, and the shifted point.
/// cos2πγ = v(0)/r, sin2πγ = -u(0)/r, r = sqrt(u(0)^2+v(0)^2).
inline std::pair<SectionPoint, double> phase_reduce(const PairField& p) {
    const double u0 = p.u.eval_real(0.0);
    const double v0 = p.v.eval_real(0.0);
    const double r = std::hypot(u0, v0);
    if (r < 1e-13)
        throw ZeroSectionValue("phase_reduce: section value vanishes (r = " + std::to_string(r) + ")");
    const double c = v0 / r, s = -u0 / r;
    double gamma = std::atan2(s, c) / (2.0 * M_PI);
    gamma = RotationNumber::reduce(gamma);
    PairField out(p.u * c + p.v * s, p.u * -s + p.v * c);
    // Pin the constraint exactly against roundoff: by construction the new
    // u(0) is 0 and v(0) = r up to machine eps.
    return {SectionPoint(std::move(out)), gamma};
}

/// π1: mode ±1 extraction of a QPFunction.
inline PairField project_pi1(const QPFunction& f) { return f.pi1(); }

struct QPRenormOptions {
    ComposeOptions compose = {};
    double a_floor = 1e-8;
    double alias_tol = 1e-8;
    int min_collocation = 9;
};

/// Quasi-periodic renormalization T_ω(g)(θ,x) = (1/â) g(θ+ω, g(θ, â x)),
/// â = ∫ g(θ,1) dθ, computed spectrally: per-collocation-angle Taylor
/// composition, the θ+ω shift applied exactly on Fourier modes.
inline QPFunction qp_renormalize(const QPFunction& f, RotationNumber omega,
                                 const QPRenormOptions& opts = {}) {
    const int K = f.mode_count();
    const int N = f.order();
    const DiscDomain dom = f.domain();
    const double a_hat = f.a_hat();
    if (std::abs(a_hat) < opts.a_floor)
        throw DegenerateScaling("qp_renormalize: |a_hat| below floor");

    const int M = std::max(4 * K + 1, opts.min_collocation);
    std::vector<TaylorPoly> comp;
    comp.reserve(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double theta = double(j) / double(M);
        const TaylorPoly inner = scale_arg(f.at_theta(theta), a_hat, opts.compose);
        const TaylorPoly outer = f.at_theta(RotationNumber::reduce(theta + omega.value));
        comp.push_back(compose(outer, inner, opts.compose) * (1.0 / a_hat));
    }

    // DFT back to Fourier modes; energy above mode K must be negligible.
    QPFunction out(dom, K, N);
    double kept = 0.0, discarded = 0.0;
    for (int k = 0; k <= M / 2; ++k) {
        std::vector<Complex> ck(static_cast<size_t>(N) + 1, Complex(0));
        for (int j = 0; j < M; ++j) {
            const Complex ph = std::polar(1.0 / M, -2.0 * M_PI * double(k) * double(j) / double(M));
            for (int i = 0; i <= N; ++i) ck[static_cast<size_t>(i)] += ph * comp[static_cast<size_t>(j)].coeff(i);
        }
        CTaylorPoly mode(dom, std::move(ck));
        const double e = sup_norm(mode);
        if (k <= K) {
            kept += e;
            if (k == 0) out.set_mode0(real_part(mode));
            else out.set_mode(k, mode);
        } else {
            discarded += e;
        }
    }
    if (kept > 0 && discarded / kept > opts.alias_tol)
        throw AliasError("discarded-mode energy " + std::to_string(discarded / kept) +
                         " of total exceeds tolerance");
    return out;
}

/// L'_ω: phase-reduced action on the section, with the norm factor for
/// projectivizing callers.
struct SectionImage {
    SectionPoint point;
    double gamma;
    double norm_factor;
};

inline SectionImage apply_Lomega_prime(const ModeAction& act, RotationNumber omega,
                                       const SectionPoint& s) {
    const PairField img = apply_Lomega(act, omega, s.pair);
    auto [reduced, gamma] = phase_reduce(img);
    const double nf = sup_norm(reduced.pair);
    return SectionImage{std::move(reduced), gamma, nf};
}

} // namespace qpr
