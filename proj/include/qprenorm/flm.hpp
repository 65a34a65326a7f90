#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "qprenorm/harmonic.hpp"
#include "qprenorm/qp_function.hpp"
#include "qprenorm/qp_operators.hpp"
#include "qprenorm/renorm_fixed_point.hpp"

namespace qpr {

// ---------------------------------------------------------------------------
// Forced Logistic Map families, in the renormalization coordinates
// y = a x + b, a = 4/(α-2), b = -2/(α-2). Both variants share the uncoupled
// part c0(y) = 1 - α(α-2)/4 y² (the conjugated logistic, c0(0) = 1).
// Variant A forces multiplicatively: ∂_ε c = (α/(α-2) - α(α-2)/4 y²)cos2πθ.
// Variant B forces additively:       ∂_ε c = 4/(α-2) cos2πθ.
// The η-mixed family adds η f2(y)cos4πθ on top of the variant-A forcing.
// ---------------------------------------------------------------------------

enum class FLMVariant { A, B };

struct FLMFamily {
    FLMVariant variant = FLMVariant::A;
    double eta = 0.0; // second-mode mixing weight; 0 = pure B_1 forcing

    static FLMFamily A() { return FLMFamily{FLMVariant::A, 0.0}; }
    static FLMFamily B() { return FLMFamily{FLMVariant::B, 0.0}; }
    static FLMFamily eta_mixed(double eta) { return FLMFamily{FLMVariant::A, eta}; }

    static double lambda(double alpha) { return alpha * (alpha - 2.0) / 4.0; }

    /// The uncoupled 1-D family with partials, for superstable solves.
    MapFamily1D map1d() const {
        MapFamily1D fam;
        fam.f = [](double a, double y) { return 1.0 - lambda(a) * y * y; };
        fam.df_dalpha = [](double a, double y) { return -(a - 1.0) / 2.0 * y * y; };
        fam.df_dx = [](double a, double y) { return -2.0 * lambda(a) * y; };
        return fam;
    }
};

/// Family data at one parameter: the uncoupled map and the two derivative
/// directions u0 = ∂_α c(α,0), v0 = ∂_ε c(α,0) (mode-tagged).
struct FamilyData {
    UnimodalMap c0;
    TaylorPoly du;          // ∂_α c(α,0)
    PairField dv_mode1;     // mode-1 part of ∂_ε c(α,0)
    std::optional<PairField> dv_mode2; // η-mixed second mode (already scaled by η)
};

inline TaylorPoly quadratic_poly(const DiscDomain& dom, double c, double q, int order) {
    // c + q y² expanded about z0.
    std::vector<double> v(static_cast<size_t>(std::max(order, 2)) + 1, 0.0);
    v[0] = c + q * dom.z0 * dom.z0;
    v[1] = 2.0 * q * dom.z0 * dom.rho;
    v[2] = q * dom.rho * dom.rho;
    return TaylorPoly(dom, std::move(v));
}

inline FamilyData family_at(const FLMFamily& fam, double alpha, const DiscDomain& dom,
                            int order) {
    if (!(alpha > 2.0 && alpha < 4.0))
        throw ParameterOutOfRange("FLM family needs alpha in (2,4), got " + std::to_string(alpha));
    const double lam = FLMFamily::lambda(alpha);
    FamilyData d{
        UnimodalMap(quadratic_poly(dom, 1.0, -lam, order)),
        quadratic_poly(dom, 0.0, -(alpha - 1.0) / 2.0, order),
        PairField(TaylorPoly::constant(dom, 0.0, order), TaylorPoly::constant(dom, 0.0, order)),
        std::nullopt};

    const TaylorPoly zero = TaylorPoly::constant(dom, 0.0, order);
    const TaylorPoly bracket = quadratic_poly(dom, alpha / (alpha - 2.0), -lam, order);
    if (fam.variant == FLMVariant::A)
        d.dv_mode1 = PairField(bracket, zero);
    else
        d.dv_mode1 = PairField(TaylorPoly::constant(dom, 4.0 / (alpha - 2.0), order), zero);
    if (fam.eta != 0.0)
        d.dv_mode2 = PairField(bracket * fam.eta, zero);
    return d;
}

// ---------------------------------------------------------------------------
// Superstable parameters α_n (critical orbit closes after 2^n steps) and the
// accumulation parameter α*.
// ---------------------------------------------------------------------------

inline std::vector<double> superstable_chain(const FLMFamily& fam, int n_max) {
    const MapFamily1D f1d = fam.map1d();
    std::vector<double> alphas;
    alphas.reserve(static_cast<size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        double lo, hi;
        if (n == 1) {
            lo = 3.1;
            hi = 3.3;
        } else if (n == 2) {
            lo = 3.43;
            hi = 3.53;
        } else {
            const double step = (alphas[static_cast<size_t>(n - 2)] -
                                 alphas[static_cast<size_t>(n - 3)]) / 4.669;
            const double predict = alphas[static_cast<size_t>(n - 2)] + step;
            lo = predict - 0.6 * step;
            hi = predict + 0.6 * step;
        }
        double alpha = 0;
        for (int widen = 0;; ++widen) {
            try {
                alpha = superstable_parameter(f1d, n, lo, hi);
                break;
            } catch (const BracketMiss&) {
                if (widen >= 6) throw;
                const double mid = 0.5 * (lo + hi), half = 0.8 * (hi - lo);
                lo = mid - half;
                hi = mid + half;
            }
        }
        alphas.push_back(alpha);
    }
    return alphas;
}

/// Feigenbaum accumulation parameter of the family (Richardson limit of α_n).
inline double alpha_star(const FLMFamily& fam, int depth = 14) {
    const std::vector<double> a = superstable_chain(fam, depth);
    const double delta = 4.669201609102990;
    return a.back() + (a.back() - a[a.size() - 2]) / (delta - 1.0);
}

// ---------------------------------------------------------------------------
// The renormalization pipeline: f_k = R(f_{k-1}), u_k = DR(f_{k-1})u_{k-1},
// v_k = DT_{ω_{k-1}}(f_{k-1})v_{k-1} (mode m evolves by L_{mω_{k-1}}).
// ---------------------------------------------------------------------------

struct PipelineOptions {
    int order = 80;
    ComposeOptions compose = {};
    bool reduce = false; // apply the phase reduction t_γ after every v step
};

struct PipelineState {
    double alpha_n = 0;
    std::vector<double> omega;       // ω_0 .. ω_{n-1}
    std::vector<UnimodalMap> maps;   // f_0 .. f_{n-1}
    std::vector<TaylorPoly> u;       // u_0 .. u_{n-1}
    std::vector<PairField> v1;       // mode-1 v_0 .. v_{n-1}
    std::vector<PairField> v2;       // mode-2 (η-mixed only)
    std::vector<double> gammas;      // γ(ṽ_k) records when reduced
    bool has_mode2 = false;
};

inline PipelineState run_sequences(const FLMFamily& fam, int n, RotationNumber omega0,
                                   const PipelineOptions& opts = {},
                                   std::optional<double> alpha_override = {}) {
    if (n < 1) throw std::invalid_argument("run_sequences: n >= 1");
    const DiscDomain dom = DiscDomain::standard();
    const double alpha_n =
        alpha_override ? *alpha_override : superstable_chain(fam, n).back();
    const FamilyData d0 = family_at(fam, alpha_n, dom, opts.order);

    PipelineState st;
    st.alpha_n = alpha_n;
    st.has_mode2 = d0.dv_mode2.has_value();
    st.omega.push_back(omega0.value);
    st.maps.push_back(d0.c0);
    st.u.push_back(d0.du);

    PairField v1 = d0.dv_mode1;
    PairField v2 = st.has_mode2 ? *d0.dv_mode2
                                : PairField(TaylorPoly::constant(dom, 0.0, opts.order),
                                            TaylorPoly::constant(dom, 0.0, opts.order));
    if (opts.reduce) {
        auto [sp, g0] = phase_reduce(v1);
        v1 = sp.pair;
        st.gammas.push_back(g0);
    }
    st.v1.push_back(v1);
    if (st.has_mode2) st.v2.push_back(v2);

    ModeActionOptions mo;
    mo.compose = opts.compose;
    for (int k = 1; k <= n - 1; ++k) {
        const RotationNumber wk(st.omega.back());
        const ModeAction act(st.maps.back(), mo);
        const UnimodalMap fk = renormalize(st.maps.back(), opts.compose);

        st.u.push_back(act.d_renormalize(st.u.back()));
        PairField nv1 = apply_Lomega(act, wk, st.v1.back());
        if (opts.reduce) {
            auto [sp, g] = phase_reduce(nv1);
            nv1 = sp.pair;
            st.gammas.push_back(g);
        }
        st.v1.push_back(nv1);
        if (st.has_mode2)
            st.v2.push_back(apply_Lomega(act, wk.doubled(), st.v2.back()));

        st.maps.push_back(fk);
        st.omega.push_back(wk.doubled().value);
    }
    return st;
}

// ---------------------------------------------------------------------------
// Derivatives of the multiplier functionals G1 and Ĝ1 at a base map with a
// real 2-cycle.
// ---------------------------------------------------------------------------

struct CycleData {
    double p0 = 0, p1 = 0;          // the 2-cycle, p0 nearest the critical point
    double dpsi0 = 0, dpsi1 = 0;    // ψ' at p0, p1
    double ddpsi0 = 0, ddpsi1 = 0;  // ψ'' at p0, p1
};

inline CycleData cycle_data(const UnimodalMap& m) {
    const auto cyc = two_cycle(m);
    const TaylorPoly d1 = m.psi.derivative();
    const TaylorPoly d2 = d1.derivative();
    CycleData c;
    c.p0 = cyc[0];
    c.p1 = cyc[1];
    c.dpsi0 = d1.eval_real(c.p0);
    c.dpsi1 = d1.eval_real(c.p1);
    c.ddpsi0 = d2.eval_real(c.p0);
    c.ddpsi1 = d2.eval_real(c.p1);
    return c;
}

/// DĜ1(ψ)u for Ĝ1(f) = f'(f(x)) f'(x) along the continued 2-periodic point
/// x near p0:
///   δx  = (u(p1) + ψ'(p1) u(p0)) / (1 - ψ'(p0)ψ'(p1)),
///   δĜ1 = ψ'(p0)[ψ''(p1)(ψ'(p0)δx + u(p0)) + u'(p1)]
///       + ψ'(p1)[ψ''(p0)δx + u'(p0)].
/// On Σ1 (p0 critical) this collapses to ψ'(1)[ψ''(0)δx + u'(0)] with
/// δx = u(1) + ψ'(1)u(0).
inline double dGhat1(const CycleData& c, const TaylorPoly& u) {
    const double denom = 1.0 - c.dpsi0 * c.dpsi1;
    if (std::abs(denom) < 1e-12)
        throw ResonantDenominator("dGhat1: cycle multiplier at 1");
    const TaylorPoly up = u.derivative();
    const double dx = (u.eval_real(c.p1) + c.dpsi1 * u.eval_real(c.p0)) / denom;
    return c.dpsi0 * (c.ddpsi1 * (c.dpsi0 * dx + u.eval_real(c.p0)) + up.eval_real(c.p1)) +
           c.dpsi1 * (c.ddpsi0 * dx + up.eval_real(c.p0));
}

namespace detail {

/// Coefficients (C,S) of a harmonic-k function shifted by +ω:
/// δ(θ+ω) has coefficients S_k (C,S) with S_k = [[c, s],[-s, c]], c/s of 2πkω.
inline std::array<double, 2> shift_coeffs(double C, double S, double beta) {
    const double c = std::cos(beta), s = std::sin(beta);
    return {C * c + S * s, -C * s + S * c};
}

} // namespace detail

/// DG1(ω, ψ)V for a harmonic-k pair perturbation V = u cos2πkθ + v sin2πkθ.
/// The linearized invariant-curve equations
///   δx_b(θ+ω) = ψ'(p0) δx_a(θ) + V(θ, p0),
///   δx_a(θ+ω) = ψ'(p1) δx_b(θ) + V(θ, p1),
/// are a 4x4 linear system in the harmonic-k coefficients (valid for
/// attracting and repelling cycles alike; singular only at the
/// e^{±4πikω} multiplier resonance). Then
///   δG1(θ) = ψ'(p0)[ψ''(p1) δx_b(θ+ω) + V_x(θ+ω, p1)]
///          + ψ'(p1)[ψ''(p0) δx_a(θ) + V_x(θ, p0)].
inline HarmonicFunction dG1_mode(const CycleData& c, RotationNumber omega,
                                 const PairField& V, int k = 1) {
    const double beta = 2.0 * M_PI * double(k) * omega.value;
    const double cb = std::cos(beta), sb = std::sin(beta);

    Eigen::Matrix4d M;
    // unknowns (A_c, A_s, B_c, B_s); S_k B - ψ'(p0) A = V0; S_k A - ψ'(p1) B = V1.
    M << -c.dpsi0, 0, cb, sb,
         0, -c.dpsi0, -sb, cb,
         cb, sb, -c.dpsi1, 0,
         -sb, cb, 0, -c.dpsi1;
    Eigen::Vector4d rhs;
    rhs << V.u.eval_real(c.p0), V.v.eval_real(c.p0),
           V.u.eval_real(c.p1), V.v.eval_real(c.p1);
    const double det = M.determinant();
    if (std::abs(det) < 1e-12)
        throw ResonantDenominator("dG1_mode: multiplier resonance e^{±4πikω}");
    const Eigen::Vector4d z = M.fullPivLu().solve(rhs);

    const TaylorPoly ux = V.u.derivative(), vx = V.v.derivative();
    const auto dxb_shift = detail::shift_coeffs(z(2), z(3), beta);
    const auto vx1_shift = detail::shift_coeffs(ux.eval_real(c.p1), vx.eval_real(c.p1), beta);
    const double C = c.dpsi0 * (c.ddpsi1 * dxb_shift[0] + vx1_shift[0]) +
                     c.dpsi1 * (c.ddpsi0 * z(0) + ux.eval_real(c.p0));
    const double S = c.dpsi0 * (c.ddpsi1 * dxb_shift[1] + vx1_shift[1]) +
                     c.dpsi1 * (c.ddpsi0 * z(1) + vx.eval_real(c.p0));

    HarmonicFunction h(k);
    h.set_harmonic(k, C, S);
    return h;
}

/// Independent Σ1 closed form of dG1 (p0 critical, ψ'(p0) = 0):
/// δG1(θ) = ψ'(p1)[ψ''(p0)(ψ'(p1)V(θ-2ω,p0) + V(θ-ω,p1)) + V_x(θ,p0)].
inline HarmonicFunction dG1_mode_sigma1(const CycleData& c, RotationNumber omega,
                                        const PairField& V, int k = 1) {
    const double beta = 2.0 * M_PI * double(k) * omega.value;
    const auto v0_back2 = detail::shift_coeffs(V.u.eval_real(c.p0), V.v.eval_real(c.p0), -2 * beta);
    const auto v1_back1 = detail::shift_coeffs(V.u.eval_real(c.p1), V.v.eval_real(c.p1), -beta);
    const TaylorPoly ux = V.u.derivative(), vx = V.v.derivative();
    const double C =
        c.dpsi1 * (c.ddpsi0 * (c.dpsi1 * v0_back2[0] + v1_back1[0]) + ux.eval_real(c.p0));
    const double S =
        c.dpsi1 * (c.ddpsi0 * (c.dpsi1 * v0_back2[1] + v1_back1[1]) + vx.eval_real(c.p0));
    HarmonicFunction h(k);
    h.set_harmonic(k, C, S);
    return h;
}

// ---------------------------------------------------------------------------
// Nonlinear invariant 2-cycle curves and G1 itself (oracle route).
// ---------------------------------------------------------------------------

struct CurveSolveResult {
    HarmonicFunction xa, xb; // g(θ, xa(θ)) = xb(θ+ω), g(θ, xb(θ)) = xa(θ+ω)
    HarmonicFunction G1;     // D_x g(θ+ω, g(θ,xa(θ))) · D_x g(θ, xa(θ))
    int iterations = 0;
};

/// Newton solve of the pair of invariance equations in Fourier
/// coefficients (the shift by ω is diagonal there). The uncoupled part of
/// g seeds the curves at the constant 2-cycle.
inline CurveSolveResult g1_curve(const QPFunction& g, RotationNumber omega, int degree = 8,
                                 int max_iter = 30, double tol = 1e-12) {
    const int H = degree;
    const int nb = 2 * H + 1;        // harmonic coefficients per curve
    const int M = std::max(8 * H + 5, 64); // collocation grid
    const UnimodalMap uncoupled(g.p0());
    const auto cyc = two_cycle(uncoupled);

    HarmonicFunction xa(H), xb(H);
    xa.mean() = cyc[0];
    xb.mean() = cyc[1];

    auto harmonics_of = [&](const Eigen::VectorXd& grid_vals) {
        // project grid samples onto harmonics <= H
        HarmonicFunction h(H);
        double mean = 0;
        for (int j = 0; j < M; ++j) mean += grid_vals(j);
        h.mean() = mean / M;
        for (int k = 1; k <= H; ++k) {
            double ck = 0, sk = 0;
            for (int j = 0; j < M; ++j) {
                const double ang = 2.0 * M_PI * double(k) * double(j) / double(M);
                ck += grid_vals(j) * std::cos(ang);
                sk += grid_vals(j) * std::sin(ang);
            }
            h.set_harmonic(k, 2.0 * ck / M, 2.0 * sk / M);
        }
        return h;
    };
    auto coeffs_of = [&](const HarmonicFunction& h) {
        Eigen::VectorXd c(nb);
        c(0) = h.mean();
        for (int k = 1; k <= H; ++k) {
            c(2 * k - 1) = h.cos_coeff(k);
            c(2 * k) = h.sin_coeff(k);
        }
        return c;
    };
    auto from_coeffs = [&](const Eigen::VectorXd& c) {
        HarmonicFunction h(H);
        h.mean() = c(0);
        for (int k = 1; k <= H; ++k) h.set_harmonic(k, c(2 * k - 1), c(2 * k));
        return h;
    };

    // Shift-by-ω matrix on harmonic coefficients.
    Eigen::MatrixXd Shift = Eigen::MatrixXd::Zero(nb, nb);
    Shift(0, 0) = 1.0;
    for (int k = 1; k <= H; ++k) {
        const double beta = 2.0 * M_PI * double(k) * omega.value;
        Shift(2 * k - 1, 2 * k - 1) = std::cos(beta);
        Shift(2 * k - 1, 2 * k) = std::sin(beta);
        Shift(2 * k, 2 * k - 1) = -std::sin(beta);
        Shift(2 * k, 2 * k) = std::cos(beta);
    }

    int used = 0;
    for (int it = 0; it < max_iter; ++it) {
        // Residuals on the collocation grid, projected to harmonics.
        Eigen::VectorXd ra(M), rb(M), gxa(M), gxb(M);
        double sup_res = 0;
        for (int j = 0; j < M; ++j) {
            const double th = double(j) / M;
            const TaylorPoly slice = g.at_theta(th);
            const TaylorPoly dslice = slice.derivative();
            const double va = xa.eval(th), vb = xb.eval(th);
            ra(j) = slice.eval_real(va) - xb.eval(th + omega.value);
            rb(j) = slice.eval_real(vb) - xa.eval(th + omega.value);
            gxa(j) = dslice.eval_real(va);
            gxb(j) = dslice.eval_real(vb);
            sup_res = std::max(sup_res, std::max(std::abs(ra(j)), std::abs(rb(j))));
        }
        if (sup_res < tol) {
            used = it;
            break;
        }
        if (it == max_iter - 1)
            throw CurveSolveFailure("g1_curve: Newton stalled at residual " +
                                    std::to_string(sup_res));

        // Jacobian blocks: multiplication by g_x along each curve, shift on
        // the other side.
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * nb, 2 * nb);
        Eigen::VectorXd rhs(2 * nb);
        const Eigen::VectorXd ra_h = coeffs_of(harmonics_of(ra));
        const Eigen::VectorXd rb_h = coeffs_of(harmonics_of(rb));
        for (int col = 0; col < nb; ++col) {
            Eigen::VectorXd basis = Eigen::VectorXd::Zero(nb);
            basis(col) = 1.0;
            const HarmonicFunction bfun = from_coeffs(basis);
            Eigen::VectorXd ma(M), mb(M);
            for (int j = 0; j < M; ++j) {
                const double th = double(j) / M;
                ma(j) = gxa(j) * bfun.eval(th);
                mb(j) = gxb(j) * bfun.eval(th);
            }
            J.col(col).head(nb) = coeffs_of(harmonics_of(ma));
            J.col(nb + col).segment(nb, nb) = coeffs_of(harmonics_of(mb));
        }
        J.topRightCorner(nb, nb) -= Shift;
        J.bottomLeftCorner(nb, nb) -= Shift;
        rhs.head(nb) = -ra_h;
        rhs.segment(nb, nb) = -rb_h;

        const Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible())
            throw CurveSolveFailure("g1_curve: singular linearization (resonance)");
        const Eigen::VectorXd delta = lu.solve(rhs);
        xa = from_coeffs(coeffs_of(xa) + delta.head(nb));
        xb = from_coeffs(coeffs_of(xb) + delta.segment(nb, nb));
    }

    // G1 along the xa branch, projected to harmonics <= H.
    Eigen::VectorXd gvals(M);
    for (int j = 0; j < M; ++j) {
        const double th = double(j) / M;
        const TaylorPoly slice = g.at_theta(th);
        const TaylorPoly dslice = slice.derivative();
        const TaylorPoly slice_next = g.at_theta(th + omega.value);
        const double va = xa.eval(th);
        gvals(j) = slice_next.derivative().eval_real(slice.eval_real(va)) * dslice.eval_real(va);
    }
    CurveSolveResult out;
    out.xa = xa;
    out.xb = xb;
    out.G1 = harmonics_of(gvals);
    out.iterations = used;
    return out;
}

// ---------------------------------------------------------------------------
// Slopes of the reducibility-loss bifurcation curves.
// ---------------------------------------------------------------------------

struct SlopeRow {
    int n = 0;
    double alpha_n = 0;
    double alpha_prime = 0; // -m(DG1 v_{n-1}) / (DĜ1 u_{n-1})
    double beta_prime = 0;  // -M(...) / (...)
    double numerator_min = 0, numerator_max = 0;
    double denominator = 0;
    std::vector<double> gammas; // phase records when the reduced pipeline ran
};

inline SlopeRow slope_from_pipeline(const PipelineState& st) {
    SlopeRow row;
    row.n = static_cast<int>(st.maps.size());
    row.alpha_n = st.alpha_n;
    row.gammas = st.gammas;

    const UnimodalMap& base = st.maps.back();
    const CycleData cyc = cycle_data(base);
    const RotationNumber w_last(st.omega.back());

    HarmonicFunction num = dG1_mode(cyc, w_last, st.v1.back(), 1);
    if (st.has_mode2) num = num + dG1_mode(cyc, w_last, st.v2.back(), 2);
    const CircleExtrema mm = circle_min_max(num);

    const double den = dGhat1(cyc, st.u.back());
    if (std::abs(den) < 1e-12)
        throw ZeroDenominator("slope: |DĜ1 u| below 1e-12 (transversality failure)");

    row.numerator_min = mm.m;
    row.numerator_max = mm.M;
    row.denominator = den;
    row.alpha_prime = -mm.m / den;
    row.beta_prime = -mm.M / den;
    return row;
}

inline SlopeRow slope_alpha_beta(const FLMFamily& fam, int n, RotationNumber omega0,
                                 const PipelineOptions& opts = {}) {
    return slope_from_pipeline(run_sequences(fam, n, omega0, opts));
}

// ---------------------------------------------------------------------------
// Simplified (fixed-point) pipeline and the H3-diagnostic table.
// ---------------------------------------------------------------------------

/// Section-reduced iteration of DT_ω(Φ) on mode-1 pairs, unnormalized:
/// v_k = t_γ(L_{ω_{k-1}} v_{k-1}). Returns v_0..v_{k_max}.
inline std::vector<PairField> simplified_sequence(const ModeAction& act_phi,
                                                  RotationNumber omega0,
                                                  const PairField& v0_raw, int k_max) {
    std::vector<PairField> v;
    v.reserve(static_cast<size_t>(k_max) + 1);
    auto [s0, g0] = phase_reduce(v0_raw);
    (void)g0;
    v.push_back(s0.pair);
    RotationNumber w = omega0;
    for (int k = 1; k <= k_max; ++k) {
        const PairField img = apply_Lomega(act_phi, w, v.back());
        v.push_back(phase_reduce(img).first.pair);
        w = w.doubled();
    }
    return v;
}

struct H3Row {
    int n = 0;
    double v_norm = 0;   // ||v_{[n/2]-1}|| of the fixed-point pipeline (segment pair sup)
    double m_abs = 0;    // |m| of the critical-orbit DG1 form at Φ on v/||v||
    double vector_distance = 0;       // ||ṽ^{(n)}/||ṽ|| - v/||v|||| vs the Φ pipeline
    double stable_orbit_distance = 0; // same vs the α* family pipeline, boundary sup
};

/// Diagnostics of the saddle-passage conjecture. Two comparison sequences
/// are reported: the fixed-point (Φ) pipeline, and the family pipeline at
/// the accumulation parameter α* (whose maps converge to Φ). The second,
/// measured in the boundary pair sup, is the declared reproduction
/// convention for the published column 3; the first follows the
/// construction literally. The m-column evaluates the superstable-form
/// derivative at Φ on the critical orbit points (0, Φ(0)); Φ'(0)=0 keeps
/// that form consistent.
inline std::vector<H3Row> conjecture_h3_table(const FLMFamily& fam,
                                              const std::vector<int>& n_list,
                                              RotationNumber omega0,
                                              const PipelineOptions& opts = {}) {
    const DiscDomain dom = DiscDomain::standard();
    const UnimodalMap phi =
        newton_fixed_point(UnimodalMap::newton_seed(dom, opts.order));
    const ModeAction act_phi(phi);

    const TaylorPoly dphi = phi.psi.derivative();
    const TaylorPoly ddphi = dphi.derivative();
    CycleData crit; // critical orbit (0, Φ(0)=1), not a periodic orbit of Φ
    crit.p0 = 0.0;
    crit.p1 = phi.psi.eval_real(0.0);
    crit.dpsi0 = dphi.eval_real(crit.p0);
    crit.dpsi1 = dphi.eval_real(crit.p1);
    crit.ddpsi0 = ddphi.eval_real(crit.p0);
    crit.ddpsi1 = ddphi.eval_real(crit.p1);

    int k_needed = 0;
    for (int n : n_list) k_needed = std::max(k_needed, n / 2 - 1);

    const double astar = alpha_star(fam);
    const FamilyData dstar = family_at(fam, astar, dom, opts.order);
    const std::vector<PairField> v = simplified_sequence(act_phi, omega0, dstar.dv_mode1, k_needed);

    PipelineOptions fopts = opts;
    fopts.reduce = true;
    const PipelineState star_pipe =
        run_sequences(fam, k_needed + 1, omega0, fopts, astar);

    std::vector<H3Row> rows;
    for (int n : n_list) {
        const int kstar = n / 2 - 1;
        if (kstar < 0) throw std::invalid_argument("conjecture_h3_table: n >= 2 required");
        H3Row row;
        row.n = n;
        const PairField& vk = v[static_cast<size_t>(kstar)];
        row.v_norm = sup_norm(vk);

        RotationNumber w_k = omega0;
        for (int i = 0; i < kstar; ++i) w_k = w_k.doubled();
        const HarmonicFunction h = dG1_mode_sigma1(crit, w_k, vk * (1.0 / row.v_norm), 1);
        row.m_abs = std::abs(circle_min_max(h).m);

        const PipelineState fam_pipe = run_sequences(fam, kstar + 1, omega0, fopts,
                                                     superstable_chain(fam, n).back());
        const PairField& vt = fam_pipe.v1.back();
        row.vector_distance = sup_norm(vt * (1.0 / sup_norm(vt)) - vk * (1.0 / row.v_norm));

        const PairField& vs = star_pipe.v1[static_cast<size_t>(kstar)];
        const PairField dn = vt * (1.0 / boundary_sup_norm(vt)) - vs * (1.0 / boundary_sup_norm(vs));
        row.stable_orbit_distance = boundary_sup_norm(dn);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Uniform-growth diagnostics (two coupled ω-sequences) and universality
// comparisons.
// ---------------------------------------------------------------------------

struct GrowthRatioTrace {
    std::vector<double> log_ratio; // log r_n, n = 0..steps
};

/// r_n = (||v_{0,1}||/||v_{0,2}||) (||v_{n,2}||/||v_{n,1}||) with
/// v_{k,1} = L_{ω_{k-1}} v_{k-1,1}, v_{k,2} = L_{2ω_{k-1}} v_{k-1,2}.
/// Norms accumulate in the log domain.
inline GrowthRatioTrace conjecture_h5_ratios(const ModeAction& act_phi, RotationNumber omega0,
                                             PairField v01, PairField v02, int steps) {
    GrowthRatioTrace out;
    out.log_ratio.reserve(static_cast<size_t>(steps) + 1);
    const double n01 = sup_norm(v01), n02 = sup_norm(v02);
    if (!(n01 > 0) || !(n02 > 0))
        throw std::invalid_argument("conjecture_h5_ratios: zero seed");
    PairField w1 = v01 * (1.0 / n01), w2 = v02 * (1.0 / n02);
    double l1 = std::log(n01), l2 = std::log(n02);
    out.log_ratio.push_back(std::log(n01) - std::log(n02) + l2 - l1); // = 0 at n=0
    DoublingOrbit orbit(omega0.value); // exact driver for long orbits
    for (int k = 1; k <= steps; ++k) {
        const RotationNumber w_prev = orbit.value();
        orbit.advance();
        w1 = apply_Lomega(act_phi, w_prev, w1);
        w2 = apply_Lomega(act_phi, orbit.value(), w2); // 2 ω_{k-1} = ω_k
        const double f1 = sup_norm(w1), f2 = sup_norm(w2);
        w1 = w1 * (1.0 / f1);
        w2 = w2 * (1.0 / f2);
        l1 += std::log(f1);
        l2 += std::log(f2);
        out.log_ratio.push_back(std::log(n01) - std::log(n02) + l2 - l1);
    }
    return out;
}

struct UniversalityReport {
    std::vector<int> n;                 // 2..n_max
    std::vector<double> ratio_a;        // α'_n/α'_{n-1} family A
    std::vector<double> ratio_b;        // family B
    std::vector<double> ratio_diff;     // |ratio_a - ratio_b|
    std::vector<double> doubling_ratio; // α'_n(ω0)/α'_{n-1}(2ω0), family A
    std::vector<double> rhs_factor;     // δ^{-1} · m-ratio · operator-norm factor (Φ pipeline)
};

inline UniversalityReport universality_compare(const FLMFamily& fa, const FLMFamily& fb,
                                               RotationNumber omega0, int n_max,
                                               const PipelineOptions& opts = {}) {
    UniversalityReport rep;
    std::vector<double> slopes_a, slopes_b, slopes_a_2w;
    for (int n = 1; n <= n_max; ++n) {
        slopes_a.push_back(slope_alpha_beta(fa, n, omega0, opts).alpha_prime);
        slopes_b.push_back(slope_alpha_beta(fb, n, omega0, opts).alpha_prime);
        slopes_a_2w.push_back(slope_alpha_beta(fa, n, omega0.doubled(), opts).alpha_prime);
    }

    const DiscDomain dom = DiscDomain::standard();
    const UnimodalMap phi = newton_fixed_point(UnimodalMap::newton_seed(dom, opts.order));
    const ModeAction act_phi(phi);
    const CycleData cyc_phi = cycle_data(phi);
    const double astar = alpha_star(fa);
    const FamilyData dstar = family_at(fa, astar, dom, opts.order);
    const std::vector<PairField> v =
        simplified_sequence(act_phi, omega0, dstar.dv_mode1, n_max);
    const double delta = 4.669201609102990;

    for (int n = 2; n <= n_max; ++n) {
        rep.n.push_back(n);
        rep.ratio_a.push_back(slopes_a[size_t(n - 1)] / slopes_a[size_t(n - 2)]);
        rep.ratio_b.push_back(slopes_b[size_t(n - 1)] / slopes_b[size_t(n - 2)]);
        rep.ratio_diff.push_back(std::abs(rep.ratio_a.back() - rep.ratio_b.back()));
        rep.doubling_ratio.push_back(slopes_a[size_t(n - 1)] / slopes_a_2w[size_t(n - 2)]);

        RotationNumber w(omega0.value);
        for (int i = 0; i < n - 2; ++i) w = w.doubled();
        // ω_{n-2} reached; v[n-1], v[n-2] available.
        const PairField vn1 = v[size_t(n - 1)] * (1.0 / sup_norm(v[size_t(n - 1)]));
        const PairField vn2 = v[size_t(n - 2)] * (1.0 / sup_norm(v[size_t(n - 2)]));
        const double m1 = circle_min_max(dG1_mode(cyc_phi, w.doubled(), vn1, 1)).m;
        const double m2 = circle_min_max(dG1_mode(cyc_phi, w, vn2, 1)).m;
        const double opnorm = sup_norm(apply_Lomega(act_phi, w, vn2));
        rep.rhs_factor.push_back((1.0 / delta) * (m1 / m2) * opnorm);
    }
    return rep;
}

} // namespace qpr
