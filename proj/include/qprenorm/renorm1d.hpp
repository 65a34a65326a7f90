#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "qprenorm/taylor.hpp"

namespace qpr {

/// A one-dimensional map ψ on the standard disc, normalized so ψ(0) = 1.
struct UnimodalMap {
    TaylorPoly psi;

    UnimodalMap() = default;
    explicit UnimodalMap(TaylorPoly p) : psi(std::move(p)) {}

    const DiscDomain& domain() const { return psi.domain(); }
    int order() const { return psi.order(); }

    /// a = ψ(1), the rescaling of the doubling operator.
    double a() const { return psi.eval_real(1.0); }

    double normalization_defect() const { return std::abs(psi.eval_real(0.0) - 1.0); }

    /// Seed 1 - 1.5 x^2 re-expanded on the given disc.
    static UnimodalMap newton_seed(DiscDomain dom, int order) {
        std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
        c[0] = 1.0 - 1.5 * dom.z0 * dom.z0;
        if (order >= 1) c[1] = -3.0 * dom.z0 * dom.rho;
        if (order >= 2) c[2] = -1.5 * dom.rho * dom.rho;
        return UnimodalMap(TaylorPoly(dom, std::move(c)));
    }

    /// 1 - lambda x^2 on the given disc.
    static UnimodalMap quadratic(DiscDomain dom, double lambda, int order) {
        std::vector<double> c(static_cast<size_t>(std::max(order, 2)) + 1, 0.0);
        c[0] = 1.0 - lambda * dom.z0 * dom.z0;
        c[1] = -2.0 * lambda * dom.z0 * dom.rho;
        c[2] = -lambda * dom.rho * dom.rho;
        return UnimodalMap(TaylorPoly(dom, std::move(c)));
    }
};

/// Real-interval domain conditions of the doubling operator: a<0,
/// 1 > b' > -a', ψ(b') < -a', with a' = (1+δ)a, b' = ψ(a').
struct DomainCheckReport {
    double a = 0, a_prime = 0, b_prime = 0, psi_b_prime = 0;
    bool a_negative = false;
    bool b_below_one = false;
    bool b_above_minus_a = false;
    bool image_below_minus_a = false;
    // Signed margins; positive means satisfied.
    double margin_a = 0, margin_b_hi = 0, margin_b_lo = 0, margin_image = 0;

    bool ok() const {
        return a_negative && b_below_one && b_above_minus_a && image_below_minus_a;
    }
};

inline DomainCheckReport domain_check(const UnimodalMap& m, double delta = 0.01) {
    DomainCheckReport r;
    r.a = m.a();
    r.a_prime = (1.0 + delta) * r.a;
    r.b_prime = m.psi.eval_real(r.a_prime);
    r.psi_b_prime = m.psi.eval_real(r.b_prime);
    r.margin_a = -r.a;
    r.margin_b_hi = 1.0 - r.b_prime;
    r.margin_b_lo = r.b_prime + r.a_prime;
    r.margin_image = -r.a_prime - r.psi_b_prime;
    r.a_negative = r.margin_a > 0;
    r.b_below_one = r.margin_b_hi > 0;
    r.b_above_minus_a = r.margin_b_lo > 0;
    r.image_below_minus_a = r.margin_image > 0;
    return r;
}

/// R(ψ)(x) = (1/a) ψ∘ψ(a x), a = ψ(1).
inline UnimodalMap renormalize(const UnimodalMap& m, const ComposeOptions& opts = {},
                               double a_floor = 1e-8) {
    const double a = m.a();
    if (std::abs(a) < a_floor)
        throw DegenerateScaling("renormalize: |psi(1)| = " + std::to_string(std::abs(a)) +
                                " below floor (map on Sigma_1)");
    const TaylorPoly inner = scale_arg(m.psi, a, opts);
    return UnimodalMap(compose(m.psi, inner, opts) * (1.0 / a));
}

/// Real 2-cycle (p0, p1) with p1 = ψ(p0), p0 the point nearest the
/// critical point 0. Fixed points of ψ are deflated.
inline std::array<double, 2> two_cycle(const UnimodalMap& m) {
    const TaylorPoly& psi = m.psi;
    const TaylorPoly dpsi = psi.derivative();
    const DiscDomain dom = psi.domain();
    const double lo = dom.seg_lo(), hi = dom.seg_hi();

    auto second_iter = [&](double x) { return psi.eval_real(psi.eval_real(x)); };
    auto valid = [&](double x) { return dom.contains(x) && dom.contains(psi.eval_real(x)); };

    const int grid = 2048;
    std::vector<double> roots;
    double xp = lo, fp = 0;
    bool have_prev = false;
    for (int k = 0; k <= grid; ++k) {
        const double x = lo + (hi - lo) * double(k) / grid;
        if (!valid(x)) {
            have_prev = false;
            continue;
        }
        const double f = second_iter(x) - x;
        if (have_prev && fp * f <= 0.0) {
            // Newton polish from the midpoint of the sign change.
            double r = 0.5 * (xp + x);
            for (int it = 0; it < 60; ++it) {
                const double y = psi.eval_real(r);
                const double g = psi.eval_real(y) - r;
                const double dg = dpsi.eval_real(y) * dpsi.eval_real(r) - 1.0;
                if (std::abs(dg) < 1e-14) break;
                const double step = g / dg;
                r -= step;
                if (std::abs(step) < 1e-14) break;
            }
            if (valid(r) && std::abs(second_iter(r) - r) < 1e-9 &&
                std::abs(psi.eval_real(r) - r) > 1e-8) {
                bool dup = false;
                for (double q : roots) dup = dup || std::abs(q - r) < 1e-9;
                if (!dup) roots.push_back(r);
            }
        }
        xp = x;
        fp = f;
        have_prev = true;
    }
    if (roots.empty()) throw NoCycle("no real 2-cycle found on the segment");
    double p0 = roots[0];
    for (double r : roots)
        if (std::abs(r) < std::abs(p0)) p0 = r;
    return {p0, psi.eval_real(p0)};
}

/// One-parameter analytic family alpha -> 1-D map, with its partials.
struct MapFamily1D {
    std::function<double(double, double)> f;         // f(alpha, x)
    std::function<double(double, double)> df_dalpha; // ∂f/∂alpha
    std::function<double(double, double)> df_dx;     // ∂f/∂x
};

/// Superstable parameter alpha_n: the critical orbit of length 2^n closes,
/// F_alpha^{2^n}(0) = 0. Safeguarded Newton inside the bracket; the
/// alpha-derivative is accumulated along the orbit by the chain rule.
inline double superstable_parameter(const MapFamily1D& fam, int n,
                                    double bracket_lo, double bracket_hi,
                                    double tol = 1e-12, int max_iter = 200) {
    const long steps = 1L << n;
    auto orbit_val_and_deriv = [&](double alpha) {
        double x = 0.0, dx = 0.0;
        for (long i = 0; i < steps; ++i) {
            const double nx = fam.f(alpha, x);
            dx = fam.df_dalpha(alpha, x) + fam.df_dx(alpha, x) * dx;
            x = nx;
        }
        return std::pair<double, double>(x, dx);
    };

    double lo = bracket_lo, hi = bracket_hi;
    auto [glo, dglo] = orbit_val_and_deriv(lo);
    auto [ghi, dghi] = orbit_val_and_deriv(hi);
    (void)dglo;
    (void)dghi;
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (glo * ghi > 0.0)
        throw BracketMiss("superstable_parameter: no sign change in bracket [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");

    double alpha = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        auto [g, dg] = orbit_val_and_deriv(alpha);
        if (std::abs(g) < tol) return alpha;
        // Orbit sensitivity ~ δ^n makes |g| < tol unreachable in doubles for
        // large n; the bracket still pins alpha to machine precision.
        if (hi - lo < 8.0 * std::numeric_limits<double>::epsilon() * std::abs(alpha))
            return alpha;
        if (g * glo <= 0.0) hi = alpha;
        else lo = alpha;
        double next = alpha - (dg != 0.0 ? g / dg : 0.0);
        if (!(next > lo && next < hi) || dg == 0.0) next = 0.5 * (lo + hi);
        alpha = next;
    }
    throw NoConvergence("superstable_parameter: Newton did not converge");
}

} // namespace qpr
