#pragma once

#include <cmath>

#include "qprenorm/taylor.hpp"

namespace qpr {

/// Element (u,v) of RH(W)⊕RH(W): one Fourier mode of a forced map,
/// representing u(x)cos(2πkθ) + v(x)sin(2πkθ).
struct PairField {
    TaylorPoly u;
    TaylorPoly v;

    PairField() = default;
    PairField(TaylorPoly uu, TaylorPoly vv) : u(std::move(uu)), v(std::move(vv)) {
        u.require_same_domain(v);
    }

    const DiscDomain& domain() const { return u.domain(); }
    int order() const { return std::max(u.order(), v.order()); }

    friend PairField operator+(const PairField& a, const PairField& b) {
        return PairField(a.u + b.u, a.v + b.v);
    }
    friend PairField operator-(const PairField& a, const PairField& b) {
        return PairField(a.u - b.u, a.v - b.v);
    }
    friend PairField operator*(const PairField& a, double s) {
        return PairField(a.u * s, a.v * s);
    }
    friend PairField operator*(double s, const PairField& a) { return a * s; }
    friend PairField operator-(const PairField& a) { return a * -1.0; }
};

/// max over the sampled real segment of sqrt(u(x)^2 + v(x)^2), which equals
/// sup over (θ,x) of |u(x)cos2πθ + v(x)sin2πθ| on the sample lattice.
inline double sup_norm(const PairField& p) {
    const int m = sup_norm_samples(p.order());
    const double lo = p.domain().seg_lo(), hi = p.domain().seg_hi();
    double best = 0.0;
    for (int k = 0; k < m; ++k) {
        const double x = lo + (hi - lo) * double(k) / double(m - 1);
        best = std::max(best, std::hypot(p.u.eval_real(x), p.v.eval_real(x)));
    }
    return best;
}

/// Pair sup taken over the disc boundary (the maximum principle makes this
/// the sup over the full disc for analytic components).
inline double boundary_sup_norm(const PairField& p, int samples = 256) {
    const DiscDomain d = p.domain();
    double best = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double ang = 2.0 * M_PI * double(k) / double(samples);
        const Complex z = Complex(d.z0) + d.rho * Complex(std::cos(ang), std::sin(ang));
        best = std::max(best, std::hypot(std::abs(p.u.eval(z)), std::abs(p.v.eval(z))));
    }
    return best;
}

/// Ordinary Taylor coefficients about x = 0 (the disc basis is centered at
/// z0, so parity in x is only visible after re-expansion).
inline std::vector<double> taylor_about_zero(const TaylorPoly& p, int count) {
    std::vector<double> c(static_cast<size_t>(count));
    TaylorPoly d = p;
    double factorial = 1.0;
    for (int i = 0; i < count; ++i) {
        if (i > 0) {
            d = d.derivative();
            factorial *= double(i);
        }
        c[static_cast<size_t>(i)] = d.eval_real(0.0) / factorial;
    }
    return c;
}

/// Ratio of odd to total coefficient mass across (u,v), in the about-zero
/// expansion; vanishes exactly on the even subspace.
inline double even_subspace_defect(const PairField& p) {
    double odd = 0.0, all = 0.0;
    for (const TaylorPoly* t : {&p.u, &p.v}) {
        const auto c = taylor_about_zero(*t, t->order() + 1);
        for (size_t i = 0; i < c.size(); ++i) {
            const double a = std::abs(c[i]);
            all += a;
            if (i % 2 == 1) odd += a;
        }
    }
    return all > 0.0 ? odd / all : 0.0;
}

} // namespace qpr
