#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "qprenorm/disc_domain.hpp"
#include "qprenorm/errors.hpp"

namespace qpr {

using Complex = std::complex<double>;

/// Controls the range heuristic used by compose/scale_arg. A composition
/// p∘q is rejected when boundary samples of q leave p's disc by more than
/// margin_scale*rho.
struct ComposeOptions {
    double margin_scale = 1e-3;
    int boundary_samples = 64;
    bool check = true;

    static ComposeOptions unchecked() {
        ComposeOptions o;
        o.check = false;
        return o;
    }
    static ComposeOptions relaxed(double scale) {
        ComposeOptions o;
        o.margin_scale = scale;
        return o;
    }
};

/// Truncated expansion sum f_i ((z-z0)/rho)^i on a DiscDomain.
/// Values are immutable after construction; every operation returns a
/// fresh object.
template <typename Scalar>
class BasicTaylor {
public:
    BasicTaylor() : dom_(), c_(1, Scalar(0)) {}

    BasicTaylor(DiscDomain dom, std::vector<Scalar> coeffs)
        : dom_(dom), c_(std::move(coeffs)) {
        if (c_.empty()) c_.assign(1, Scalar(0));
    }

    static BasicTaylor constant(DiscDomain dom, Scalar value, int order = 0) {
        std::vector<Scalar> c(static_cast<size_t>(order) + 1, Scalar(0));
        c[0] = value;
        return BasicTaylor(dom, std::move(c));
    }

    /// The map z -> z, i.e. z0 + rho*w.
    static BasicTaylor identity(DiscDomain dom, int order = 1) {
        std::vector<Scalar> c(static_cast<size_t>(std::max(order, 1)) + 1, Scalar(0));
        c[0] = Scalar(dom.z0);
        c[1] = Scalar(dom.rho);
        return BasicTaylor(dom, std::move(c));
    }

    /// Coefficient basis element w^i.
    static BasicTaylor basis(DiscDomain dom, int i, int order) {
        std::vector<Scalar> c(static_cast<size_t>(std::max(order, i)) + 1, Scalar(0));
        c[static_cast<size_t>(i)] = Scalar(1);
        return BasicTaylor(dom, std::move(c));
    }

    const DiscDomain& domain() const { return dom_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }

    Scalar coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : Scalar(0);
    }

    /// Horner evaluation of the expansion at z. Total on finite inputs;
    /// points outside the disc are evaluated as-is (caller-checked).
    Complex eval(Complex z) const {
        const Complex w = (z - Complex(dom_.z0)) / dom_.rho;
        Complex acc(0);
        for (int i = order(); i >= 0; --i) acc = acc * w + Complex(c_[static_cast<size_t>(i)]);
        return acc;
    }

    double eval_real(double x) const {
        static_assert(std::is_same_v<Scalar, double> || true);
        const double w = (x - dom_.z0) / dom_.rho;
        if constexpr (std::is_same_v<Scalar, double>) {
            double acc = 0;
            for (int i = order(); i >= 0; --i) acc = acc * w + c_[static_cast<size_t>(i)];
            return acc;
        } else {
            return eval(Complex(x)).real();
        }
    }

    BasicTaylor derivative() const {
        const int n = order();
        if (n == 0) return constant(dom_, Scalar(0));
        std::vector<Scalar> g(static_cast<size_t>(n), Scalar(0));
        for (int i = 1; i <= n; ++i)
            g[static_cast<size_t>(i - 1)] = c_[static_cast<size_t>(i)] * Scalar(double(i) / dom_.rho);
        return BasicTaylor(dom_, std::move(g));
    }

    BasicTaylor truncated(int new_order) const {
        std::vector<Scalar> g(static_cast<size_t>(new_order) + 1, Scalar(0));
        for (int i = 0; i <= new_order && i <= order(); ++i)
            g[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)];
        return BasicTaylor(dom_, std::move(g));
    }

    friend BasicTaylor operator+(const BasicTaylor& a, const BasicTaylor& b) {
        a.require_same_domain(b);
        std::vector<Scalar> g(std::max(a.c_.size(), b.c_.size()), Scalar(0));
        for (size_t i = 0; i < g.size(); ++i) g[i] = a.coeff(int(i)) + b.coeff(int(i));
        return BasicTaylor(a.dom_, std::move(g));
    }

    friend BasicTaylor operator-(const BasicTaylor& a, const BasicTaylor& b) {
        a.require_same_domain(b);
        std::vector<Scalar> g(std::max(a.c_.size(), b.c_.size()), Scalar(0));
        for (size_t i = 0; i < g.size(); ++i) g[i] = a.coeff(int(i)) - b.coeff(int(i));
        return BasicTaylor(a.dom_, std::move(g));
    }

    friend BasicTaylor operator*(const BasicTaylor& a, Scalar s) {
        std::vector<Scalar> g = a.c_;
        for (auto& x : g) x *= s;
        return BasicTaylor(a.dom_, std::move(g));
    }
    friend BasicTaylor operator*(Scalar s, const BasicTaylor& a) { return a * s; }
    friend BasicTaylor operator-(const BasicTaylor& a) { return a * Scalar(-1); }

    /// Product truncated at order max(Na, Nb).
    friend BasicTaylor operator*(const BasicTaylor& a, const BasicTaylor& b) {
        a.require_same_domain(b);
        const int n = std::max(a.order(), b.order());
        std::vector<Scalar> g(static_cast<size_t>(n) + 1, Scalar(0));
        const int na = std::min(a.order(), n);
        for (int i = 0; i <= na; ++i) {
            const Scalar ai = a.c_[static_cast<size_t>(i)];
            if (ai == Scalar(0)) continue;
            const int jmax = std::min(b.order(), n - i);
            for (int j = 0; j <= jmax; ++j)
                g[static_cast<size_t>(i + j)] += ai * b.c_[static_cast<size_t>(j)];
        }
        return BasicTaylor(a.dom_, std::move(g));
    }

    void require_same_domain(const BasicTaylor& other) const {
        if (dom_ != other.dom_)
            throw DomainMismatch("Taylor operands live on different discs");
    }

private:
    DiscDomain dom_;
    std::vector<Scalar> c_;
};

using TaylorPoly = BasicTaylor<double>;
using CTaylorPoly = BasicTaylor<Complex>;

inline CTaylorPoly to_complex(const TaylorPoly& p) {
    std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
    return CTaylorPoly(p.domain(), std::move(c));
}

inline TaylorPoly real_part(const CTaylorPoly& p) {
    std::vector<double> c(p.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = p.coeffs()[i].real();
    return TaylorPoly(p.domain(), std::move(c));
}

inline TaylorPoly imag_part(const CTaylorPoly& p) {
    std::vector<double> c(p.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = p.coeffs()[i].imag();
    return TaylorPoly(p.domain(), std::move(c));
}

inline CTaylorPoly conj(const CTaylorPoly& p) {
    std::vector<Complex> c(p.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = std::conj(p.coeffs()[i]);
    return CTaylorPoly(p.domain(), std::move(c));
}

namespace detail {

template <typename Scalar>
void check_range_containment(const BasicTaylor<Scalar>& q, const DiscDomain& target,
                             const ComposeOptions& opts) {
    if (!opts.check) return;
    const DiscDomain& d = q.domain();
    double worst = 0.0;
    for (int k = 0; k < opts.boundary_samples; ++k) {
        const double ang = 2.0 * M_PI * double(k) / double(opts.boundary_samples);
        const Complex z = Complex(d.z0) + d.rho * Complex(std::cos(ang), std::sin(ang));
        worst = std::max(worst, std::abs(q.eval(z) - Complex(target.z0)));
    }
    if (worst > target.rho * (1.0 + opts.margin_scale))
        throw ContainmentViolation("inner range leaves the disc: max |q(z)-z0| = " +
                                   std::to_string(worst) + " > rho = " + std::to_string(target.rho));
}

} // namespace detail

/// Truncated expansion of p∘q, by Horner's scheme in the coefficient
/// algebra. Exact for polynomial composition up to the truncation order.
template <typename Scalar>
BasicTaylor<Scalar> compose(const BasicTaylor<Scalar>& p, const BasicTaylor<Scalar>& q,
                            const ComposeOptions& opts = {}) {
    p.require_same_domain(q);
    detail::check_range_containment(q, p.domain(), opts);
    const DiscDomain dom = p.domain();
    const int n = std::max(p.order(), q.order());

    // qn = (q - z0)/rho, the inner map in the normalized variable.
    std::vector<Scalar> qn_c(q.coeffs());
    qn_c.resize(static_cast<size_t>(n) + 1, Scalar(0));
    qn_c[0] = (qn_c[0] - Scalar(dom.z0)) / Scalar(dom.rho);
    for (size_t i = 1; i < qn_c.size(); ++i) qn_c[i] /= Scalar(dom.rho);
    const BasicTaylor<Scalar> qn(dom, std::move(qn_c));

    BasicTaylor<Scalar> acc = BasicTaylor<Scalar>::constant(dom, p.coeff(p.order()), n);
    for (int i = p.order() - 1; i >= 0; --i) {
        acc = acc * qn;
        acc = acc + BasicTaylor<Scalar>::constant(dom, p.coeff(i), n);
    }
    return acc;
}

/// x -> p(a x), re-expanded about z0 (the center moves, so this is a
/// composition with the affine map, not a coefficient scaling).
template <typename Scalar>
BasicTaylor<Scalar> scale_arg(const BasicTaylor<Scalar>& p, double a,
                              const ComposeOptions& opts = {}) {
    if (a == 0.0) throw DegenerateScaling("scale_arg with a = 0");
    const DiscDomain dom = p.domain();
    std::vector<Scalar> aff(2);
    aff[0] = Scalar(a * dom.z0);
    aff[1] = Scalar(a * dom.rho);
    return compose(p, BasicTaylor<Scalar>(dom, std::move(aff)), opts);
}

/// Number of equispaced samples used by the sup-norm surrogate.
inline int sup_norm_samples(int order) { return 4 * std::max(order, 1) + 1; }

/// Numerical sup norm: max |p| over 4N+1 equispaced samples of the real
/// segment [z0-rho, z0+rho]. Deterministic reduction order.
inline double sup_norm(const TaylorPoly& p) {
    const int m = sup_norm_samples(p.order());
    const double lo = p.domain().seg_lo(), hi = p.domain().seg_hi();
    double best = 0.0;
    for (int k = 0; k < m; ++k) {
        const double x = lo + (hi - lo) * double(k) / double(m - 1);
        best = std::max(best, std::abs(p.eval_real(x)));
    }
    return best;
}

inline double sup_norm(const CTaylorPoly& p) {
    const int m = sup_norm_samples(p.order());
    const double lo = p.domain().seg_lo(), hi = p.domain().seg_hi();
    double best = 0.0;
    for (int k = 0; k < m; ++k) {
        const double x = lo + (hi - lo) * double(k) / double(m - 1);
        best = std::max(best, std::abs(p.eval(Complex(x))));
    }
    return best;
}

/// p_(N): first N+1 coefficients.
template <typename Scalar>
std::vector<Scalar> project_pN(const BasicTaylor<Scalar>& p, int N) {
    std::vector<Scalar> out(static_cast<size_t>(N) + 1, Scalar(0));
    for (int i = 0; i <= N; ++i) out[static_cast<size_t>(i)] = p.coeff(i);
    return out;
}

/// i_(N): coefficient vector back to a function on the disc.
template <typename Scalar>
BasicTaylor<Scalar> include_iN(DiscDomain dom, std::vector<Scalar> coeffs) {
    return BasicTaylor<Scalar>(dom, std::move(coeffs));
}

namespace detail {

/// Least-squares slope fit of log|f_n| over the tail window [N/2, N];
/// zero coefficients are skipped. Needs at least 5 usable points.
inline double radius_from_magnitudes(const std::vector<double>& mag, double rho) {
    const int N = static_cast<int>(mag.size()) - 1;
    if (N < 20) throw InsufficientTail("estimate_radius needs order >= 20");
    std::vector<double> xs, ys;
    for (int n = N / 2; n <= N; ++n) {
        const double m = mag[static_cast<size_t>(n)];
        if (!(m > 1e-300)) continue;
        xs.push_back(double(n));
        ys.push_back(std::log(m));
    }
    if (xs.size() < 5)
        throw InsufficientTail("fewer than 5 nonzero tail coefficients");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double n = double(xs.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rho * std::exp(-slope);
}

} // namespace detail

/// Estimated radius of convergence r = rho / limsup |f_n|^{1/n}.
inline double estimate_radius(const TaylorPoly& p) {
    std::vector<double> mag(p.coeffs().size());
    for (size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(p.coeffs()[i]);
    return detail::radius_from_magnitudes(mag, p.domain().rho);
}

inline double estimate_radius(const CTaylorPoly& p) {
    std::vector<double> mag(p.coeffs().size());
    for (size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(p.coeffs()[i]);
    return detail::radius_from_magnitudes(mag, p.domain().rho);
}

inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Plain-text serialization: header "z0,rho,N" then rows "index,coefficient",
/// 17 significant digits (decimal round-trip is bit-exact).
inline std::string to_csv(const TaylorPoly& p) {
    std::string out = format_g17(p.domain().z0) + "," + format_g17(p.domain().rho) + "," +
                      std::to_string(p.order()) + "\n";
    for (int i = 0; i <= p.order(); ++i)
        out += std::to_string(i) + "," + format_g17(p.coeff(i)) + "\n";
    return out;
}

inline TaylorPoly taylor_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw SchemaMismatch("empty TaylorPoly csv");
    double z0, rho;
    int n;
    if (std::sscanf(line.c_str(), "%lf,%lf,%d", &z0, &rho, &n) != 3)
        throw SchemaMismatch("bad TaylorPoly header: " + line);
    std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int i;
        double v;
        if (std::sscanf(line.c_str(), "%d,%lf", &i, &v) != 2)
            throw SchemaMismatch("bad TaylorPoly row: " + line);
        if (i < 0 || i > n) throw SchemaMismatch("coefficient index out of range");
        c[static_cast<size_t>(i)] = v;
    }
    return TaylorPoly(DiscDomain(z0, rho), std::move(c));
}

} // namespace qpr
