#pragma once

#include <vector>

#include "qprenorm/pair_field.hpp"
#include "qprenorm/taylor.hpp"

namespace qpr {

/// Finite Fourier series in the periodic variable with TaylorPoly
/// coefficients: f(θ,z) = Σ_{|k|<=K} c_k(z) e^{2πikθ}. Only k >= 0 is
/// stored; real-analyticity fixes c_{-k} = conj(c_k) and keeps mode 0 real.
class QPFunction {
public:
    QPFunction(DiscDomain dom, int K, int order)
        : dom_(dom), modes_(static_cast<size_t>(K) + 1, CTaylorPoly::constant(dom, Complex(0), order)) {}

    static QPFunction uncoupled(const TaylorPoly& psi, int K) {
        QPFunction f(psi.domain(), K, psi.order());
        f.modes_[0] = to_complex(psi);
        return f;
    }

    int mode_count() const { return static_cast<int>(modes_.size()) - 1; }
    const DiscDomain& domain() const { return dom_; }
    int order() const { return modes_.empty() ? 0 : modes_[0].order(); }

    /// c_k for any integer k (conjugate symmetry for k < 0, zero beyond K).
    CTaylorPoly mode(int k) const {
        const int a = std::abs(k);
        if (a > mode_count()) return CTaylorPoly::constant(dom_, Complex(0), order());
        return k >= 0 ? modes_[static_cast<size_t>(a)] : conj(modes_[static_cast<size_t>(a)]);
    }

    void set_mode0(const TaylorPoly& c0) { modes_[0] = to_complex(c0); }

    void set_mode(int k, const CTaylorPoly& ck) {
        if (k < 0 || k > mode_count()) throw std::out_of_range("QPFunction::set_mode");
        if (k == 0) modes_[0] = to_complex(real_part(ck));
        else modes_[static_cast<size_t>(k)] = ck;
    }

    /// Adds the B_k function u(x)cos(2πkθ) + v(x)sin(2πkθ): c_k += (u - iv)/2.
    void add_pair_mode(int k, const PairField& p) {
        if (k <= 0 || k > mode_count()) throw std::out_of_range("QPFunction::add_pair_mode");
        const CTaylorPoly half = (to_complex(p.u) - to_complex(p.v) * Complex(0, 1)) * Complex(0.5, 0);
        modes_[static_cast<size_t>(k)] = modes_[static_cast<size_t>(k)] + half;
    }

    /// p0: the θ-average, a real function on the disc.
    TaylorPoly p0() const { return real_part(modes_[0]); }

    /// π1 extraction with the convention u = 2 Re c_1, v = -2 Im c_1
    /// (fixed so that π1 is idempotent on B_1).
    PairField pi1() const {
        if (mode_count() < 1) {
            TaylorPoly z = TaylorPoly::constant(dom_, 0.0, order());
            return PairField(z, z);
        }
        return PairField(real_part(modes_[1]) * 2.0, imag_part(modes_[1]) * -2.0);
    }

    /// â = ∫ f(θ,1) dθ = c_0(1).
    double a_hat() const { return modes_[0].eval(Complex(1.0)).real(); }

    /// Slice at fixed θ: Σ_k c_k e^{2πikθ} as a real function of z.
    TaylorPoly at_theta(double theta) const {
        CTaylorPoly acc = modes_[0];
        for (int k = 1; k <= mode_count(); ++k) {
            const Complex ph = std::polar(1.0, 2.0 * M_PI * double(k) * theta);
            acc = acc + modes_[static_cast<size_t>(k)] * ph + conj(modes_[static_cast<size_t>(k)]) * std::conj(ph);
        }
        return real_part(acc);
    }

    double eval_real(double theta, double x) const { return at_theta(theta).eval_real(x); }

    friend QPFunction operator+(const QPFunction& a, const QPFunction& b) {
        if (a.dom_ != b.dom_) throw DomainMismatch("QPFunction domains differ");
        QPFunction out(a.dom_, std::max(a.mode_count(), b.mode_count()),
                       std::max(a.order(), b.order()));
        for (int k = 0; k <= out.mode_count(); ++k)
            out.modes_[static_cast<size_t>(k)] = a.mode(k) + b.mode(k);
        return out;
    }

    friend QPFunction operator*(const QPFunction& a, double s) {
        QPFunction out = a;
        for (auto& m : out.modes_) m = m * Complex(s, 0);
        return out;
    }

    friend QPFunction operator-(const QPFunction& a, const QPFunction& b) {
        return a + b * -1.0;
    }

private:
    DiscDomain dom_;
    std::vector<CTaylorPoly> modes_;
};

} // namespace qpr
