#pragma once

#include <cmath>
#include <vector>

#include "qprenorm/errors.hpp"

namespace qpr {

/// Real trigonometric polynomial c0 + Σ_k a_k cos(2πkθ) + b_k sin(2πkθ).
class HarmonicFunction {
public:
    HarmonicFunction() = default;
    explicit HarmonicFunction(int degree)
        : a_(static_cast<size_t>(degree), 0.0), b_(static_cast<size_t>(degree), 0.0) {}

    int degree() const { return static_cast<int>(a_.size()); }
    double mean() const { return c0_; }
    double& mean() { return c0_; }

    double cos_coeff(int k) const { return in_range(k) ? a_[static_cast<size_t>(k - 1)] : 0.0; }
    double sin_coeff(int k) const { return in_range(k) ? b_[static_cast<size_t>(k - 1)] : 0.0; }

    void set_harmonic(int k, double ck, double sk) {
        if (k < 1) throw std::invalid_argument("harmonic index must be >= 1");
        if (k > degree()) {
            a_.resize(static_cast<size_t>(k), 0.0);
            b_.resize(static_cast<size_t>(k), 0.0);
        }
        a_[static_cast<size_t>(k - 1)] = ck;
        b_[static_cast<size_t>(k - 1)] = sk;
    }

    void add_harmonic(int k, double ck, double sk) {
        set_harmonic(k, cos_coeff(k) + ck, sin_coeff(k) + sk);
    }

    double eval(double theta) const {
        double s = c0_;
        for (int k = 1; k <= degree(); ++k) {
            const double ang = 2.0 * M_PI * double(k) * theta;
            s += a_[static_cast<size_t>(k - 1)] * std::cos(ang) +
                 b_[static_cast<size_t>(k - 1)] * std::sin(ang);
        }
        return s;
    }

    double eval_derivative(double theta) const {
        double s = 0;
        for (int k = 1; k <= degree(); ++k) {
            const double w = 2.0 * M_PI * double(k);
            const double ang = w * theta;
            s += w * (-a_[static_cast<size_t>(k - 1)] * std::sin(ang) +
                      b_[static_cast<size_t>(k - 1)] * std::cos(ang));
        }
        return s;
    }

    double eval_second_derivative(double theta) const {
        double s = 0;
        for (int k = 1; k <= degree(); ++k) {
            const double w = 2.0 * M_PI * double(k);
            const double ang = w * theta;
            s += -w * w * (a_[static_cast<size_t>(k - 1)] * std::cos(ang) +
                           b_[static_cast<size_t>(k - 1)] * std::sin(ang));
        }
        return s;
    }

    friend HarmonicFunction operator+(const HarmonicFunction& x, const HarmonicFunction& y) {
        HarmonicFunction out(std::max(x.degree(), y.degree()));
        out.c0_ = x.c0_ + y.c0_;
        for (int k = 1; k <= out.degree(); ++k)
            out.set_harmonic(k, x.cos_coeff(k) + y.cos_coeff(k), x.sin_coeff(k) + y.sin_coeff(k));
        return out;
    }

    friend HarmonicFunction operator-(const HarmonicFunction& x, const HarmonicFunction& y) {
        HarmonicFunction out(std::max(x.degree(), y.degree()));
        out.c0_ = x.c0_ - y.c0_;
        for (int k = 1; k <= out.degree(); ++k)
            out.set_harmonic(k, x.cos_coeff(k) - y.cos_coeff(k), x.sin_coeff(k) - y.sin_coeff(k));
        return out;
    }

    friend HarmonicFunction operator*(const HarmonicFunction& x, double s) {
        HarmonicFunction out = x;
        out.c0_ *= s;
        for (auto& v : out.a_) v *= s;
        for (auto& v : out.b_) v *= s;
        return out;
    }

private:
    bool in_range(int k) const { return k >= 1 && k <= degree(); }

    double c0_ = 0.0;
    std::vector<double> a_, b_;
};

/// The m/M operators: extrema of h over the circle.
struct CircleExtrema {
    double m = 0, M = 0;
    double argmin = 0, argmax = 0;
};

/// Degree-1 inputs use the closed form m,M = c0 ∓ sqrt(a1²+b1²); higher
/// degree falls back to a 1024-sample grid with Newton polish on h'.
inline CircleExtrema circle_min_max(const HarmonicFunction& h) {
    CircleExtrema out;
    bool pure_first = true;
    for (int k = 2; k <= h.degree(); ++k)
        pure_first = pure_first && h.cos_coeff(k) == 0.0 && h.sin_coeff(k) == 0.0;
    if (h.degree() <= 1 || pure_first) {
        const double a = h.cos_coeff(1), b = h.sin_coeff(1);
        const double r = std::hypot(a, b);
        out.m = h.mean() - r;
        out.M = h.mean() + r;
        const double phase = std::atan2(b, a) / (2.0 * M_PI);
        out.argmax = phase - std::floor(phase);
        out.argmin = out.argmax + 0.5 - std::floor(out.argmax + 0.5);
        return out;
    }

    const int grid = 1024;
    out.m = std::numeric_limits<double>::infinity();
    out.M = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid; ++j) {
        const double t = double(j) / grid;
        const double v = h.eval(t);
        if (v < out.m) {
            out.m = v;
            out.argmin = t;
        }
        if (v > out.M) {
            out.M = v;
            out.argmax = t;
        }
    }
    auto polish = [&](double t) {
        for (int it = 0; it < 20; ++it) {
            const double d1 = h.eval_derivative(t);
            const double d2 = h.eval_second_derivative(t);
            if (std::abs(d2) < 1e-14) break;
            const double step = d1 / d2;
            if (std::abs(step) > 0.5 / grid) break; // stay in the grid cell
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        return t - std::floor(t);
    };
    out.argmin = polish(out.argmin);
    out.argmax = polish(out.argmax);
    out.m = std::min(out.m, h.eval(out.argmin));
    out.M = std::max(out.M, h.eval(out.argmax));
    return out;
}

} // namespace qpr
