#pragma once

#include <cmath>

namespace qpr {

/// Rotation number ω reduced mod 1. No Diophantine verification is
/// performed; the doubling map drives all ω-dynamics here.
struct RotationNumber {
    double value = 0.0;

    RotationNumber() = default;
    explicit RotationNumber(double v) : value(reduce(v)) {}

    static double reduce(double v) {
        double r = std::fmod(v, 1.0);
        if (r < 0.0) r += 1.0;
        return r;
    }

    RotationNumber doubled() const { return RotationNumber(2.0 * value); }
    RotationNumber times(int k) const { return RotationNumber(double(k) * value); }

    /// (√5−1)/2
    static RotationNumber golden() { return RotationNumber((std::sqrt(5.0) - 1.0) / 2.0); }
};

/// Long doubling orbits in floating point shed one mantissa bit per step
/// and collapse to 0 after ~53 iterations. This driver keeps ω = p/q with a
/// fixed odd denominator (a Fibonacci number, so the golden mean is
/// representable to ~1e-36): doubling is the exact integer map p -> 2p mod q.
class DoublingOrbit {
public:
    explicit DoublingOrbit(double omega0) {
        const double r = RotationNumber::reduce(omega0);
        p_ = static_cast<unsigned long long>(std::llround(r * double(q_))) % q_;
    }

    RotationNumber value() const { return RotationNumber(double(p_) / double(q_)); }
    void advance() { p_ = (2 * p_) % q_; } // 2p < 2^64 since q < 2^62

private:
    static constexpr unsigned long long q_ = 1100087778366101931ull; // F_88, odd
    unsigned long long p_ = 0;
};

} // namespace qpr
