#pragma once

#include <cmath>
#include <stdexcept>

namespace qpr {

/// Complex disc D(z0, rho). Expansions are written in the normalized
/// variable w = (z - z0)/rho, so coefficients are domain-tagged and two
/// expansions are algebra-compatible only on equal domains.
struct DiscDomain {
    double z0 = 0.2;  // 1/5
    double rho = 1.5; // 3/2

    DiscDomain() = default;
    DiscDomain(double center, double radius) : z0(center), rho(radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("DiscDomain: radius must be > 0");
    }

    static DiscDomain standard() { return DiscDomain(0.2, 1.5); }

    // Real segment [z0-rho, z0+rho] = W ∩ R.
    double seg_lo() const { return z0 - rho; }
    double seg_hi() const { return z0 + rho; }

    bool contains(double x) const { return std::abs(x - z0) <= rho; }

    friend bool operator==(const DiscDomain& a, const DiscDomain& b) {
        return a.z0 == b.z0 && a.rho == b.rho;
    }
    friend bool operator!=(const DiscDomain& a, const DiscDomain& b) { return !(a == b); }
};

} // namespace qpr
