#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "qprenorm/qp_operators.hpp"

namespace qpr {

enum class AttractorVariant { full, section };

/// Run parameters of the projectivized skew-product iteration over the
/// doubling ω-dynamics.
struct RunConfig {
    int order = 30;
    long transient = 2000;  // N1
    long record = 80000;    // N2
    RotationNumber omega0 = RotationNumber::golden();
    AttractorVariant variant = AttractorVariant::full;
    int seed_index = 0;     // canonical basis vector used as v0
    double embed_K0 = 2.0;

    RunConfig() = default;
};

/// One recorded iterate: ω and the displayed even Taylor-about-zero
/// coefficients (x0,y0,x2,y2,x4,y4) of the normalized pair (x=u, y=v).
struct AttractorPoint {
    double omega = 0;
    std::array<double, 6> coords{};
};

inline AttractorPoint attractor_point(double omega, const PairField& p) {
    const auto xu = taylor_about_zero(p.u, 5);
    const auto yv = taylor_about_zero(p.v, 5);
    AttractorPoint a;
    a.omega = omega;
    a.coords = {xu[0], yv[0], xu[2], yv[2], xu[4], yv[4]};
    return a;
}

/// Canonical basis seed: index j < N+1 selects u-coefficient j, otherwise
/// the v-coefficient j-(N+1).
inline PairField canonical_seed(const DiscDomain& dom, int order, int index) {
    const int n1 = order + 1;
    TaylorPoly zero = TaylorPoly::constant(dom, 0.0, order);
    if (index < n1) return PairField(TaylorPoly::basis(dom, index, order), zero);
    return PairField(zero, TaylorPoly::basis(dom, index - n1, order));
}

/// One step of L̃1: (ω, v) -> (2ω, L_ω v / ||L_ω v||).
inline std::pair<RotationNumber, PairField> step_full(const ModeAction& act,
                                                      RotationNumber omega,
                                                      const PairField& v) {
    const PairField img = apply_Lomega(act, omega, v);
    const double n = sup_norm(img);
    if (n < 1e-300) throw ZeroImage("step_full: image norm underflow");
    return {omega.doubled(), img * (1.0 / n)};
}

/// One step of the section map L1: (ω, v) -> (2ω, L'_ω v / ||L'_ω v||).
inline std::pair<RotationNumber, SectionPoint> step_section(const ModeAction& act,
                                                            RotationNumber omega,
                                                            const SectionPoint& s) {
    const SectionImage img = apply_Lomega_prime(act, omega, s);
    if (img.norm_factor < 1e-300) throw ZeroImage("step_section: image norm underflow");
    return {omega.doubled(), SectionPoint(img.point.pair * (1.0 / img.norm_factor))};
}

struct AttractorRun {
    std::vector<AttractorPoint> points;
    long section_gaps = 0;        // ZeroSectionValue events recorded, not fatal
    double max_defect_recorded = 0;
};

/// Discards `transient` iterates, records the following `record` ones.
/// Deterministic for a given config. The ω-orbit runs on the exact rational
/// doubling driver (a floating-point orbit collapses to 0 after ~53 steps).
inline AttractorRun run_attractor(const RunConfig& cfg, const ModeAction& act) {
    AttractorRun out;
    out.points.reserve(static_cast<size_t>(cfg.record));
    DoublingOrbit orbit(cfg.omega0.value);
    const DiscDomain dom = act.base().domain();

    if (cfg.variant == AttractorVariant::full) {
        PairField v = canonical_seed(dom, act.order(), cfg.seed_index);
        v = v * (1.0 / sup_norm(v));
        for (long i = 0; i < cfg.transient + cfg.record; ++i) {
            auto [w2, v2] = step_full(act, orbit.value(), v);
            (void)w2;
            orbit.advance();
            v = v2;
            if (i >= cfg.transient) {
                out.points.push_back(attractor_point(orbit.value().value, v));
                out.max_defect_recorded = std::max(out.max_defect_recorded, even_subspace_defect(v));
            }
        }
    } else {
        PairField raw = canonical_seed(dom, act.order(), cfg.seed_index);
        // Seeds with vanishing section value get a deterministic nudge.
        PairField nudged = raw + canonical_seed(dom, act.order(), act.order() + 1) * 1e-6;
        SectionPoint s = phase_reduce(nudged).first;
        s = SectionPoint(s.pair * (1.0 / sup_norm(s.pair)));
        for (long i = 0; i < cfg.transient + cfg.record; ++i) {
            try {
                auto [w2, s2] = step_section(act, orbit.value(), s);
                (void)w2;
                s = s2;
            } catch (const ZeroSectionValue&) {
                ++out.section_gaps;
                orbit.advance();
                continue;
            }
            orbit.advance();
            if (i >= cfg.transient) {
                out.points.push_back(attractor_point(orbit.value().value, s.pair));
                out.max_defect_recorded =
                    std::max(out.max_defect_recorded, even_subspace_defect(s.pair));
            }
        }
    }
    return out;
}

/// f(θ, x+iy) = (cosθ (x+K0), sinθ (x+K0), y), θ = 2πω.
/// coord_pair selects which recorded (x_j, y_j) plane is embedded: 0, 1, 2
/// for (x0,y0), (x2,y2), (x4,y4).
inline std::array<double, 3> torus_embed(const AttractorPoint& p, double K0, int coord_pair) {
    const double theta = 2.0 * M_PI * p.omega;
    const double x = p.coords[static_cast<size_t>(2 * coord_pair)];
    const double y = p.coords[static_cast<size_t>(2 * coord_pair + 1)];
    return {std::cos(theta) * (x + K0), std::sin(theta) * (x + K0), y};
}

/// Coordinate-wise min/max box of a point cloud.
struct BoundingBox {
    std::array<double, 6> lo{}, hi{};
};

inline BoundingBox bounding_box(const std::vector<AttractorPoint>& pts) {
    BoundingBox b;
    b.lo.fill(std::numeric_limits<double>::infinity());
    b.hi.fill(-std::numeric_limits<double>::infinity());
    for (const auto& p : pts)
        for (size_t c = 0; c < 6; ++c) {
            b.lo[c] = std::min(b.lo[c], p.coords[c]);
            b.hi[c] = std::max(b.hi[c], p.coords[c]);
        }
    return b;
}

/// Largest relative coordinate-wise disagreement between two boxes,
/// measured against the first box's spans.
inline double box_disagreement(const BoundingBox& a, const BoundingBox& b) {
    double worst = 0;
    for (size_t c = 0; c < 6; ++c) {
        const double span = std::max(a.hi[c] - a.lo[c], 1e-12);
        worst = std::max(worst, std::abs(a.lo[c] - b.lo[c]) / span);
        worst = std::max(worst, std::abs(a.hi[c] - b.hi[c]) / span);
    }
    return worst;
}

/// Single-linkage cluster count among the points of one ω-bin, with the
/// linking cutoff a fraction of the bin's coordinate spread.
inline int cluster_count(const std::vector<AttractorPoint>& pts, double bin_lo, double bin_hi,
                         double cutoff_fraction = 0.1, size_t coord_begin = 1,
                         size_t coord_end = 6) {
    std::vector<std::array<double, 6>> sel;
    for (const auto& p : pts)
        if (p.omega >= bin_lo && p.omega < bin_hi) sel.push_back(p.coords);
    if (sel.empty()) return 0;
    if (sel.size() > 2000) sel.resize(2000); // deterministic cap; linkage is O(n^2)

    double spread = 0;
    for (size_t c = coord_begin; c < coord_end; ++c) {
        double lo = sel[0][c], hi = sel[0][c];
        for (const auto& q : sel) {
            lo = std::min(lo, q[c]);
            hi = std::max(hi, q[c]);
        }
        spread = std::max(spread, hi - lo);
    }
    const double cutoff = cutoff_fraction * spread;
    if (!(cutoff > 0)) return 1;

    // Union-find over links shorter than the cutoff.
    std::vector<int> parent(sel.size());
    for (size_t i = 0; i < sel.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int i) {
        while (parent[static_cast<size_t>(i)] != i) {
            parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
            i = parent[static_cast<size_t>(i)];
        }
        return i;
    };
    for (size_t i = 0; i < sel.size(); ++i)
        for (size_t j = i + 1; j < sel.size(); ++j) {
            double d2 = 0;
            for (size_t c = coord_begin; c < coord_end; ++c) {
                const double d = sel[i][c] - sel[j][c];
                d2 += d * d;
            }
            if (std::sqrt(d2) <= cutoff) {
                const int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
                if (a != b) parent[static_cast<size_t>(a)] = b;
            }
        }
    int count = 0;
    for (size_t i = 0; i < sel.size(); ++i)
        if (find(static_cast<int>(i)) == static_cast<int>(i)) ++count;
    return count;
}

} // namespace qpr
