#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "qprenorm/linalg.hpp"
#include "qprenorm/parallel.hpp"
#include "qprenorm/qp_operators.hpp"
#include "qprenorm/renorm_fixed_point.hpp"

namespace qpr {

/// Eigenvector of the pair operator: two complex-coefficient expansions.
struct CPairField {
    CTaylorPoly u;
    CTaylorPoly v;
};

/// Spectrum of a discretized operator at one ω, eigenvalues sorted by
/// decreasing modulus (conjugate +Im first).
struct SpectrumRecord {
    RotationNumber omega;
    int order = 0;
    std::vector<std::complex<double>> eigenvalues;
    Eigen::MatrixXcd eigenvectors; // 2(N+1) rows, one column per eigenvalue
    std::vector<double> residuals;
    bool converged = true;

    CPairField eigenvector_pair(const DiscDomain& dom, int i) const {
        const int n1 = static_cast<int>(eigenvectors.rows()) / 2;
        std::vector<Complex> uc(static_cast<size_t>(n1)), vc(static_cast<size_t>(n1));
        for (int r = 0; r < n1; ++r) {
            uc[static_cast<size_t>(r)] = eigenvectors(r, i);
            vc[static_cast<size_t>(r)] = eigenvectors(n1 + r, i);
        }
        return CPairField{CTaylorPoly(dom, std::move(uc)), CTaylorPoly(dom, std::move(vc))};
    }
};

/// Dense matrix of L_ω^(N) on R^{2(N+1)}, matching apply_Lomega:
/// [L1 + cos L2, sin L2; -sin L2, L1 + cos L2].
inline Eigen::MatrixXd lomega_matrix(const ModeAction& act, RotationNumber omega) {
    const double c = std::cos(2.0 * M_PI * omega.value);
    const double s = std::sin(2.0 * M_PI * omega.value);
    const int n1 = act.order() + 1;
    Eigen::MatrixXd A(2 * n1, 2 * n1);
    A.topLeftCorner(n1, n1) = act.L1() + c * act.L2();
    A.topRightCorner(n1, n1) = s * act.L2();
    A.bottomLeftCorner(n1, n1) = -s * act.L2();
    A.bottomRightCorner(n1, n1) = act.L1() + c * act.L2();
    return A;
}

inline SpectrumRecord spectrum_of_Lomega(const ModeAction& act, RotationNumber omega,
                                         int top_m = 24) {
    const EigenDecomposition eig = eigen_decompose(lomega_matrix(act, omega));
    SpectrumRecord rec;
    rec.omega = omega;
    rec.order = act.order();
    rec.converged = eig.converged;
    const int m = std::min<int>(top_m, static_cast<int>(eig.values.size()));
    rec.eigenvalues.assign(eig.values.begin(), eig.values.begin() + m);
    rec.eigenvectors = eig.vectors.leftCols(m);
    rec.residuals.assign(eig.residuals.begin(), eig.residuals.begin() + m);
    return rec;
}

inline SpectrumRecord spectrum_of_Lomega(const UnimodalMap& phi, RotationNumber omega,
                                         int top_m = 24) {
    return spectrum_of_Lomega(ModeAction(phi), omega, top_m);
}

/// ω-sweep with nearest-distance eigenvalue linkage between consecutive
/// grid points (conjugate pairs locked together).
struct SweepTable {
    std::vector<double> grid;
    std::vector<SpectrumRecord> records; // records[j].eigenvalues already permuted into tracks
    std::vector<bool> ambiguous_link;    // per grid point
};

namespace detail {

inline void link_to_previous(const std::vector<std::complex<double>>& prev,
                             SpectrumRecord& cur, bool& ambiguous) {
    const size_t m = std::min(prev.size(), cur.eigenvalues.size());
    std::vector<bool> taken(cur.eigenvalues.size(), false);
    std::vector<int> perm(cur.eigenvalues.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    ambiguous = false;
    for (size_t i = 0; i < m; ++i) {
        int best = -1, second = -1;
        double bestd = 0, secondd = 0;
        for (size_t j = 0; j < cur.eigenvalues.size(); ++j) {
            if (taken[j]) continue;
            const double d = std::abs(cur.eigenvalues[j] - prev[i]);
            if (best < 0 || d < bestd) {
                second = best;
                secondd = bestd;
                best = static_cast<int>(j);
                bestd = d;
            } else if (second < 0 || d < secondd) {
                second = static_cast<int>(j);
                secondd = d;
            }
        }
        if (best >= 0) {
            taken[static_cast<size_t>(best)] = true;
            perm[i] = best;
            if (second >= 0 && std::abs(secondd - bestd) < 1e-8) ambiguous = true;
        }
    }
    // Apply permutation to values/vectors/residuals.
    std::vector<std::complex<double>> vals(cur.eigenvalues.size());
    Eigen::MatrixXcd vecs(cur.eigenvectors.rows(), cur.eigenvectors.cols());
    std::vector<double> res(cur.residuals.size());
    std::vector<bool> used(cur.eigenvalues.size(), false);
    size_t out = 0;
    for (size_t i = 0; i < m; ++i, ++out) {
        vals[out] = cur.eigenvalues[static_cast<size_t>(perm[i])];
        vecs.col(static_cast<Eigen::Index>(out)) = cur.eigenvectors.col(perm[i]);
        res[out] = cur.residuals[static_cast<size_t>(perm[i])];
        used[static_cast<size_t>(perm[i])] = true;
    }
    for (size_t j = 0; j < cur.eigenvalues.size() && out < vals.size(); ++j) {
        if (used[j]) continue;
        vals[out] = cur.eigenvalues[j];
        vecs.col(static_cast<Eigen::Index>(out)) = cur.eigenvectors.col(static_cast<Eigen::Index>(j));
        res[out] = cur.residuals[j];
        ++out;
    }
    cur.eigenvalues = std::move(vals);
    cur.eigenvectors = std::move(vecs);
    cur.residuals = std::move(res);
}

} // namespace detail

inline SweepTable omega_sweep(const ModeAction& act, int grid_size, int top_m,
                              int threads = 0) {
    if (grid_size < 2) throw std::invalid_argument("omega_sweep: grid_size >= 2 required");
    SweepTable table;
    table.grid.resize(static_cast<size_t>(grid_size));
    table.records.resize(static_cast<size_t>(grid_size));
    table.ambiguous_link.assign(static_cast<size_t>(grid_size), false);
    for (int j = 0; j < grid_size; ++j)
        table.grid[static_cast<size_t>(j)] = double(j) / double(grid_size);

    parallel_for(grid_size, [&](int j) {
        table.records[static_cast<size_t>(j)] =
            spectrum_of_Lomega(act, RotationNumber(table.grid[static_cast<size_t>(j)]), top_m);
    }, threads);

    // Sequential linkage pass.
    for (int j = 1; j < grid_size; ++j) {
        bool amb = false;
        detail::link_to_previous(table.records[static_cast<size_t>(j - 1)].eigenvalues,
                                 table.records[static_cast<size_t>(j)], amb);
        table.ambiguous_link[static_cast<size_t>(j)] = amb;
    }
    return table;
}

/// Distances between eigenvectors of the same eigenvalue across
/// discretization orders, after projecting onto the reference eigenspace
/// (complex span for simple pairs, two-dimensional span for doubled reals).
struct EigenvectorDistanceTable {
    std::vector<int> orders;
    int reference_order = 0;
    // distance[oi][k]: order orders[oi], eigenvalue index k (NaN = MatchFailure)
    std::vector<std::vector<double>> distance;
    std::vector<std::complex<double>> reference_eigenvalues;
};

namespace detail {

/// Samples of a complex pair-eigenvector (normalized to unit max modulus)
/// over the real segment; both components stacked.
inline Eigen::VectorXcd sample_pair(const CPairField& p, int samples) {
    const DiscDomain dom = p.u.domain();
    Eigen::VectorXcd out(2 * samples);
    for (int k = 0; k < samples; ++k) {
        const double x = dom.seg_lo() + (dom.seg_hi() - dom.seg_lo()) * double(k) / double(samples - 1);
        out(k) = p.u.eval(Complex(x));
        out(samples + k) = p.v.eval(Complex(x));
    }
    double mx = 0;
    for (int i = 0; i < out.size(); ++i)
        mx = std::max(mx, std::hypot(out(i).real(), out(i).imag()));
    if (mx > 0) out /= mx;
    return out;
}

inline double pair_sup_distance_to_span(const Eigen::VectorXcd& v,
                                        const std::vector<Eigen::VectorXcd>& span) {
    // Least-squares projection on the sample lattice, then sup of the
    // pointwise pair modulus of the residual.
    Eigen::MatrixXcd B(v.size(), static_cast<Eigen::Index>(span.size()));
    for (size_t j = 0; j < span.size(); ++j) B.col(static_cast<Eigen::Index>(j)) = span[j];
    const Eigen::VectorXcd coef = (B.adjoint() * B).ldlt().solve(B.adjoint() * v);
    const Eigen::VectorXcd r = v - B * coef;
    const int samples = static_cast<int>(v.size()) / 2;
    double sup = 0;
    for (int k = 0; k < samples; ++k)
        sup = std::max(sup, std::sqrt(std::norm(r(k)) + std::norm(r(samples + k))));
    return sup;
}

} // namespace detail

inline EigenvectorDistanceTable validate_eigenvectors(
    const std::vector<std::pair<int, SpectrumRecord>>& records_by_order,
    const SpectrumRecord& reference, const DiscDomain& dom, int top_m = 24,
    int samples = 257) {
    EigenvectorDistanceTable table;
    table.reference_order = reference.order;
    table.reference_eigenvalues.assign(
        reference.eigenvalues.begin(),
        reference.eigenvalues.begin() + std::min<size_t>(top_m, reference.eigenvalues.size()));

    // Group reference eigenvalues into conjugate pairs / doubled reals.
    const int m = static_cast<int>(table.reference_eigenvalues.size());
    std::vector<std::vector<Eigen::VectorXcd>> ref_span(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) {
        std::vector<Eigen::VectorXcd> span;
        const std::complex<double> lam = table.reference_eigenvalues[static_cast<size_t>(k)];
        for (int j = 0; j < m; ++j) {
            const std::complex<double> mu = table.reference_eigenvalues[static_cast<size_t>(j)];
            if (std::abs(mu - lam) < 1e-6 * std::max(1.0, std::abs(lam)))
                span.push_back(detail::sample_pair(reference.eigenvector_pair(dom, j), samples));
        }
        ref_span[static_cast<size_t>(k)] = std::move(span);
    }

    for (const auto& [order, rec] : records_by_order) {
        table.orders.push_back(order);
        std::vector<double> row(static_cast<size_t>(m),
                                std::numeric_limits<double>::quiet_NaN());
        std::vector<bool> taken(rec.eigenvalues.size(), false);
        for (int k = 0; k < m; ++k) {
            const std::complex<double> lam = table.reference_eigenvalues[static_cast<size_t>(k)];
            const int j = nearest_value_index(rec.eigenvalues, lam, taken);
            if (j < 0) continue;
            if (std::abs(rec.eigenvalues[static_cast<size_t>(j)] - lam) >
                0.25 * std::max(0.05, std::abs(lam))) // vanished/appeared across orders
                continue;
            taken[static_cast<size_t>(j)] = true;
            const Eigen::VectorXcd v = detail::sample_pair(rec.eigenvector_pair(dom, j), samples);
            row[static_cast<size_t>(k)] =
                detail::pair_sup_distance_to_span(v, ref_span[static_cast<size_t>(k)]);
        }
        table.distance.push_back(std::move(row));
    }
    return table;
}

/// Radius-of-convergence estimates per eigenvector (min of the two
/// component radii). Entries that fail the tail test carry NaN.
struct RadiusTable {
    std::vector<double> radius;
    std::vector<bool> tail_ok;
};

inline double radius_of(const CPairField& p) {
    return std::min(estimate_radius(p.u), estimate_radius(p.v));
}

inline RadiusTable validate_radius(const SpectrumRecord& rec, const DiscDomain& dom) {
    RadiusTable out;
    for (size_t i = 0; i < rec.eigenvalues.size(); ++i) {
        try {
            out.radius.push_back(radius_of(rec.eigenvector_pair(dom, static_cast<int>(i))));
            out.tail_ok.push_back(true);
        } catch (const InsufficientTail&) {
            out.radius.push_back(std::numeric_limits<double>::quiet_NaN());
            out.tail_ok.push_back(false);
        }
    }
    return out;
}

struct SectionSpectrumOptions {
    double power_tol = 1e-10;
    int power_max_iter = 500;
    double fd_step = 1e-6;
    bool richardson = true;
    int top_m = 8;
};

/// Spectrum of the linearization of L'_ω, defined as the Jacobian of
/// s -> t_{γ(s)}(L_ω s) at the projective fixed point found by power
/// iteration on the section (the section plus v(0)>0 gives a canonical
/// representative, so plain iteration converges when the dominant
/// eigenvalue is isolated).
struct SectionSpectrum {
    SpectrumRecord record;
    double power_factor = 0;     // norm factor at the fixed point
    double gap = 0;              // |λ2|/|λ1| of the Jacobian
    int iterations = 0;
    SectionPoint fixed_point;
};

namespace detail {

/// Section coordinates: (u_1..u_N, v_0..v_N); u_0 is reconstructed from
/// u(0) = 0.
struct SectionCoords {
    DiscDomain dom;
    int N;
    Eigen::VectorXd w0; // eval-at-0 functional on coefficients

    explicit SectionCoords(DiscDomain d, int order) : dom(d), N(order), w0(order + 1) {
        const double w = (0.0 - d.z0) / d.rho;
        double pw = 1.0;
        for (int i = 0; i <= order; ++i) {
            w0(i) = pw;
            pw *= w;
        }
    }

    int dim() const { return 2 * N + 1; }

    Eigen::VectorXd to_coords(const PairField& p) const {
        Eigen::VectorXd c(dim());
        for (int i = 1; i <= N; ++i) c(i - 1) = p.u.coeff(i);
        for (int i = 0; i <= N; ++i) c(N + i) = p.v.coeff(i);
        return c;
    }

    PairField to_pair(const Eigen::VectorXd& c) const {
        std::vector<double> uc(static_cast<size_t>(N) + 1, 0.0);
        std::vector<double> vc(static_cast<size_t>(N) + 1, 0.0);
        double acc = 0;
        for (int i = 1; i <= N; ++i) {
            uc[static_cast<size_t>(i)] = c(i - 1);
            acc += c(i - 1) * w0(i);
        }
        uc[0] = -acc; // enforce u(0) = 0 exactly
        for (int i = 0; i <= N; ++i) vc[static_cast<size_t>(i)] = c(N + i);
        return PairField(TaylorPoly(dom, std::move(uc)), TaylorPoly(dom, std::move(vc)));
    }
};

} // namespace detail

inline SectionSpectrum section_jacobian_spectrum(const ModeAction& act, RotationNumber omega,
                                                 SectionSpectrumOptions opts = {}) {
    const DiscDomain dom = act.base().domain();
    const int N = act.order();

    // Power iteration of the normalized section map.
    PairField seed(TaylorPoly::constant(dom, 0.3, N), TaylorPoly::constant(dom, 1.0, N));
    SectionPoint s = phase_reduce(seed).first;
    s = SectionPoint(s.pair * (1.0 / sup_norm(s.pair)));
    double factor = 0;
    int used_iters = -1;
    for (int it = 0; it < opts.power_max_iter; ++it) {
        SectionImage img = apply_Lomega_prime(act, omega, s);
        factor = img.norm_factor;
        SectionPoint next(img.point.pair * (1.0 / factor));
        const double dist = sup_norm(next.pair - s.pair);
        s = std::move(next);
        if (dist < opts.power_tol) {
            used_iters = it + 1;
            break;
        }
    }
    if (used_iters < 0)
        throw PowerIterationDivergence("projective power iteration did not converge at omega = " +
                                       std::to_string(omega.value));

    // Jacobian of the unnormalized reduced map over the section basis.
    const detail::SectionCoords coords(dom, N);
    const Eigen::VectorXd c0 = coords.to_coords(s.pair);
    const int dim = coords.dim();

    auto apply_map = [&](const Eigen::VectorXd& c) {
        const PairField p = coords.to_pair(c);
        const PairField img = apply_Lomega(act, omega, p);
        return coords.to_coords(phase_reduce(img).first.pair);
    };
    auto jacobian_at_step = [&](double h) {
        Eigen::MatrixXd J(dim, dim);
        Eigen::VectorXd cp = c0, cm = c0;
        for (int j = 0; j < dim; ++j) {
            cp(j) += h;
            cm(j) -= h;
            J.col(j) = (apply_map(cp) - apply_map(cm)) / (2.0 * h);
            cp(j) = c0(j);
            cm(j) = c0(j);
        }
        return J;
    };

    Eigen::MatrixXd J = jacobian_at_step(opts.fd_step);
    if (opts.richardson) {
        const Eigen::MatrixXd J2 = jacobian_at_step(opts.fd_step / 2.0);
        J = (4.0 * J2 - J) / 3.0;
    }

    const EigenDecomposition eig = eigen_decompose(J);
    SectionSpectrum out{SpectrumRecord{}, factor, 0.0, used_iters, s};
    out.record.omega = omega;
    out.record.order = N;
    const int m = std::min<int>(opts.top_m, static_cast<int>(eig.values.size()));
    out.record.eigenvalues.assign(eig.values.begin(), eig.values.begin() + m);
    out.record.eigenvectors = eig.vectors.leftCols(m);
    out.record.residuals.assign(eig.residuals.begin(), eig.residuals.begin() + m);
    out.record.converged = eig.converged;
    if (m >= 2)
        out.gap = std::abs(eig.values[1]) / std::abs(eig.values[0]);
    return out;
}

} // namespace qpr
