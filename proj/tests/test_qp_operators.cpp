#include <catch2/catch.hpp>
#include <random>

#include "qprenorm/qp_operators.hpp"
#include "qprenorm/renorm_fixed_point.hpp"

using namespace qpr;

namespace {

const UnimodalMap& phi40() {
    static const UnimodalMap phi =
        newton_fixed_point(UnimodalMap::newton_seed(DiscDomain::standard(), 40));
    return phi;
}

const ModeAction& act40() {
    static const ModeAction act(phi40());
    return act;
}

PairField random_pair(std::mt19937& rng, const DiscDomain& dom, int order) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> u(static_cast<size_t>(order) + 1), v(u.size());
    for (auto& x : u) x = dist(rng);
    for (auto& x : v) x = dist(rng);
    return PairField(TaylorPoly(dom, std::move(u)), TaylorPoly(dom, std::move(v)));
}

} // namespace

TEST_CASE("L1 and L2 pointwise oracles", "[qp-operators]") {
    const ModeAction& act = act40();
    const UnimodalMap& phi = phi40();
    const double a = phi.a();
    const DiscDomain dom = phi.domain();
    const TaylorPoly one = TaylorPoly::constant(dom, 1.0, phi.order());
    const TaylorPoly id = TaylorPoly::identity(dom, phi.order());
    const TaylorPoly dphi = phi.psi.derivative();

    const TaylorPoly l1_one = act.apply_L1(one);
    const TaylorPoly l2_id = act.apply_L2(id);
    for (int k = 0; k < 32; ++k) {
        const double x = -1.2 + 2.8 * k / 31.0;
        CHECK(l1_one.eval_real(x) ==
              Approx(dphi.eval_real(phi.psi.eval_real(a * x)) / a).margin(1e-10));
        CHECK(l2_id.eval_real(x) == Approx(phi.psi.eval_real(a * x) / a).margin(1e-10));
    }

    // constants under L2
    const TaylorPoly l2_c = act.apply_L2(TaylorPoly::constant(dom, 3.0, phi.order()));
    CHECK(sup_norm(l2_c - TaylorPoly::constant(dom, 3.0 / a, phi.order())) < 1e-12);

    // zero and linearity
    CHECK(sup_norm(act.apply_L1(TaylorPoly::constant(dom, 0.0, phi.order()))) == 0.0);
    std::mt19937 rng(3);
    const PairField g = random_pair(rng, dom, phi.order());
    const TaylorPoly lin =
        act.apply_L1(g.u * 2.0 + g.v * -3.0) - (act.apply_L1(g.u) * 2.0 - act.apply_L1(g.v) * 3.0);
    CHECK(sup_norm(lin) < 1e-12 * std::max(1.0, sup_norm(act.apply_L1(g.u))));
}

TEST_CASE("L_omega at omega = 0 and rank-one relation to DR", "[qp-operators]") {
    const ModeAction& act = act40();
    std::mt19937 rng(5);
    const PairField p = random_pair(rng, act.base().domain(), act.order());

    const PairField img = apply_Lomega(act, RotationNumber(0.0), p);
    CHECK(sup_norm(img.u - (act.apply_L1(p.u) + act.apply_L2(p.u))) < 1e-12);
    CHECK(sup_norm(img.v - (act.apply_L1(p.v) + act.apply_L2(p.v))) < 1e-12);

    // first component on (u, 0) equals d_renormalize minus the rank-one term
    const double u1 = p.u.eval_real(1.0);
    const TaylorPoly rank_one = vec_to_taylor(p.domain(), act.E() * u1);
    CHECK(sup_norm(img.u - (act.d_renormalize(p.u) - rank_one)) < 1e-9);

    // zero input
    const TaylorPoly z = TaylorPoly::constant(act.base().domain(), 0.0, act.order());
    CHECK(sup_norm(apply_Lomega(act, RotationNumber(0.3), PairField(z, z))) == 0.0);
}

TEST_CASE("L_omega commutes with R_gamma", "[qp-operators]") {
    const ModeAction& act = act40();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        const PairField p = random_pair(rng, act.base().domain(), act.order());
        const RotationNumber w(dist(rng));
        const double gamma = dist(rng);
        const PairField lhs = apply_Lomega(act, w, rotate_Rgamma(gamma, p));
        const PairField rhs = rotate_Rgamma(gamma, apply_Lomega(act, w, p));
        CHECK(sup_norm(lhs - rhs) < 1e-10 * std::max(1.0, sup_norm(rhs)));
    }
}

TEST_CASE("rotation and phase shift groups", "[qp-operators]") {
    std::mt19937 rng(11);
    const DiscDomain dom = DiscDomain::standard();
    const PairField p = random_pair(rng, dom, 12);

    CHECK(sup_norm(rotate_Rgamma(0.0, p) - p) == 0.0);
    const PairField quarter = rotate_Rgamma(0.25, p);
    CHECK(sup_norm(quarter.u - (-1.0 * p.v)) < 1e-14);
    CHECK(sup_norm(quarter.v - p.u) < 1e-14);
    CHECK(sup_norm(rotate_Rgamma(-0.3, rotate_Rgamma(0.3, p)) - p) < 1e-14);

    CHECK(sup_norm(phase_shift_tgamma(0.0, p) - p) == 0.0);
    const PairField cos_only(p.u, TaylorPoly::constant(dom, 0.0, 12));
    const PairField shifted = phase_shift_tgamma(0.25, cos_only);
    CHECK(sup_norm(shifted.u) < 1e-14);
    CHECK(sup_norm(shifted.v - (-1.0 * p.u)) < 1e-14);

    const PairField ab = phase_shift_tgamma(0.2, phase_shift_tgamma(0.35, p));
    CHECK(sup_norm(ab - phase_shift_tgamma(0.55, p)) < 1e-14);

    // t_gamma shifts the represented function: f(theta + gamma)
    const double theta = 0.17, gamma = 0.29;
    auto eval_field = [&](const PairField& q, double th, double x) {
        return q.u.eval_real(x) * std::cos(2 * M_PI * th) + q.v.eval_real(x) * std::sin(2 * M_PI * th);
    };
    const PairField tg = phase_shift_tgamma(gamma, p);
    CHECK(eval_field(tg, theta, 0.4) == Approx(eval_field(p, theta + gamma, 0.4)).margin(1e-13));
}

TEST_CASE("phase reduction", "[qp-operators]") {
    const DiscDomain dom = DiscDomain::standard();
    const int order = 12;
    const PairField p(TaylorPoly::constant(dom, 3.0, order), TaylorPoly::constant(dom, 4.0, order));
    auto [s, gamma] = phase_reduce(p);
    CHECK(s.pair.v.eval_real(0.0) == Approx(5.0).margin(1e-12));
    CHECK(std::abs(s.pair.u.eval_real(0.0)) < 1e-12);
    CHECK(gamma >= 0.0);
    CHECK(gamma < 1.0);

    // already reduced: gamma = 0 mod 1 (roundoff can wrap to 1 - eps), unchanged
    auto [s2, gamma2] = phase_reduce(s.pair);
    CHECK(std::min(gamma2, 1.0 - gamma2) < 1e-12);
    CHECK(sup_norm(s2.pair - s.pair) < 1e-13);

    // quotient property: reduce after an arbitrary shift gives the same point
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const PairField q = random_pair(rng, dom, order);
    const PairField base = phase_reduce(q).first.pair;
    for (int t = 0; t < 8; ++t) {
        const double beta = dist(rng);
        const PairField shifted = phase_shift_tgamma(beta, q);
        CHECK(sup_norm(phase_reduce(shifted).first.pair - base) < 1e-10 * std::max(1.0, sup_norm(base)));
    }

    const TaylorPoly z = TaylorPoly::constant(dom, 0.0, order);
    CHECK_THROWS_AS(phase_reduce(PairField(z, z)), ZeroSectionValue);
}

TEST_CASE("pi1 projection", "[qp-operators]") {
    const DiscDomain dom = DiscDomain::standard();
    const UnimodalMap& phi = phi40();

    QPFunction f = QPFunction::uncoupled(phi.psi, 3);
    const PairField p0 = project_pi1(f);
    CHECK(sup_norm(p0) == 0.0);

    std::mt19937 rng(17);
    const PairField p = random_pair(rng, dom, 10);
    QPFunction g(dom, 3, 10);
    g.add_pair_mode(1, PairField(p.u, TaylorPoly::constant(dom, 0.0, 10)));
    const PairField back = project_pi1(g);
    CHECK(sup_norm(back.u - p.u) < 1e-13);
    CHECK(sup_norm(back.v) < 1e-13);

    // idempotence through the pair representation
    QPFunction h(dom, 3, 10);
    h.add_pair_mode(1, p);
    const PairField once = project_pi1(h);
    QPFunction h2(dom, 3, 10);
    h2.add_pair_mode(1, once);
    CHECK(sup_norm(project_pi1(h2) - once) < 1e-14);

    // the pair really represents u cos + v sin
    const double theta = 0.37, x = 0.6;
    CHECK(h.eval_real(theta, x) ==
          Approx(p.u.eval_real(x) * std::cos(2 * M_PI * theta) +
                 p.v.eval_real(x) * std::sin(2 * M_PI * theta)).margin(1e-12));
}

TEST_CASE("dT_mode contract", "[qp-operators]") {
    const ModeAction& act = act40();
    std::mt19937 rng(19);
    const PairField p = random_pair(rng, act.base().domain(), act.order());
    const RotationNumber w(0.3137);

    CHECK(sup_norm(dT_mode(act, w, 1, p) - apply_Lomega(act, w, p)) == 0.0);
    CHECK(sup_norm(dT_mode(act, w, 2, p) - apply_Lomega(act, RotationNumber(2 * w.value), p)) == 0.0);
    CHECK(sup_norm(dT_mode(act, w, 2, p) - dT_mode(act, RotationNumber(2 * w.value), 1, p)) == 0.0);
}

TEST_CASE("qp_renormalize on uncoupled maps is the 1-D operator", "[qp-operators]") {
    const UnimodalMap& phi = phi40();
    const QPFunction f = QPFunction::uncoupled(phi.psi, 4);
    const QPFunction rf = qp_renormalize(f, RotationNumber::golden());
    CHECK(sup_norm(rf.p0() - renormalize(phi).psi) < 1e-11);
    for (int k = 1; k <= 4; ++k) CHECK(sup_norm(rf.mode(k)) < 1e-12);

    // conjugate symmetry survives the operator (real-analyticity): c_{-k} is
    // the conjugate of c_k and evaluations on real points are real
    std::mt19937 rng(43);
    QPFunction g = QPFunction::uncoupled(phi.psi, 3);
    g.add_pair_mode(1, random_pair(rng, phi.domain(), phi.order()) * 0.01);
    const QPFunction rg = qp_renormalize(g, RotationNumber::golden());
    for (int k = 1; k <= 3; ++k)
        CHECK(sup_norm(rg.mode(-k) - conj(rg.mode(k))) == 0.0);
    CHECK(sup_norm(imag_part(rg.mode(0))) == 0.0);
}

TEST_CASE("a_hat ignores pure oscillating modes", "[qp-operators]") {
    const UnimodalMap& phi = phi40();
    QPFunction f = QPFunction::uncoupled(phi.psi, 3);
    std::mt19937 rng(23);
    const PairField p = random_pair(rng, phi.domain(), phi.order());
    f.add_pair_mode(1, p);
    CHECK(f.a_hat() == Approx(phi.a()).margin(1e-14));
}

TEST_CASE("qp_renormalize derivative matches the mode formula", "[qp-operators]") {
    const UnimodalMap& phi = phi40();
    const ModeAction& act = act40();
    const RotationNumber w = RotationNumber::golden();
    std::mt19937 rng(29);
    const PairField dir = random_pair(rng, phi.domain(), phi.order());
    const double h = 1e-6;

    QPFunction plus = QPFunction::uncoupled(phi.psi, 4);
    plus.add_pair_mode(1, dir * h);
    QPFunction minus = QPFunction::uncoupled(phi.psi, 4);
    minus.add_pair_mode(1, dir * -h);

    const QPFunction fd = (qp_renormalize(plus, w) - qp_renormalize(minus, w)) * (1.0 / (2.0 * h));
    const PairField fd_pair = project_pi1(fd);
    const PairField an = apply_Lomega(act, w, dir);
    CHECK(sup_norm(fd_pair - an) < 1e-6 * std::max(1.0, sup_norm(an)));

    // mode-0 leakage of the derivative is O(h^2)-level
    CHECK(sup_norm(fd.p0()) < 1e-5);

    // B_k invariance: single-mode inputs produce single-mode outputs
    for (int k = 2; k <= 4; ++k) CHECK(sup_norm(fd.mode(k)) < 1e-8 * std::max(1.0, sup_norm(an)));
}

TEST_CASE("qp_renormalize derivative on mode 2", "[qp-operators]") {
    const UnimodalMap& phi = phi40();
    const ModeAction& act = act40();
    const RotationNumber w = RotationNumber::golden();
    std::mt19937 rng(31);
    const PairField dir = random_pair(rng, phi.domain(), phi.order());
    const double h = 1e-6;

    QPFunction plus = QPFunction::uncoupled(phi.psi, 5);
    plus.add_pair_mode(2, dir * h);
    QPFunction minus = QPFunction::uncoupled(phi.psi, 5);
    minus.add_pair_mode(2, dir * -h);
    const QPFunction fd = (qp_renormalize(plus, w) - qp_renormalize(minus, w)) * (1.0 / (2.0 * h));

    // mode-2 block acts like L at 2*omega; express via the pair convention
    CTaylorPoly c2 = fd.mode(2);
    const PairField fd_pair(real_part(c2) * 2.0, imag_part(c2) * -2.0);
    const PairField an = dT_mode(act, w, 2, dir);
    CHECK(sup_norm(fd_pair - an) < 1e-6 * std::max(1.0, sup_norm(an)));
}

TEST_CASE("section map is the rotational quotient", "[qp-operators]") {
    const ModeAction& act = act40();
    const RotationNumber w = RotationNumber::golden();
    std::mt19937 rng(37);
    const PairField p = random_pair(rng, act.base().domain(), act.order());
    const SectionPoint s = phase_reduce(p).first;

    const SectionImage direct = apply_Lomega_prime(act, w, s);

    // rotate the input arbitrarily, reduce, apply: same section image
    const PairField rotated = rotate_Rgamma(0.37, s.pair);
    const SectionPoint s2 = phase_reduce(rotated).first;
    const SectionImage other = apply_Lomega_prime(act, w, s2);
    CHECK(sup_norm(direct.point.pair - other.point.pair) <
          1e-10 * std::max(1.0, sup_norm(direct.point.pair)));

    const TaylorPoly z = TaylorPoly::constant(act.base().domain(), 0.0, act.order());
    CHECK_THROWS_AS(phase_reduce(PairField(z, z)).first, ZeroSectionValue);
}

TEST_CASE("power iteration fixed point of the section map", "[qp-operators]") {
    const ModeAction& act = act40();
    const RotationNumber w = RotationNumber::golden();
    const DiscDomain dom = act.base().domain();
    SectionPoint s = phase_reduce(PairField(TaylorPoly::constant(dom, 0.2, act.order()),
                                            TaylorPoly::constant(dom, 1.0, act.order())))
                         .first;
    s = SectionPoint(s.pair * (1.0 / sup_norm(s.pair)));
    for (int i = 0; i < 200; ++i) {
        const SectionImage img = apply_Lomega_prime(act, w, s);
        s = SectionPoint(img.point.pair * (1.0 / img.norm_factor));
    }
    const SectionImage img = apply_Lomega_prime(act, w, s);
    const PairField out = img.point.pair * (1.0 / img.norm_factor);
    CHECK(sup_norm(out - s.pair) < 1e-6);
}
