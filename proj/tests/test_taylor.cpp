#include <catch2/catch.hpp>
#include <random>

#include "qprenorm/pair_field.hpp"
#include "qprenorm/taylor.hpp"

using namespace qpr;

namespace {

TaylorPoly random_poly(std::mt19937& rng, const DiscDomain& dom, int order, double scale) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<double> c(static_cast<size_t>(order) + 1);
    for (auto& x : c) x = dist(rng);
    return TaylorPoly(dom, std::move(c));
}

} // namespace

TEST_CASE("eval basics", "[taylor]") {
    const DiscDomain dom = DiscDomain::standard();
    CHECK(TaylorPoly::constant(dom, 1.0).eval_real(0.7) == Approx(1.0).margin(0));

    // normalized linear term at the disc edge
    TaylorPoly lin(dom, {0.0, 1.0});
    CHECK(lin.eval_real(dom.z0 + dom.rho) == Approx(1.0).margin(1e-15));
}

TEST_CASE("compose polynomial identity", "[taylor]") {
    const DiscDomain unit(0.0, 1.0);
    TaylorPoly p(unit, {0.0, 0.0, 1.0}); // x^2
    TaylorPoly q(unit, {1.0, 1.0, 0.0}); // x + 1
    // range of q leaves the unit disc; the algebraic identity is the point here
    const TaylorPoly r = compose(p, q, ComposeOptions::unchecked());
    CHECK(r.coeff(0) == Approx(1.0).margin(1e-14));
    CHECK(r.coeff(1) == Approx(2.0).margin(1e-14));
    CHECK(r.coeff(2) == Approx(1.0).margin(1e-14));
}

TEST_CASE("compose with identity is exact", "[taylor]") {
    std::mt19937 rng(11);
    const DiscDomain dom = DiscDomain::standard();
    const TaylorPoly id = TaylorPoly::identity(dom, 12);
    const TaylorPoly p = random_poly(rng, dom, 12, 3.0);
    const TaylorPoly a = compose(p, id);
    const TaylorPoly b = compose(id, p, ComposeOptions::unchecked());
    for (int i = 0; i <= 12; ++i) {
        CHECK(a.coeff(i) == Approx(p.coeff(i)).margin(1e-13));
        CHECK(b.coeff(i) == Approx(p.coeff(i)).margin(1e-13));
    }
}

TEST_CASE("compose-eval homomorphism", "[taylor]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const DiscDomain dom = DiscDomain::standard();
    for (int trial = 0; trial < 10; ++trial) {
        const TaylorPoly p = random_poly(rng, dom, 20, 10.0);
        // inner map with geometrically decaying coefficients: its range is
        // contained with margin, keeping the truncation tail below 1e-9
        std::vector<double> qc(21, 0.0);
        qc[0] = dom.z0;
        double decay = dom.rho;
        for (int j = 1; j <= 20; ++j) {
            decay /= 8.0;
            qc[static_cast<size_t>(j)] = dist(rng) * decay;
        }
        const TaylorPoly q(dom, std::move(qc));
        const TaylorPoly pq = compose(p, q);
        for (int k = 0; k < 32; ++k) {
            const double x = dom.seg_lo() + (dom.seg_hi() - dom.seg_lo()) * (k + 0.5) / 32.0;
            CHECK(pq.eval_real(x) == Approx(p.eval_real(q.eval_real(x))).margin(1e-9));
        }
    }
}

TEST_CASE("compose containment violation surfaces", "[taylor]") {
    const DiscDomain dom = DiscDomain::standard();
    TaylorPoly p(dom, {0.0, 0.0, 1.0});
    TaylorPoly big(dom, {0.0, 10.0}); // range far outside the disc
    CHECK_THROWS_AS(compose(p, big), ContainmentViolation);
}

TEST_CASE("scale_arg", "[taylor]") {
    const DiscDomain dom = DiscDomain::standard();
    const TaylorPoly id = TaylorPoly::identity(dom, 8);

    const TaylorPoly neg = scale_arg(id, -0.4);
    for (int k = 0; k < 8; ++k) {
        const double x = -1.0 + 0.25 * k;
        CHECK(neg.eval_real(x) == Approx(-0.4 * x).margin(1e-13));
    }

    std::mt19937 rng(3);
    const TaylorPoly p = random_poly(rng, dom, 8, 2.0);
    const TaylorPoly same = scale_arg(p, 1.0);
    for (int i = 0; i <= 8; ++i) CHECK(same.coeff(i) == Approx(p.coeff(i)).margin(1e-13));

    TaylorPoly sq(dom, {dom.z0 * dom.z0, 2 * dom.z0 * dom.rho, dom.rho * dom.rho}); // x^2
    CHECK(scale_arg(sq, 2.0, ComposeOptions::unchecked()).eval_real(0.3) == Approx(0.36).margin(1e-13));
}

TEST_CASE("differentiate", "[taylor]") {
    const DiscDomain dom = DiscDomain::standard();
    CHECK(sup_norm(TaylorPoly::constant(dom, 5.0).derivative()) == 0.0);

    const DiscDomain origin(0.0, 1.0);
    TaylorPoly sq(origin, {0.0, 0.0, 1.0}); // x^2 about 0
    const TaylorPoly d = sq.derivative();
    CHECK(d.eval_real(0.35) == Approx(0.7).margin(1e-14));
}

TEST_CASE("sup_norm basics and norm axioms on the lattice", "[taylor]") {
    const DiscDomain dom = DiscDomain::standard();
    CHECK(sup_norm(TaylorPoly::constant(dom, 3.0)) == Approx(3.0));
    CHECK(sup_norm(PairField(TaylorPoly::constant(dom, 3.0), TaylorPoly::constant(dom, 4.0))) ==
          Approx(5.0));

    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        const TaylorPoly p = random_poly(rng, dom, 15, 2.0);
        const TaylorPoly q = random_poly(rng, dom, 15, 2.0);
        CHECK(sup_norm(p + q) <= sup_norm(p) + sup_norm(q) + 1e-12);
        CHECK(sup_norm(p * -2.5) == Approx(2.5 * sup_norm(p)).epsilon(1e-12));
    }
}

TEST_CASE("estimate_radius on geometric series", "[taylor]") {
    const DiscDomain dom = DiscDomain::standard();
    for (double factor : {0.5, 1.0, 2.0, 4.0}) {
        const double r = factor * dom.rho;
        std::vector<double> c(61);
        for (size_t n = 0; n < c.size(); ++n) c[n] = std::pow(dom.rho / r, double(n));
        const double est = estimate_radius(TaylorPoly(dom, std::move(c)));
        CHECK(est == Approx(r).epsilon(factor == 2.0 ? 0.05 : 0.10));
    }
}

TEST_CASE("estimate_radius degenerate tail", "[taylor]") {
    const DiscDomain dom = DiscDomain::standard();
    std::vector<double> c(41, 0.0);
    c[0] = 1.0;
    CHECK_THROWS_AS(estimate_radius(TaylorPoly(dom, std::move(c))), InsufficientTail);
}

TEST_CASE("projection and inclusion", "[taylor]") {
    const DiscDomain dom = DiscDomain::standard();
    const TaylorPoly p = include_iN(dom, std::vector<double>{1.0, 2.0, 3.0});
    const auto back = project_pN(p, 2);
    CHECK(back == std::vector<double>{1.0, 2.0, 3.0});

    TaylorPoly deg5(dom, {1, 2, 3, 4, 5, 6});
    CHECK(project_pN(deg5, 2) == std::vector<double>{1.0, 2.0, 3.0});

    CHECK(p.eval_real(dom.z0) == Approx(1.0).margin(0)); // include then eval at z0 gives f0
}

TEST_CASE("csv round trip is bit-exact", "[taylor]") {
    std::mt19937 rng(23);
    const TaylorPoly p = random_poly(rng, DiscDomain::standard(), 25, 7.3);
    const TaylorPoly q = taylor_from_csv(to_csv(p));
    REQUIRE(q.order() == p.order());
    REQUIRE(q.domain() == p.domain());
    for (int i = 0; i <= p.order(); ++i) CHECK(q.coeff(i) == p.coeff(i)); // exact
}

TEST_CASE("domain mismatch is rejected", "[taylor]") {
    TaylorPoly a(DiscDomain(0.0, 1.0), {1.0});
    TaylorPoly b(DiscDomain::standard(), {1.0});
    CHECK_THROWS_AS(a + b, DomainMismatch);
}
