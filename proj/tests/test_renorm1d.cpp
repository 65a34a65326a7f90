#include <catch2/catch.hpp>
#include <random>

#include "qprenorm/flm.hpp"
#include "qprenorm/renorm_fixed_point.hpp"

using namespace qpr;

namespace {

UnimodalMap fixed_point_60() {
    static const UnimodalMap phi =
        newton_fixed_point(UnimodalMap::newton_seed(DiscDomain::standard(), 60));
    return phi;
}

TaylorPoly random_direction(std::mt19937& rng, const DiscDomain& dom, int order) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> c(static_cast<size_t>(order) + 1);
    for (auto& x : c) x = dist(rng);
    TaylorPoly p(dom, std::move(c));
    return p * (1.0 / sup_norm(p));
}

} // namespace

TEST_CASE("newton fixed point", "[renorm1d]") {
    const UnimodalMap phi = fixed_point_60();
    CHECK(sup_norm(renormalize(phi).psi - phi.psi) < 1e-11);
    CHECK(phi.psi.eval_real(0.0) == Approx(1.0).margin(1e-12));
    CHECK(phi.a() == Approx(-0.3995353).margin(1e-6));
    CHECK(1.0 / phi.a() == Approx(-2.5029079).margin(1e-5));

    // published low-order coefficients about zero at this normalization
    const TaylorPoly d2 = phi.psi.derivative().derivative();
    const TaylorPoly d4 = d2.derivative().derivative();
    CHECK(d2.eval_real(0.0) / 2.0 == Approx(-1.527632997).margin(2e-6));
    CHECK(d4.eval_real(0.0) / 24.0 == Approx(0.104815194).margin(2e-6));
}

TEST_CASE("fixed point properties", "[renorm1d]") {
    const UnimodalMap phi = fixed_point_60();

    // phi is even: differentiate at 0
    CHECK(std::abs(phi.psi.derivative().eval_real(0.0)) < 1e-9);

    // a-rescaled fixed point equation pointwise: (1/a) phi(phi(a x)) = phi(x)
    const double a = phi.a();
    for (int k = 0; k < 32; ++k) {
        const double x = -1.2 + 2.8 * k / 31.0;
        const double lhs = phi.psi.eval_real(phi.psi.eval_real(a * x)) / a;
        CHECK(lhs == Approx(phi.psi.eval_real(x)).margin(1e-9));
    }
}

TEST_CASE("domain check", "[renorm1d]") {
    const UnimodalMap phi = fixed_point_60();
    CHECK(domain_check(phi, 0.01).ok());

    // psi(x) = 1 + x has a = 2 > 0
    TaylorPoly onepx = TaylorPoly::identity(DiscDomain::standard(), 2) +
                       TaylorPoly::constant(DiscDomain::standard(), 1.0, 2);
    CHECK_FALSE(domain_check(UnimodalMap(onepx)).a_negative);

    // rescaled logistic in the renormalizable window (needs psi(1) < 0,
    // i.e. alpha > 1 + sqrt(5))
    const UnimodalMap logi = UnimodalMap::quadratic(DiscDomain::standard(),
                                                    FLMFamily::lambda(3.5), 20);
    CHECK(domain_check(logi).ok());
}

TEST_CASE("renormalize contracts the superstable index", "[renorm1d]") {
    const UnimodalMap phi = fixed_point_60();
    CHECK(sup_norm(renormalize(phi).psi - phi.psi) < 1e-8);

    // on Sigma_1 the rescaling degenerates
    const UnimodalMap sigma1 = UnimodalMap::quadratic(DiscDomain::standard(), 1.0, 20);
    CHECK(std::abs(sigma1.a()) < 1e-12);
    CHECK_THROWS_AS(renormalize(sigma1), DegenerateScaling);

    // Sigma_2 -> Sigma_1: renormalized map closes the critical orbit in 2 steps
    const double a2 = superstable_chain(FLMFamily::A(), 2).back();
    const UnimodalMap s2 = UnimodalMap::quadratic(DiscDomain::standard(),
                                                  FLMFamily::lambda(a2), 40);
    const UnimodalMap r = renormalize(s2);
    double x = 0.0;
    for (int i = 0; i < 2; ++i) x = r.psi.eval_real(x);
    CHECK(std::abs(x) < 1e-8);
}

TEST_CASE("d_renormalize against central differences", "[renorm1d]") {
    const UnimodalMap phi = fixed_point_60();
    const ModeAction act(phi);
    std::mt19937 rng(17);
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        const TaylorPoly u = random_direction(rng, phi.domain(), phi.order());
        const UnimodalMap plus(phi.psi + u * h), minus(phi.psi - u * h);
        const TaylorPoly fd =
            (renormalize(plus).psi - renormalize(minus).psi) * (1.0 / (2.0 * h));
        const TaylorPoly an = act.d_renormalize(u);
        const double scale = sup_norm(an);
        for (int k = 0; k < 32; ++k) {
            const double x = -1.2 + 2.8 * k / 31.0;
            CHECK(an.eval_real(x) == Approx(fd.eval_real(x)).margin(1e-6 * std::max(1.0, scale)));
        }
    }
    // zero direction
    const TaylorPoly zero = TaylorPoly::constant(phi.domain(), 0.0, phi.order());
    CHECK(sup_norm(act.d_renormalize(zero)) == 0.0);
}

TEST_CASE("iterated derivative recovers the unstable eigenvalue", "[renorm1d]") {
    const UnimodalMap phi = fixed_point_60();
    const ModeAction act(phi);
    std::mt19937 rng(99);

    // On the full coefficient space the dominant eigenvalue is the dilation
    // coordinate mode 1/a^2:
    TaylorPoly u = random_direction(rng, phi.domain(), phi.order());
    double rayleigh = 0;
    for (int i = 0; i < 40; ++i) {
        const TaylorPoly v = act.d_renormalize(u);
        rayleigh = sup_norm(v) / sup_norm(u);
        u = v * (1.0 / sup_norm(v));
    }
    CHECK(rayleigh == Approx(1.0 / (phi.a() * phi.a())).epsilon(1e-3));

    // The subspace {u(0) = 0} (tangent to the normalization) is invariant
    // and excludes the coordinate modes; there the iteration picks up delta.
    TaylorPoly w = random_direction(rng, phi.domain(), phi.order());
    auto project = [&](const TaylorPoly& p) {
        return p - TaylorPoly::constant(phi.domain(), p.eval_real(0.0), phi.order());
    };
    w = project(w);
    for (int i = 0; i < 60; ++i) {
        const TaylorPoly v = project(act.d_renormalize(w));
        rayleigh = sup_norm(v) / sup_norm(w);
        w = v * (1.0 / sup_norm(v));
    }
    CHECK(rayleigh == Approx(4.66920).margin(1e-4));
}

TEST_CASE("feigenbaum spectrum structure", "[renorm1d]") {
    const UnimodalMap phi = fixed_point_60();
    const RenormConstants rc = feigenbaum_spectrum(phi);
    CHECK(rc.delta_feig == Approx(4.669201609).margin(1e-7));

    // unstable eigenvector is even (check as a function; the shifted basis
    // mixes parities coefficient-wise)
    double odd = 0;
    for (int k = 1; k < 16; ++k) {
        const double x = 0.08 * k;
        odd = std::max(odd, std::abs(rc.unstable_eigvec.eval_real(x) -
                                     rc.unstable_eigvec.eval_real(-x)));
    }
    CHECK(odd / sup_norm(rc.unstable_eigvec) < 1e-7);
}

TEST_CASE("feigenbaum spectrum stable across orders", "[renorm1d]") {
    const UnimodalMap p60 = fixed_point_60();
    const UnimodalMap p80 =
        newton_fixed_point(UnimodalMap::newton_seed(DiscDomain::standard(), 80));
    const UnimodalMap p100 =
        newton_fixed_point(UnimodalMap::newton_seed(DiscDomain::standard(), 100));
    const double d60 = feigenbaum_spectrum(p60).delta_feig;
    const double d80 = feigenbaum_spectrum(p80).delta_feig;
    const double d100 = feigenbaum_spectrum(p100).delta_feig;
    CHECK(d60 == Approx(d100).margin(1e-6));
    CHECK(d80 == Approx(d100).margin(1e-6));
}

TEST_CASE("h0 inclusion check", "[renorm1d]") {
    const UnimodalMap phi = fixed_point_60();
    const H0Report rep = check_h0_inclusion(phi, DiscDomain::standard());
    CHECK(rep.margin_scaling > 0);
    CHECK(rep.margin_image > 0);
    CHECK(rep.interior_ok);

    // stability under doubled sampling
    const H0Report rep2 = check_h0_inclusion(phi, DiscDomain::standard(), 8192);
    CHECK(rep2.margin_image == Approx(rep.margin_image).epsilon(0.10));

    CHECK_THROWS_AS(check_h0_inclusion(phi, DiscDomain(0.0, 10.0)), InclusionFailure);

    // a W inside W analytically: |a| rho + |a z0 - z0| < rho
    const double a = phi.a();
    CHECK(std::abs(a) * 1.5 + std::abs(a * 0.2 - 0.2) < 1.5);
}

TEST_CASE("superstable parameters", "[renorm1d]") {
    const MapFamily1D fam = FLMFamily::A().map1d();
    const double a1 = superstable_parameter(fam, 1, 3.1, 3.3);
    CHECK(a1 == Approx(1.0 + std::sqrt(5.0)).margin(1e-10));

    // n = 0: fixed critical point, 1 - lambda = 0 has no solution in
    // (2,4)x... use the period-1 closure F(0)=0 after one step from 0:
    // F(0) = 1, never 0; period-1 case applies to families with f(alpha,0)=0
    // solutions. Checked via a synthetic family:
    MapFamily1D lin;
    lin.f = [](double a, double x) { return x * x + a; };
    lin.df_dalpha = [](double, double) { return 1.0; };
    lin.df_dx = [](double, double x) { return 2.0 * x; };
    CHECK(superstable_parameter(lin, 0, -1.0, 1.0) == Approx(0.0).margin(1e-12));

    const auto chain = superstable_chain(FLMFamily::A(), 9);
    for (int n = 5; n <= 8; ++n) {
        const double ratio = (chain[n - 1] - chain[n - 2]) / (chain[n] - chain[n - 1]);
        CHECK(ratio == Approx(4.669).margin(1e-2));
    }

    CHECK_THROWS_AS(superstable_parameter(fam, 1, 3.4, 3.45), BracketMiss);
}

TEST_CASE("two cycle", "[renorm1d]") {
    // Sigma_1 map: superstable cycle is exactly (0, 1)
    const UnimodalMap s1 = UnimodalMap::quadratic(DiscDomain::standard(), 1.0, 30);
    const auto c1 = two_cycle(s1);
    CHECK(c1[0] == Approx(0.0).margin(1e-10));
    CHECK(c1[1] == Approx(1.0).margin(1e-10));

    // the fixed point has a repelling 2-cycle
    const UnimodalMap phi = fixed_point_60();
    const auto c2 = two_cycle(phi);
    const TaylorPoly d = phi.psi.derivative();
    CHECK(std::abs(d.eval_real(c2[0]) * d.eval_real(c2[1])) > 1.0);

    // quadratic with explicit closed-form cycle: 1 - x^2 (on its domain the
    // 2-cycle solves x^4 - 2x^2 + x = x(x-1)(x^2+x-1); the nontrivial pair is
    // the golden-ratio pair)
    const UnimodalMap q = UnimodalMap::quadratic(DiscDomain::standard(), 1.0, 10);
    const auto cq = two_cycle(q);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    // cycle {0,1} is superstable; nearest-to-critical tie-break selects it.
    // The golden pair {-g, 1/g...}: check by direct substitution instead.
    CHECK(q.psi.eval_real(q.psi.eval_real(cq[0])) == Approx(cq[0]).margin(1e-9));
    (void)g;
}
