#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pmc/jets.hpp"
#include "pmc/rng.hpp"

using namespace pmc;

namespace {

Chart overlap01() {
    return Chart("U01", {Point::of(0), Point::infinity()});
}

RationalFunction random_rf(Rng& rng, const Chart& home) {
    Poly num = Poly(rng.nonzero_rational());
    int nd = static_cast<int>(rng.range(0, 2));
    for (int i = 0; i < nd; ++i) num = num * Poly::linear_root(rng.rational(3, 2));
    Poly den = Poly::one();
    for (const auto& p : home.excluded()) {
        if (p.is_infinity()) continue;
        den = den * Poly::linear_root(p.value()).pow(static_cast<int>(rng.range(0, 2)));
    }
    return RationalFunction(num, den, home);
}

RationalFunction random_unit(Rng& rng, const Chart& home) {
    // Units on a chart excluding {0, inf}: c x^m.
    Poly num = Poly(rng.nonzero_rational());
    int m = static_cast<int>(rng.range(-2, 2));
    if (m >= 0) return RationalFunction(num * Poly::monomial(m, Rational(1)), Poly::one(), home);
    return RationalFunction(num, Poly::monomial(-m, Rational(1)), home);
}

JetElement random_jet(Rng& rng, const Chart& home, int order) {
    std::vector<RationalFunction> c;
    for (int i = 0; i < order; ++i) c.push_back(random_rf(rng, home));
    return JetElement(home, std::move(c));
}

JetAutomorphism random_auto(Rng& rng, const Chart& home, int n) {
    JetElement mu = random_jet(rng, home, n - 1);
    std::vector<RationalFunction> nu;
    nu.push_back(random_unit(rng, home));
    for (int i = 1; i < n - 1; ++i) nu.push_back(random_rf(rng, home));
    return JetAutomorphism(mu, JetElement(home, std::move(nu)));
}

} // namespace

TEST_CASE("apply basics") {
    Chart U = overlap01();
    for (int n : {2, 3, 4}) {
        auto id = JetAutomorphism::identity(U, n);
        Rng rng(100 + n);
        for (int it = 0; it < 10; ++it) {
            auto g = random_jet(rng, U, n);
            CHECK(id.apply(g) == g);
        }
    }
}

TEST_CASE("n=2 matrix action") {
    Chart U = overlap01();
    Rng rng(17);
    for (int it = 0; it < 30; ++it) {
        auto mu = random_rf(rng, U);
        auto nu = random_unit(rng, U);
        auto phi = JetAutomorphism::order2(mu, nu);
        auto a = random_rf(rng, U);
        auto b = random_rf(rng, U);
        JetElement g(U, {a, b});
        JetElement expect(U, {a, mu * a.derivative() + nu * b});
        CHECK(phi.apply(g) == expect);
    }
}

TEST_CASE("apply to x with jet mu") {
    Chart U = overlap01();
    auto mu0 = parse_rational_function("3", U);
    auto mu1 = parse_rational_function("x", U);
    JetAutomorphism phi(JetElement(U, {mu0, mu1}),
                        JetElement::constant(Rational(1), U, 2));
    auto img = phi.apply(JetElement::x(U, 3));
    JetElement expect(U, {RationalFunction::x(U), mu0, mu1});
    CHECK(img == expect);
}

TEST_CASE("apply is a ring homomorphism") {
    Chart U = overlap01();
    for (int n : {2, 3, 4}) {
        Rng rng(200 + n);
        for (int it = 0; it < 25; ++it) {
            auto phi = random_auto(rng, U, n);
            auto g = random_jet(rng, U, n);
            auto h = random_jet(rng, U, n);
            CHECK(phi.apply(g * h) == phi.apply(g) * phi.apply(h));
            CHECK(phi.apply(g + h) == phi.apply(g) + phi.apply(h));
            CHECK(phi.apply(g).restrict_to_C() == g.restrict_to_C());
        }
    }
}

TEST_CASE("composition law n=2") {
    Chart U = overlap01();
    Rng rng(31);
    for (int it = 0; it < 40; ++it) {
        auto mu = random_rf(rng, U), mup = random_rf(rng, U);
        auto nu = random_unit(rng, U), nup = random_unit(rng, U);
        auto phi = JetAutomorphism::order2(mu, nu);
        auto phip = JetAutomorphism::order2(mup, nup);
        auto comp = compose(phip, phi);
        CHECK(comp.mu().coeff(0) == mup + nup * mu);
        CHECK(comp.nu().coeff(0) == nu * nup);
    }
}

TEST_CASE("compose agrees with sequential application") {
    Chart U = overlap01();
    for (int n : {2, 3, 4}) {
        Rng rng(300 + n);
        for (int it = 0; it < 15; ++it) {
            auto p1 = random_auto(rng, U, n);
            auto p2 = random_auto(rng, U, n);
            auto comp = compose(p2, p1);
            // Oracle: sequential application on a generator set and products.
            std::vector<JetElement> gens = {
                JetElement::x(U, n), JetElement::t(U, n),
                JetElement::x(U, n) * JetElement::t(U, n),
                JetElement::x(U, n) * JetElement::x(U, n),
                random_jet(rng, U, n)};
            for (const auto& g : gens) CHECK(comp.apply(g) == p2.apply(p1.apply(g)));
        }
        // Associativity.
        Rng rng2(400 + n);
        auto a = random_auto(rng2, U, n), b = random_auto(rng2, U, n), c = random_auto(rng2, U, n);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("invert") {
    Chart U = overlap01();
    auto id2 = JetAutomorphism::identity(U, 2);
    CHECK(invert(id2) == id2);

    Rng rng(55);
    for (int it = 0; it < 20; ++it) {
        auto mu = random_rf(rng, U);
        auto nu = random_unit(rng, U);
        auto phi = JetAutomorphism::order2(mu, nu);
        auto inv = invert(phi);
        auto one = RationalFunction::constant(Rational(1), U);
        CHECK(inv.mu().coeff(0) == -(mu / nu));
        CHECK(inv.nu().coeff(0) == one / nu);
    }
    for (int n : {3, 4}) {
        Rng rng2(500 + n);
        for (int it = 0; it < 10; ++it) {
            auto phi = random_auto(rng2, U, n);
            auto inv = invert(phi);
            auto idn = JetAutomorphism::identity(U, n);
            CHECK(compose(inv, phi) == idn);
            CHECK(compose(phi, inv) == idn);
            for (const auto& g : {JetElement::x(U, n), JetElement::t(U, n),
                                  JetElement::x(U, n) * JetElement::t(U, n)})
                CHECK(inv.apply(phi.apply(g)) == g);
        }
    }
}

TEST_CASE("jet_invert") {
    Chart U = overlap01();
    auto one_plus_t = JetElement::constant(Rational(1), U, 3) + JetElement::t(U, 3);
    JetElement expect(U, {parse_rational_function("1", U), parse_rational_function("-1", U),
                          parse_rational_function("1", U)});
    CHECK(one_plus_t.inverse() == expect);

    auto x_plus_t = JetElement::x(U, 2) + JetElement::t(U, 2);
    JetElement e2(U, {parse_rational_function("1/x", U), parse_rational_function("-1/x^2", U)});
    CHECK(x_plus_t.inverse() == e2);
    CHECK(x_plus_t * x_plus_t.inverse() == JetElement::constant(Rational(1), U, 2));

    CHECK_THROWS(JetElement::t(U, 3).inverse());
}

TEST_CASE("restrict_to_C") {
    Chart U = overlap01();
    auto g = JetElement::x(U, 2) + JetElement::t(U, 2) * Rational(3);
    CHECK(g.restrict_to_C() == RationalFunction::x(U));
    CHECK(JetElement::t(U, 2).restrict_to_C().is_zero());
    CHECK(JetElement::constant(Rational(5), U, 2).restrict_to_C() ==
          RationalFunction::constant(Rational(5), U));
}

TEST_CASE("matrix homomorphism for n=2") {
    // matrix(compose) = matrix product: mu'' = mu' + nu' mu, nu'' = nu nu',
    // checked together with action agreement on random order-2 jets.
    Chart U = overlap01();
    Rng rng(77);
    for (int it = 0; it < 30; ++it) {
        auto p1 = JetAutomorphism::order2(random_rf(rng, U), random_unit(rng, U));
        auto p2 = JetAutomorphism::order2(random_rf(rng, U), random_unit(rng, U));
        auto comp = compose(p2, p1);
        auto g = random_jet(rng, U, 2);
        CHECK(comp.apply(g) == p2.apply(p1.apply(g)));
        CHECK(comp.mu().coeff(0) == p2.mu().coeff(0) + p2.nu().coeff(0) * p1.mu().coeff(0));
        CHECK(comp.nu().coeff(0) == p1.nu().coeff(0) * p2.nu().coeff(0));
    }
}

TEST_CASE("check_cochain") {
    // Three charts around 0, 1, inf.
    std::vector<Chart> charts = {Chart("U0", {Point::of(0)}),
                                 Chart("U1", {Point::of(1)}),
                                 Chart("U2", {Point::infinity()})};
    const int n = 2;

    std::map<std::pair<int, int>, JetAutomorphism> psi;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) {
                Chart ov = charts[i].intersect(charts[j]);
                psi.emplace(std::make_pair(i, j), JetAutomorphism::identity(ov, n));
            }
    CHECK(check_cochain(charts, psi).ok);

    // Coboundary-built cocycle: Psi_ij = Phi_j o Phi_i^{-1} telescopes.
    Rng rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<JetAutomorphism> phis;
        for (int j = 0; j < 3; ++j) {
            // Plain chartwise automorphisms (unit nu, polynomial mu).
            Poly m = Poly(rng.rational());
            for (int d = 0; d < 2; ++d) m = m * Poly::linear_root(rng.rational(2, 1));
            phis.push_back(JetAutomorphism::order2(
                RationalFunction(m, Poly::one(), charts[static_cast<size_t>(j)]),
                RationalFunction::constant(rng.nonzero_rational(), charts[static_cast<size_t>(j)])));
        }
        std::map<std::pair<int, int>, JetAutomorphism> cob;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) {
                    Chart ov = charts[static_cast<size_t>(i)].intersect(charts[static_cast<size_t>(j)]);
                    cob.emplace(std::make_pair(i, j),
                                compose(phis[static_cast<size_t>(j)].restricted(ov),
                                        invert(phis[static_cast<size_t>(i)].restricted(ov))));
                }
        CHECK(check_cochain(charts, cob).ok);
    }

    // A deliberate violation is reported with its triple.
    auto bad = psi;
    Chart ov01 = charts[0].intersect(charts[1]);
    bad.erase({0, 1});
    bad.emplace(std::make_pair(0, 1),
                JetAutomorphism::order2(RationalFunction::x(ov01),
                                        RationalFunction::constant(Rational(1), ov01)));
    bad.erase({1, 0});
    bad.emplace(std::make_pair(1, 0),
                invert(JetAutomorphism::order2(RationalFunction::x(ov01),
                                               RationalFunction::constant(Rational(1), ov01))));
    auto rep = check_cochain(charts, bad);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.violations.empty());

    // Two charts, one transition: vacuous triples.
    std::vector<Chart> two = {charts[0], charts[2]};
    Chart ov = two[0].intersect(two[1]);
    auto a = JetAutomorphism::order2(RationalFunction::x(ov),
                                     RationalFunction::constant(Rational(2), ov));
    std::map<std::pair<int, int>, JetAutomorphism> m2;
    m2.emplace(std::make_pair(0, 1), a);
    m2.emplace(std::make_pair(1, 0), invert(a));
    CHECK(check_cochain(two, m2).ok);
}
