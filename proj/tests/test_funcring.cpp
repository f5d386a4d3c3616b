#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pmc/funcring.hpp"
#include "pmc/rng.hpp"

using namespace pmc;

namespace {

Chart full_minus(std::initializer_list<Point> pts) {
    return Chart("U", std::set<Point>(pts));
}

// Random function with poles confined to the chart's excluded points and
// fully rational zero set, so divisor bookkeeping can be checked exactly.
RationalFunction random_rf(Rng& rng, const Chart& home, int maxdeg = 3) {
    Poly num = Poly(rng.nonzero_rational());
    int nd = static_cast<int>(rng.range(0, maxdeg));
    for (int i = 0; i < nd; ++i) num = num * Poly::linear_root(rng.rational(3, 2));
    Poly den = Poly::one();
    for (const auto& p : home.excluded()) {
        if (p.is_infinity()) continue;
        int m = static_cast<int>(rng.range(0, 2));
        den = den * Poly::linear_root(p.value()).pow(m);
    }
    return RationalFunction(num, den, home);
}

} // namespace

TEST_CASE("arithmetic basics") {
    Chart U = full_minus({Point::of(1), Point::infinity()});
    auto x = RationalFunction::x(U);
    auto zero = RationalFunction::constant(Rational(0), U);
    auto one = RationalFunction::constant(Rational(1), U);

    CHECK(x + (-x) == zero);
    auto xm1 = parse_rational_function("x-1", U);
    auto inv = RationalFunction(Poly::one(), Poly::linear_root(Rational(1)), U);
    CHECK(xm1 * inv == one);
    CHECK(parse_rational_function("(x+1)(x-1)", U) == parse_rational_function("x^2-1", U));

    Chart V = full_minus({Point::of(0)});
    CHECK_THROWS_AS((void)(x + RationalFunction::x(V)), chart_mismatch);
}

TEST_CASE("is_unit") {
    Chart U0inf = full_minus({Point::of(0), Point::infinity()});
    CHECK(RationalFunction::x(U0inf).is_unit());

    Chart U1 = full_minus({Point::of(1)});
    CHECK_FALSE(RationalFunction::x(U1).is_unit());

    Chart U2inf = full_minus({Point::of(2), Point::infinity()});
    auto f = parse_rational_function("(x-2)^3", U2inf);
    CHECK(f.is_unit());
}

TEST_CASE("vanishing_order") {
    Chart U = full_minus({Point::infinity()});
    auto f = parse_rational_function("(x-1)^2", U);
    CHECK(f.vanishing_order(Point::of(1)) == 2);
    auto c = parse_rational_function("5", U);
    CHECK(c.vanishing_order(Point::of(7)) == 0);
    CHECK(c.vanishing_order(Point::infinity()) == 0);
    CHECK(RationalFunction::x(U).vanishing_order(Point::infinity()) == -1);
    CHECK_THROWS(RationalFunction::constant(Rational(0), U).vanishing_order(Point::of(0)));
}

TEST_CASE("laurent_split") {
    Chart O = full_minus({Point::of(0), Point::infinity()});
    auto f = parse_rational_function("x + 1/x", O);
    auto [p, m] = f.laurent_split();
    CHECK(p == RationalFunction::x(O));
    CHECK(m == parse_rational_function("1/x", O));

    auto [p2, m2] = parse_rational_function("7", O).laurent_split();
    CHECK(p2 == parse_rational_function("7", O));
    CHECK(m2.is_zero());

    auto g = parse_rational_function("x^-3 + 2x^-1 + x^2", O);
    auto [p3, m3] = g.laurent_split();
    CHECK(p3 == parse_rational_function("x^2", O));
    CHECK(m3 == parse_rational_function("x^-3 + 2x^-1", O));

    CHECK_THROWS(parse_rational_function("1/(x-1)",
                 full_minus({Point::of(0), Point::of(1), Point::infinity()}))
                     .restricted(O));
}

TEST_CASE("evaluate") {
    Chart U = full_minus({Point::of(1)});
    auto f = parse_rational_function("(x^2-1)/(x-1)", U);
    CHECK(f.evaluate(Point::of(2)) == Rational(3));

    Chart O = full_minus({Point::of(0)});
    CHECK_THROWS_AS(parse_rational_function("1/x", O).evaluate(Point::of(0)), pole_error);

    Chart V = full_minus({Point::of(-3)});
    CHECK(parse_rational_function("(2x+1)/(x+3)", V).evaluate(Point::infinity()) == Rational(2));
    CHECK(parse_rational_function("1/(x+3)", V).evaluate(Point::infinity()) == Rational(0));
}

TEST_CASE("ring laws on random triples") {
    Rng rng(42);
    Chart U = full_minus({Point::of(0), Point::of(1), Point::infinity()});
    for (int it = 0; it < 60; ++it) {
        auto f = random_rf(rng, U), g = random_rf(rng, U), h = random_rf(rng, U);
        CHECK((f + g) + h == f + (g + h));
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK(f + g == g + f);
        CHECK(f * g == g * f);
    }
}

TEST_CASE("unit and order multiplicativity") {
    Rng rng(7);
    Chart U = full_minus({Point::of(0), Point::of(2), Point::infinity()});
    for (int it = 0; it < 60; ++it) {
        auto f = random_rf(rng, U), g = random_rf(rng, U);
        CHECK(((f * g).is_unit()) == (f.is_unit() && g.is_unit()));
        Point p = (it % 2) ? Point::of(rng.range(-2, 2)) : Point::infinity();
        if (!f.is_zero() && !g.is_zero())
            CHECK((f * g).vanishing_order(p) == f.vanishing_order(p) + g.vanishing_order(p));
    }
}

TEST_CASE("principal divisor has degree zero") {
    // Functions built from rational linear factors: every zero and pole is
    // rational, so the full divisor is visible to the test.
    Rng rng(11);
    Chart U = full_minus({Point::of(0), Point::of(1), Point::infinity()});
    for (int it = 0; it < 40; ++it) {
        auto f = random_rf(rng, U);
        if (f.is_zero()) continue;
        std::set<Rational> candidates;
        for (const auto& c : {Rational(0), Rational(1)}) candidates.insert(c);
        for (long long k = -9; k <= 9; ++k)
            for (long long d = 1; d <= 4; ++d) candidates.insert(Rational(k, d));
        int total = f.vanishing_order(Point::infinity());
        for (const auto& c : candidates) total += f.vanishing_order(Point(c));
        CHECK(total == 0);
    }
}

TEST_CASE("laurent_split round trip") {
    Rng rng(3);
    Chart O = full_minus({Point::of(0), Point::infinity()});
    for (int it = 0; it < 40; ++it) {
        // Random Laurent polynomial.
        Poly num(std::vector<Rational>{});
        std::vector<Rational> cs;
        int lo = static_cast<int>(rng.range(0, 4));
        int hi = static_cast<int>(rng.range(0, 5));
        for (int i = 0; i < lo + hi + 1; ++i) cs.push_back(rng.rational());
        RationalFunction f(Poly(cs), Poly::monomial(lo, Rational(1)), O);
        auto [p, m] = f.laurent_split();
        CHECK(p + m == f);
    }
}

TEST_CASE("serialization round trip") {
    Rng rng(5);
    Chart U = full_minus({Point::of(0), Point::of(1), Point::infinity()});
    for (int it = 0; it < 50; ++it) {
        auto f = random_rf(rng, U);
        auto back = parse_rational_function(f.str(), U);
        CHECK(back == f);
    }
    CHECK(parse_rational_function("(x^2-1)/(x-1)", U).str() == "x+1");
}
