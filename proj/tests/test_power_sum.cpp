#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "memslab/power_sum.hpp"

#include <cmath>
#include <stdexcept>

using namespace memslab;

TEST_CASE("canonical form merges, sorts and drops zeros") {
    PowerSum p({{rat(1), rat(2)}, {rat(3), rat(0)}, {rat(-1), rat(2)}, {rat(2), rat(2)}});
    REQUIRE(p.terms().size() == 2);
    CHECK(p.terms()[0].exponent == rat(0));
    CHECK(p.terms()[0].coeff == rat(3));
    CHECK(p.terms()[1].exponent == rat(2));
    CHECK(p.terms()[1].coeff == rat(2));

    PowerSum z({{rat(1), rat(1)}, {rat(-1), rat(1)}});
    CHECK(z.is_zero());
}

TEST_CASE("radial Laplacian of a fractional power, N = 9") {
    // Delta r^{4/3} = (4/3)(4/3 + 7) r^{-2/3} = (100/9) r^{-2/3}
    PowerSum p = PowerSum::monomial(rat(1), rat(4, 3));
    PowerSum lap = p.laplacian(9);
    REQUIRE(lap.terms().size() == 1);
    CHECK(lap.terms()[0].coeff == rat(100, 9));
    CHECK(lap.terms()[0].exponent == rat(-2, 3));
}

TEST_CASE("bilaplacian of -r^{4/3} at N = 9 reproduces the blow-up constant") {
    // Delta^2 (-r^{4/3}) = (3800/81) r^{-8/3}; 3800/81 = 8(N-2/3)(N-8/3)/9.
    PowerSum p = PowerSum::monomial(rat(-1), rat(4, 3));
    PowerSum bil = p.bilaplacian(9);
    REQUIRE(bil.terms().size() == 1);
    CHECK(bil.terms()[0].coeff == rat(3800, 81));
    CHECK(bil.terms()[0].exponent == rat(-8, 3));
}

TEST_CASE("bilaplacian of -r^{4/3} matches 8(N-2/3)(N-8/3)/9 for 5 <= N <= 40") {
    for (int n = 5; n <= 40; ++n) {
        PowerSum bil = PowerSum::monomial(rat(-1), rat(4, 3)).bilaplacian(n);
        const Rational expected = rat(8) * (rat(n) - rat(2, 3)) * (rat(n) - rat(8, 3)) / 9;
        REQUIRE(bil.terms().size() == 1);
        CHECK(bil.terms()[0].coeff == expected);
        CHECK(bil.terms()[0].exponent == rat(-8, 3));
    }
}

TEST_CASE("laplacian kills constants and is exact on r^2") {
    CHECK(PowerSum::constant(rat(7)).laplacian(6).is_zero());
    PowerSum q = PowerSum::monomial(rat(1), rat(2)).laplacian(6);
    REQUIRE(q.terms().size() == 1);
    CHECK(q.terms()[0].coeff == rat(12));  // 2N
    CHECK(q.terms()[0].exponent == rat(0));
}

TEST_CASE("laplacian is linear") {
    PowerSum a({{rat(2), rat(3)}, {rat(-1), rat(1, 2)}});
    PowerSum b({{rat(5), rat(3)}, {rat(1), rat(-2)}});
    PowerSum lhs = (a + b.scaled(rat(3))).laplacian(7);
    PowerSum rhs = a.laplacian(7) + b.laplacian(7).scaled(rat(3));
    PowerSum diff = lhs - rhs;
    CHECK(diff.is_zero());
}

TEST_CASE("derivative and product") {
    PowerSum p({{rat(1), rat(2)}, {rat(1), rat(0)}});  // r^2 + 1
    PowerSum d = p.derivative();
    REQUIRE(d.terms().size() == 1);
    CHECK(d.terms()[0].coeff == rat(2));
    PowerSum sq = p * p;  // r^4 + 2r^2 + 1
    REQUIRE(sq.terms().size() == 3);
    CHECK(sq.terms()[2].exponent == rat(4));
    CHECK(sq.terms()[1].coeff == rat(2));
}

TEST_CASE("eval agrees with direct arithmetic and handles fractional powers") {
    PowerSum p({{rat(3, 2), rat(4, 3)}, {rat(-1, 4), rat(-1, 2)}});
    for (double r : {1e-6, 1e-3, 0.1, 0.5, 0.999, 1.0}) {
        const double expect = 1.5 * std::pow(r, 4.0 / 3.0) - 0.25 * std::pow(r, -0.5);
        CHECK(p.eval(r) == doctest::Approx(expect).epsilon(1e-14));
    }
    CHECK_THROWS_AS(p.eval(0.0), std::domain_error);
    CHECK_THROWS_AS(p.eval(-0.5), std::domain_error);
}

TEST_CASE("exact value at one and leading term at zero") {
    PowerSum p({{rat(5), rat(2)}, {rat(-1), rat(-4)}, {rat(1, 3), rat(0)}});
    CHECK(p.eval_at_one() == rat(5) - rat(1) + rat(1, 3));
    const auto lead = p.leading_term_at_zero();
    CHECK(lead.exponent == rat(-4));
    CHECK(lead.coeff == rat(-1));
    CHECK_THROWS_AS(PowerSum().leading_term_at_zero(), std::logic_error);
}
