#include <algorithm>

#include <doctest.h>

#include "iif/error.hpp"
#include "iif/resultant.hpp"
#include "iif/upoly.hpp"
#include "support.hpp"

using namespace iif;
using namespace iif::test;

namespace {
UPoly ux(const MPoly& p) { return *UPoly::from_mpoly(p, var_x()); }
}  // namespace

TEST_CASE("rationals stay canonical") {
    CHECK(make_rat(6, -4) == make_rat(-3, 2));
    CHECK(to_string(make_rat(6, -4)) == "-3/2");
    CHECK(parse_rat("0.25") == make_rat(1, 4));
    CHECK(parse_rat("-7/2") == make_rat(-7, 2));
    // A leading zero is decimal, not octal.
    CHECK(parse_rat("010") == 10);
    CHECK(parse_rat("0.010") == make_rat(1, 100));
    CHECK(factorial(5) == 120);
    CHECK(binomial(6, 2) == 15);
}

TEST_CASE("univariate gcd") {
    const MPoly x = X();
    CHECK(upoly_gcd(ux(x * x - 1), ux(x - 1)) == ux(x - 1));
    CHECK(upoly_gcd(ux(x), ux(x + 1)) == ux(MPoly(1)));
    CHECK(upoly_gcd(ux(x.pow(4) * (1 + x).pow(2)), ux(x.pow(3) * (1 + x).pow(3))) == ux(x.pow(3) * (1 + x).pow(2)));
    CHECK(upoly_gcd(UPoly(var_x()), UPoly(var_x())).is_zero());
}

TEST_CASE("rational function normalisation") {
    const MPoly x = X();
    RatFunc a = ratfunc_normalize(ux(x * x - 1), ux(x - 1));
    CHECK(a.num == ux(x + 1));
    CHECK(a.den == ux(MPoly(1)));

    RatFunc b = ratfunc_normalize(ux(2 * x), ux(MPoly(4)));
    CHECK(b.num == ux(make_rat(1, 2) * x));
    CHECK(b.den == ux(MPoly(1)));

    RatFunc c = ratfunc_normalize(UPoly(var_x()), ux(x.pow(3)));
    CHECK(c.num.is_zero());
    CHECK(c.den == ux(MPoly(1)));

    CHECK_THROWS_AS(ratfunc_normalize(ux(x), UPoly(var_x())), MathError);
}

TEST_CASE("rational roots") {
    const MPoly x = X();
    auto roots = rational_roots(ux((x - 2) * (3 * x + 1) * (x * x + 1)));
    REQUIRE(roots.size() == 2);
    CHECK(std::count(roots.begin(), roots.end(), Rat(2)) == 1);
    CHECK(std::count(roots.begin(), roots.end(), make_rat(-1, 3)) == 1);
}

TEST_CASE("resultant in y is the Sylvester determinant") {
    const MPoly x = X(), y = Y();
    // | 1 -x |
    // | 1  x | = 2x
    CHECK(resultant_y(y - x, y + x) == 2 * x);
    CHECK(resultant_y(y * y, y * y + 1) == MPoly(1));
    CHECK(resultant_y(y - x, (y - x) * (y + 1)).is_zero());
}

TEST_CASE("multivariate gcd and fractions with parameters and jets") {
    const MPoly x = X(), y = Y();
    const MPoly rho = MPoly::variable(param("rho"));
    const MPoly g0 = MPoly::variable(jet("g0", 0));
    MPoly a = x.pow(4) * (1 + x).pow(2) * (y + rho * x);
    MPoly b = x.pow(3) * (1 + x).pow(3) * (y + rho * x) * (g0 + y);
    CHECK(gcd(a, b) == (x.pow(3) * (1 + x).pow(2) * (y + rho * x)).monic());

    Frac f(a, b);
    CHECK(f == Frac(x, (1 + x) * (g0 + y)));
    CHECK(Frac(1) / Frac(x - 1) + Frac(1) / Frac(x + 1) == Frac(2 * x, x * x - 1));
    CHECK_THROWS_AS(Frac(x, MPoly()), MathError);
}

TEST_CASE("square-free decomposition") {
    const MPoly x = X(), y = Y();
    auto parts = squarefree_factors(x.pow(3) * (y - 1).pow(2) * (x + 1).pow(3));
    MPoly back(1);
    for (const auto& [f, m] : parts) back *= f.pow(m);
    CHECK(gcd(back, x.pow(3) * (y - 1).pow(2) * (x + 1).pow(3)) == back.monic());
    for (const auto& [f, m] : parts)
        if (m == 2) CHECK(f.monic() == (y - 1).monic());
}

TEST_CASE("canonical text form") {
    const MPoly x = X();
    CHECK(to_string(make_rat(3, 2) * x * x - x + 1) == "3/2*x^2 - x + 1");
    CHECK(to_string(F("3/2*x^2 - x + 1")) == "3/2*x^2 - x + 1");
    CHECK(F("rho*x - 2") == F("-2 + x*rho"));
}
