#include <doctest.h>

#include "iif/error.hpp"
#include "iif/series.hpp"
#include "support.hpp"

using namespace iif;
using namespace iif::test;

namespace {

Frac poly(PolyFamily f, int n) { return Frac(orthopoly(f, n).to_mpoly()); }

}  // namespace

TEST_CASE("orthogonal polynomial recurrences") {
    CHECK(poly(PolyFamily::Hermite, 2) == F("4*x^2 - 2"));
    CHECK(poly(PolyFamily::ChebyshevT, 0) == F("1"));
    CHECK(poly(PolyFamily::Legendre, 2) == F("(3*x^2 - 1)/2"));
    CHECK(poly(PolyFamily::Hermite, 5) == F("32*x^5 - 160*x^3 + 120*x"));
    CHECK(poly(PolyFamily::ChebyshevT, 4) == F("8*x^4 - 8*x^2 + 1"));
    CHECK(poly(PolyFamily::Legendre, 3) == F("(5*x^3 - 3*x)/2"));

    auto table = orthopoly_table(PolyFamily::Legendre, 8);
    REQUIRE(table.size() == 9);
    for (int n = 0; n <= 8; ++n) CHECK(table[static_cast<std::size_t>(n)] == orthopoly(PolyFamily::Legendre, n));
    // H_n' = 2n H_{n-1}
    for (int n = 1; n <= 10; ++n)
        CHECK(orthopoly(PolyFamily::Hermite, n).derivative() == Rat(2 * n) * orthopoly(PolyFamily::Hermite, n - 1));
}

TEST_CASE("recurrence for the series coefficients") {
    QuadSys qs;
    qs.b00 = Frac(1);
    std::vector<Frac> w{Frac(1)};
    CHECK(recurrence_next(qs, F("7/3"), w).is_zero());

    QuadSys none;
    none.a10 = Frac(1);
    CHECK_THROWS_AS(recurrence_next(none, Frac(1), w), MathError);
}

TEST_CASE("quadratic systems round-trip through QuadSys") {
    PlanarSystem sys = Sys("P = (a0 + x)*(y - a2*x); Q = b0 + b1*x + b2*x^2 + a2*(a0 + x)*y;");
    QuadSys qs = QuadSys::from_system(sys);
    CHECK(qs.a11 == Frac(1));
    CHECK(qs.a20 == F("-a2"));
    CHECK(qs.a02.is_zero());
    CHECK(qs.system().P() == sys.P());
    CHECK(qs.system().Q() == sys.Q());
    CHECK_THROWS_AS(QuadSys::from_system(Sys("P = y^3; Q = x;")), MathError);
}

TEST_CASE("Chebyshev series to order 20") {
    SeriesAnsatz a;
    a.q = Dx("(1 - x^2)^(-1/4)");
    a.family = PolyFamily::ChebyshevT;
    a.alpha = F("-1/2");
    auto r = series_residual(Sys("P = 1 - x^2; Q = y*(x - y);"), a, 20);
    CHECK(r.size() == 21);
    CHECK(first_nonzero(r) == -1);
    // The wrong alpha fails at low order.
    a.alpha = F("1");
    CHECK(first_nonzero(series_residual(Sys("P = 1 - x^2; Q = y*(x - y);"), a, 20)) >= 0);
}

TEST_CASE("Legendre series to order 20") {
    SeriesAnsatz a;
    a.q = Dx("(1 - x^2)^2");
    a.family = PolyFamily::Legendre;
    PlanarSystem sys = Sys("P = 1 - x^2; Q = 1 - x*y;");
    CHECK(first_nonzero(series_residual(sys, a, 20)) == -1);

    auto w = recurrence_series(QuadSys::from_system(sys), a.alpha, a.term(0), 20, a.q.log_derivative(Axis::X));
    for (int n = 0; n <= 20; ++n) CHECK(w[static_cast<std::size_t>(n)] == a.term(n));
}

TEST_CASE("Mehler kernel series to order 16") {
    PlanarSystem sys = Sys("P = 1 + (2*a^2 - 7)*y^2 + 6*y^4 - 2*a*x*y*(1 + y^2) + 2*x^2*y^2;"
                           "Q = 2*y^2*(1 - y^2)*(a - x*y);");
    for (int a : {1, 2}) {
        SeriesAnsatz s;
        s.family = PolyFamily::Hermite;
        s.phi = phi_mehler(Rat(a));
        PlanarSystem inst = sys.substitute_param(param("a"), Frac(a));
        CHECK(first_nonzero(series_residual(inst, s, 16)) == -1);
    }
}

TEST_CASE("Hermite series at a rational instance") {
    PlanarSystem sys = Sys("P = (1 + x)*(y - x); Q = x + (1 + x)*y;");
    SeriesAnsatz a;
    a.q = Dx("exp(2*x)*(1 + x)^(-3)");
    a.phi = phi_scaled_factorial(Frac(1), Frac(1));
    a.alpha = Frac(-1);
    CHECK(first_nonzero(series_residual(sys, a, 20)) == -1);
    auto w = recurrence_series(QuadSys::from_system(sys), a.alpha, a.term(0), 20, a.q.log_derivative(Axis::X));
    for (int n = 0; n <= 20; ++n) CHECK(w[static_cast<std::size_t>(n)] == a.term(n));
}

TEST_CASE("series ansatz terms") {
    SeriesAnsatz a;
    a.phi = phi_scaled_factorial(F("1/2"), F("2"));
    CHECK(a.term(3) == F("1/2") * F("8") / F("6") * poly(PolyFamily::Hermite, 3));
    a.explicit_terms = [](int n) { return Frac(n); };
    CHECK(a.term(5) == Frac(5));
    CHECK(phi_mehler(Rat(1))(2) == F("2/8"));
}

TEST_CASE("generating functions") {
    YSeries h = genfunc_expand(Dx("exp(2*x*y - y^2)"), 4);
    REQUIRE(h.prefactor.as_frac() == F("1"));
    CHECK(h.coeffs[2] == F("2*x^2 - 1"));
    for (int n = 0; n <= 4; ++n)
        CHECK(h.coeffs[static_cast<std::size_t>(n)] * Frac(factorial(static_cast<unsigned>(n))) == poly(PolyFamily::Hermite, n));

    YSeries p = genfunc_expand(Dx("(1 - 2*x*y + y^2)^(-1/2)"), 4);
    REQUIRE(p.prefactor.as_frac() == F("1"));
    CHECK(p.coeffs[1] == F("x"));

    YSeries t = genfunc_expand(Dx("(1 - x*y)/(1 - 2*x*y + y^2)"), 4);
    REQUIRE(t.prefactor.as_frac() == F("1"));
    CHECK(t.coeffs[0] == F("1"));
    CHECK(t.coeffs[3] == poly(PolyFamily::ChebyshevT, 3));

    // y-free factors move to the prefactor.
    YSeries q = genfunc_expand(Dx("(1 + x)^(1/3)*exp(x)*(1 + y)"), 2);
    CHECK(q.coeffs[0] == F("1"));
    CHECK(q.coeffs[1] == F("1"));
    CHECK(q.prefactor.log_derivative(Axis::X) == F("1/(3*(1 + x)) + 1"));

    CHECK_THROWS_AS(genfunc_expand(Dx("y^(1/2)"), 3), MathError);
}

TEST_CASE("truncated series arithmetic") {
    TruncSeries one = TruncSeries::from_frac(F("1"), 6);
    TruncSeries s = TruncSeries::from_frac(F("1 + x*y + y^2"), 6);
    CHECK(first_nonzero((s * s.inverse() - one).coeffs()) == -1);
    TruncSeries u = TruncSeries::from_frac(F("y - y^3/3"), 6);
    // exp(u) exp(-u) = 1
    CHECK(first_nonzero((u.exp() * (F("-1") * u).exp() - one).coeffs()) == -1);
    // (s^(1/2))^2 = s
    TruncSeries r = s.pow(F("1/2"));
    CHECK(first_nonzero((r * r - s).coeffs()) == -1);
}
