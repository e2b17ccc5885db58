#include <doctest.h>

#include "iif/ansatz.hpp"
#include "iif/derivation.hpp"
#include "iif/error.hpp"
#include "iif/ore.hpp"
#include "support.hpp"

using namespace iif;
using namespace iif::test;

TEST_CASE("total derivative") {
    CHECK(dx(F("g0(x)*g4(x)")) == F("g0'(x)*g4(x) + g0(x)*g4'(x)"));
    CHECK(dx(F("x^2")) == F("2*x"));
    CHECK(dx(F("g4(x)^2/g6(x)")) == F("(2*g4(x)*g4'(x)*g6(x) - g4(x)^2*g6'(x))/g6(x)^2"));
    // Parameters and functions of y are constants for d/dx.
    CHECK(dx(F("rho*f1(y)*x")) == F("rho*f1(y)"));
    CHECK(dy(F("f1(y)*g0(x)")) == F("f1'(y)*g0(x)"));
}

TEST_CASE("jet limit") {
    const int saved = jet_limit();
    set_jet_limit(2);
    CHECK_THROWS_AS(dx(F("g0''(x)")), MathError);
    set_jet_limit(saved);
    CHECK(dx(F("g0''(x)")) == F("g0'''(x)"));
}

TEST_CASE("Ore multiplication follows D a = a D + a'") {
    const OrePoly D = OrePoly::d();
    const OrePoly x = OrePoly::scalar(F("x"));
    CHECK(D * x == OrePoly(Axis::X, {F("1"), F("x")}));
    CHECK((D - OrePoly::scalar(1)) * (D + OrePoly::scalar(1)) == OrePoly(Axis::X, {F("-1"), F("0"), F("1")}));
    CHECK(D * OrePoly::scalar(F("x^2")) == OrePoly(Axis::X, {F("2*x"), F("x^2")}));
}

TEST_CASE("greatest common right divisor") {
    const OrePoly D = OrePoly::d();
    const OrePoly g = D + OrePoly::scalar(F("x"));
    CHECK(ore_gcrd((D - OrePoly::scalar(1)) * g, g) == g);
    CHECK(ore_gcrd(D, D + OrePoly::scalar(1)) == OrePoly::scalar(1));

    auto [q, r] = right_divide((D - OrePoly::scalar(1)) * g, g);
    CHECK(r.is_zero());
    CHECK(q == D - OrePoly::scalar(1));
}

TEST_CASE("the cubic family at rho = 1 leaves one first-order equation for h0") {
    PlanarSystem sys = Sys("P = y*(-1 + 2*(x^2 - y^2)); Q = x + x^2 + y^2 + 4*x*y^2;");
    AnsatzSpec spec;
    spec.degree = 6;
    spec.parity = Parity::Even;
    TriangularOptions opts;
    opts.keep = "h0";
    auto tri = triangular_substitute(build_coefficient_system(sys, spec), opts);
    // Two fourth-order equations for h0 remain.
    REQUIRE(tri.remaining.equations.size() == 2);
    for (const auto& e : tri.remaining.equations) CHECK(e.form.order_of("h0") == 4);

    ReductionOutcome out = compatibility_eliminate(tri.remaining, "h0");
    REQUIRE(out.kind == ReductionOutcome::SingleODE);
    CHECK(out.op.monic() == OrePoly(Axis::X, {F("-(4/x + 2/(1 + x))"), F("1")}));
}

TEST_CASE("reduction modulo a second-order relation") {
    const OrePoly rel(Axis::X, {F("g0(x)"), F("g1(x)"), F("g2(x)")});
    Frac self = F("g2(x)*w''(x) + g1(x)*w'(x) + g0(x)*w(x)");
    CHECK(reduce_mod_relation(self, "w", rel).is_zero());

    // w'' = w gives w''' = w'.
    CHECK(reduce_mod_relation(jetf("w", 3), "w", OrePoly(Axis::X, {F("-1"), F("0"), F("1")})) == jetf("w", 1));

    Frac once = reduce_mod_relation(F("w''''(x) + x*w''(x)"), "w", rel);
    CHECK(reduce_mod_relation(once, "w", rel) == once);

    CHECK_THROWS_AS(reduce_mod_relation(jetf("w", 2), "w", OrePoly(Axis::X, {F("1"), F("1"), F("0")})), MathError);
}

TEST_CASE("squares of solutions of the second-order equation solve the third-order one") {
    // Third-order equation for h4 and second-order equation for w, quartic Riccati family.
    Frac third = F("g4(x)^2*h4'''(x) - 3*g4(x)*g4'(x)*h4''(x)"
                   " + (-4*g2(x)^2*g4(x)^2 + 16*g0(x)*g4(x)^3 - 4*g4(x)^2*g2'(x) + 4*g2(x)*g4(x)*g4'(x)"
                   "    + 3*g4'(x)^2 - g4(x)*g4''(x))*h4'(x)"
                   " + 2*((4*(g4(x)*g0'(x) - g0(x)*g4'(x)) - 2*g2(x)*g2'(x) - g2''(x))*g4(x)^2"
                   "    + (2*g2(x)^2 + 3*g2'(x))*g4(x)*g4'(x) - 3*g2(x)*g4'(x)^2 + g2(x)*g4(x)*g4''(x))*h4(x)");
    OrePoly second(Axis::X, {F("g2(x)*g4'(x) - g2'(x)*g4(x) + 4*g0(x)*g4(x)^2 - g2(x)^2*g4(x)"), F("-g4'(x)"), F("g4(x)")});
    Frac on_square = substitute_function(third, "h4", Axis::X, F("w(x)^2"));
    CHECK(reduce_mod_relation(on_square, "w", second).is_zero());
    // Cubes are not solutions in general.
    Frac on_cube = substitute_function(third, "h4", Axis::X, F("w(x)^3"));
    CHECK_FALSE(reduce_mod_relation(on_cube, "w", second).is_zero());
}

TEST_CASE("step log records divisions") {
    StepLog log;
    log.assume_nonzero(F("3"));
    log.assume_nonzero(F("g6(x)"));
    log.assume_nonzero(F("-g6(x)"));
    CHECK(log.side_conditions.size() == 1);
}
