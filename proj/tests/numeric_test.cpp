#include <cmath>

#include <doctest.h>

#include "iif/error.hpp"
#include "iif/numeric.hpp"
#include "support.hpp"

using namespace iif;
using namespace iif::test;

namespace {
const char* kRho1 = "P = y*(-1 + 2*(x^2 - y^2)); Q = x + x^2 + y^2 + 4*x*y^2;";
const char* kRho1V = "(x^2 + y^2)^2*(1 + 2*x + x^2 + y^2)";
}  // namespace

TEST_CASE("evaluation") {
    CHECK(eval_darboux(Dx(kRho1V), {1, 1}) == doctest::Approx(20));
    CHECK(eval_darboux(Dx("exp(0)*(x + 2)^0"), {0.3, -4}) == doctest::Approx(1));
    CHECK(eval_darboux(Dx("(1 - x^2)^(-1/4)*(1 - x*y)/(1 - 2*x*y + y^2)"), {0, 0}) == doctest::Approx(1));
    CHECK(eval_frac(F("x/(y - 1)"), {2, 3}) == doctest::Approx(1));
    CHECK_THROWS_AS(eval_frac(F("x/(y - 1)"), {2, 1}), MathError);
    CHECK_THROWS_AS(eval_darboux(Dx("(x - 1)^(1/2)"), {0, 0}), MathError);
    // exp(int 2x dx) from the origin
    CHECK(eval_darboux(Dx("expint(dx = 2*x, dy = 0)"), {1.5, 0}) == doctest::Approx(std::exp(2.25)).epsilon(1e-12));
}

TEST_CASE("RK4 trajectories") {
    NumSystem rot(Sys("P = -y; Q = x;"));
    Trajectory circle = rk4_trajectory(rot, {1, 0}, 1e-3, 6283);
    double worst = 0;
    for (const auto& p : circle.points) worst = std::max(worst, std::abs(std::hypot(p.x, p.y) - 1));
    CHECK(worst < 1e-9);
    CHECK(circle.points.back().x == doctest::Approx(1).epsilon(1e-5));

    NumSystem shift(Sys("P = 1; Q = 0;"));
    Trajectory line = rk4_trajectory(shift, {0, 0}, 0.1, 10);
    CHECK(line.points.size() == 11);
    CHECK(line.points.back().x == doctest::Approx(1).epsilon(1e-14));
    CHECK(line.points.back().y == 0);

    Trajectory cubic = rk4_trajectory(NumSystem(Sys(kRho1)), {0.3, 0.2}, 1e-3, 2000);
    CHECK_FALSE(cubic.blew_up);
    CHECK(cubic.points.size() == 2001);

    // y' = y^2 from y = 1 blows up at t = 1.
    NumSystem blow(Sys("P = 1; Q = y^2;"));
    CHECK_THROWS_AS(rk4_trajectory(blow, {0, 1}, 1e-3, 5000), MathError);
    CHECK(rk4_trajectory(blow, {0, 1}, 1e-3, 5000, false).blew_up);
}

TEST_CASE("closedness") {
    NumSystem rho1(Sys(kRho1));
    auto pts = halton_points({0.1, 0.1, 1, 1}, 100);
    REQUIRE(pts.size() == 100);
    ClosednessReport good = closedness_check(rho1, NumDarboux(Dx(kRho1V)), pts);
    CHECK(good.points == 100);
    CHECK(good.max_defect < 1e-6);

    std::vector<NumPoint> circle;
    for (int k = 0; k < 16; ++k) circle.push_back({std::cos(0.39 * k), std::sin(0.39 * k)});
    CHECK(closedness_check(NumSystem(Sys("P = -y; Q = x;")), NumDarboux(Dx("x^2 + y^2")), circle).max_defect < 1e-9);

    // x' = y + 1, y' = y has divergence 1, so V = 1 is not an inverse integrating factor.
    CHECK(closedness_check(NumSystem(Sys("P = y + 1; Q = y;")), NumDarboux(Dx("1")), pts).max_defect > 0.1);
}

TEST_CASE("path independence") {
    NumSystem leg(Sys("P = 1 - x^2; Q = 1 - x*y;"));
    NumDarboux v(Dx("(1 - x^2)^2*(1 - 2*x*y + y^2)^(-1/2)"));
    CHECK(path_independence_H(leg, v, {0, 0}, {0.3, 0.2}) < 1e-10);
    CHECK(path_independence_H(leg, v, {0.2, 0.1}, {0.2, 0.1}) == 0);

    NumSystem cheb(Sys("P = 1 - x^2; Q = y*(x - y);"));
    DarbouxExpr va = Dx("(1 - x^2)^(-1/4)*(1 - x*y)/(1 - 2*x*y + y^2)");
    CHECK(path_independence_H(cheb, NumDarboux(va.pow(F("-2"))), {0.1, 0.1}, {0.4, 0.4}) < 1e-9);
    CHECK(path_independence_H(cheb, NumDarboux(va), {0.1, 0.1}, {0.4, 0.4}) > 1e-3);
}

TEST_CASE("first integral along a trajectory") {
    NumSystem leg(Sys("P = 1 - x^2; Q = 1 - x*y;"));
    NumDarboux v(Dx("(1 - x^2)^2*(1 - 2*x*y + y^2)^(-1/2)"));
    Trajectory t = rk4_trajectory(leg, {0, 0}, 1e-3, 300);
    CHECK(first_integral_drift(leg, v, t) < 1e-6);
}

TEST_CASE("Halton points are deterministic and inside the rectangle") {
    auto a = halton_points({-1, 2, 3, 5}, 50);
    auto b = halton_points({-1, 2, 3, 5}, 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
        CHECK(a[i].x > -1);
        CHECK(a[i].x < 3);
        CHECK(a[i].y > 2);
        CHECK(a[i].y < 5);
    }
}
