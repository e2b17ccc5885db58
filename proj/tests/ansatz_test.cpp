#include <doctest.h>

#include "iif/ansatz.hpp"
#include "iif/derivation.hpp"
#include "support.hpp"

using namespace iif;
using namespace iif::test;

namespace {

const char* kRiccati = "P = -y; Q = g0(x) + g2(x)*y^2 + g4(x)*y^4;";
const char* kSextic = "P = -y; Q = g0(x) + g2(x)*y^2 + g4(x)*y^4 + g6(x)*y^6;";

std::set<std::string> unknowns_of(const LinearDiffSystem& s) { return {s.unknowns.begin(), s.unknowns.end()}; }

/// a = r b with r free of y and of the unknowns' jets.
bool proportional(const Frac& a, const Frac& b, const std::set<std::string>& unknowns) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    Frac r = a / b;
    if (r.contains(var_y())) return false;
    for (const MPoly* p : {&r.num(), &r.den()})
        for (Var v : p->variables())
            if (is_jet(v) && unknowns.count(info(v).name)) return false;
    return true;
}

const LabelledEquation* find_label(const LinearDiffSystem& s, const std::string& label) {
    for (const auto& e : s.equations)
        if (e.label == label) return &e;
    return nullptr;
}

AnsatzSpec even(int degree) {
    AnsatzSpec s;
    s.degree = degree;
    s.parity = Parity::Even;
    return s;
}

}  // namespace

TEST_CASE("quartic ansatz on the Riccati family gives three relations") {
    LinearDiffSystem ls = build_coefficient_system(Sys(kRiccati), even(4));
    REQUIRE(ls.equations.size() == 3);
    auto u = unknowns_of(ls);
    const std::pair<const char*, const char*> expected[] = {
        {"y^5", "h4'(x) - 2*g2(x)*h4(x) + 2*g4(x)*h2(x)"},
        {"y^3", "h2'(x) - 4*g0(x)*h4(x) + 4*g4(x)*h0(x)"},
        {"y^1", "h0'(x) - 2*g0(x)*h2(x) + 2*g2(x)*h0(x)"},
    };
    for (const auto& [label, text] : expected) {
        const LabelledEquation* e = find_label(ls, label);
        REQUIRE(e != nullptr);
        CHECK(proportional(e->form.to_frac(), F(text), u));
    }
}

TEST_CASE("constant ansatz on a Hamiltonian-like system") {
    AnsatzSpec s;
    s.degree = 0;
    LinearDiffSystem ls = build_coefficient_system(Sys("P = -y; Q = g0(x);"), s);
    REQUIRE(ls.equations.size() == 1);
    CHECK(proportional(ls.equations[0].form.to_frac(), F("h0'(x)"), unknowns_of(ls)));
}

TEST_CASE("triangular substitution leaves the third-order equation for h4") {
    auto tri = triangular_substitute(build_coefficient_system(Sys(kRiccati), even(4)));
    REQUIRE(tri.remaining.equations.size() == 1);
    CHECK(tri.solved.size() == 2);
    const LinearForm& f = tri.remaining.equations[0].form;
    CHECK(f.order_of("h4") == 3);
    CHECK(f.unknowns() == std::set<std::string>{"h4"});
    CHECK(proportional(f.to_frac(),
                       F("g4(x)^2*h4'''(x) - 3*g4(x)*g4'(x)*h4''(x)"
                         " + (-4*g2(x)^2*g4(x)^2 + 16*g0(x)*g4(x)^3 - 4*g4(x)^2*g2'(x) + 4*g2(x)*g4(x)*g4'(x)"
                         "    + 3*g4'(x)^2 - g4(x)*g4''(x))*h4'(x)"
                         " + 2*((4*(g4(x)*g0'(x) - g0(x)*g4'(x)) - 2*g2(x)*g2'(x) - g2''(x))*g4(x)^2"
                         "    + (2*g2(x)^2 + 3*g2'(x))*g4(x)*g4'(x) - 3*g2(x)*g4'(x)^2 + g2(x)*g4(x)*g4''(x))*h4(x)"),
                       {"h4"}));
}

TEST_CASE("triangular substitution is a fixpoint on one equation") {
    LinearDiffSystem one;
    one.unknowns = {"h0"};
    one.equations.push_back({"y^0", LinearForm::from_frac(F("h0'(x) - x*h0(x)"), {"h0"}), 0});
    auto tri = triangular_substitute(one);
    CHECK(tri.solved.empty());
    REQUIRE(tri.remaining.equations.size() == 1);
    CHECK(tri.remaining.equations[0].form == one.equations[0].form);
}

TEST_CASE("powered ansatz on the Riccati family") {
    AnsatzSpec s = even(2);
    s.shape = AnsatzShape::PoweredSum;
    s.power = 2;
    s.prefix = "ht";
    auto tri = triangular_substitute(build_coefficient_system(Sys(kRiccati), s));
    REQUIRE(tri.solved.size() == 1);
    CHECK(tri.solved[0].first == "ht0");
    CHECK(tri.solved[0].second.to_frac() == F("(g2(x)*ht2(x) - ht2'(x))/(2*g4(x))"));
    REQUIRE(tri.remaining.equations.size() == 1);
    CHECK(proportional(tri.remaining.equations[0].form.to_frac(),
                       F("g4(x)*ht2''(x) - g4'(x)*ht2'(x) + (g2(x)*g4'(x) - g2'(x)*g4(x) + 4*g0(x)*g4(x)^2 - g2(x)^2*g4(x))*ht2(x)"),
                       {"ht2"}));
}

TEST_CASE("sextic family: two second-order equations and one condition") {
    auto tri = triangular_substitute(build_coefficient_system(Sys(kSextic), even(6)));
    REQUIRE(tri.remaining.equations.size() == 2);
    const LinearForm& a = tri.remaining.equations[0].form;
    const LinearForm& b = tri.remaining.equations[1].form;
    CHECK(a.order_of("h6") == 2);
    CHECK(b.order_of("h6") == 2);

    auto conds = equivalence_conditions(a, b, "h6");
    REQUIRE_FALSE(conds.empty());
    SolvedConditions sol = solve_conditions(conds, {"g0"});
    REQUIRE(sol.assignments.size() == 1);
    CHECK(sol.assignments[0].first == "g0");
    CHECK(sol.assignments[0].second == F("g2(x)*g4(x)/(3*g6(x)) - 2/27*g4(x)^3/g6(x)^2 + (g4'(x)*g6(x) - g4(x)*g6'(x))/(6*g6(x)^2)"));
    CHECK(sol.residual.empty());

    auto sub = [&](const LinearForm& f) { return f.map_coefficients([&](const Frac& c) { return apply_assignments(c, sol.assignments); }); };
    CHECK(proportional(sub(a).to_frac(), sub(b).to_frac(), {"h6"}));
    CHECK(proportional(sub(a).to_frac(),
                       F("3*g6(x)*h6''(x) + (4*g4(x)^2 - 12*g2(x)*g6(x) - 3*g6'(x))*h6'(x)"
                         " + (8*g4(x)*g4'(x) - 8*g4(x)^2*g6'(x)/g6(x) + 12*g2(x)*g6'(x) - 12*g6(x)*g2'(x))*h6(x)"),
                       {"h6"}));
    CHECK(equivalence_conditions(a, a, "h6").empty());
}

TEST_CASE("general sextic leaves five equations for h6") {
    PlanarSystem sys = Sys("P = c0(x) + c2(x)*y^2;"
                           "Q = d0(x) + d1(x)*y + d2(x)*y^2 + d3(x)*y^3 + d4(x)*y^4 + d5(x)*y^5 + d6(x)*y^6;");
    AnsatzSpec s;
    s.degree = 6;
    LinearDiffSystem ls = build_coefficient_system(sys, s);
    CHECK(ls.equations.size() == 11);
    auto tri = triangular_substitute(ls);
    CHECK(tri.solved.size() == 6);
    CHECK(tri.remaining.equations.size() == 5);
    for (const auto& e : tri.remaining.equations) CHECK(e.form.unknowns() == std::set<std::string>{"h6"});
}

TEST_CASE("reversible cubic family: conditions on g3 and g4") {
    PlanarSystem sys = Sys("P = y*(g1(x) + y^2); Q = g3(x) + g4(x)*y^2;");
    TriangularOptions o;
    o.keep = "h0";
    o.integrate = true;
    auto tri = triangular_substitute(build_coefficient_system(sys, even(6)), o);
    std::vector<LinearForm> top;
    std::vector<MPoly> conds;
    int order = 0;
    for (const auto& e : tri.remaining.equations) order = std::max(order, e.form.order_of("h0"));
    for (const auto& e : tri.remaining.equations) {
        if (e.form.order_of("h0") == order) top.push_back(e.form);
        else for (auto& c : nullity_conditions(e.form)) conds.push_back(c);
    }
    REQUIRE(top.size() >= 2);
    for (std::size_t i = 1; i < top.size(); ++i)
        for (auto& c : equivalence_conditions(top[0], top[i], "h0")) conds.push_back(c);
    SolvedConditions sol = solve_conditions(conds);
    std::map<std::string, Frac> got(sol.assignments.begin(), sol.assignments.end());
    REQUIRE(got.count("g3"));
    REQUIRE(got.count("g4"));
    CHECK(got["g3"] == F("(2*g1(x)*g4(x) - g1(x)*g1'(x))/4"));
    CHECK(got["g4"] == F("-g1'(x)/2"));
}

TEST_CASE("compatibility on planted operators") {
    const OrePoly D = OrePoly::d();
    const OrePoly g = D - OrePoly::scalar(F("1/(x - 1)"));
    LinearDiffSystem s;
    s.unknowns = {"h"};
    auto eq = [](const OrePoly& op) {
        Frac f;
        for (int k = 0; k <= op.order(); ++k) f += op.coeff(k) * jetf("h", k);
        return LinearForm::from_frac(f, {"h"});
    };
    s.equations.push_back({"a", eq((D + OrePoly::scalar(F("x"))) * g), -1});
    s.equations.push_back({"b", eq((D * D - OrePoly::scalar(3)) * g), -1});
    ReductionOutcome out = compatibility_eliminate(s, "h");
    REQUIRE(out.kind == ReductionOutcome::SingleODE);
    CHECK(out.op.monic() == g);

    HyperexpSolution h = solve_first_order_hyperexp(out.op);
    CHECK(h.exact);
    CHECK(h.log_derivative == F("1/(x - 1)"));
    CHECK(h.value.as_frac() == F("x - 1"));

    LinearDiffSystem bad;
    bad.unknowns = {"h"};
    bad.equations.push_back({"a", eq(D), -1});
    bad.equations.push_back({"b", eq(D + OrePoly::scalar(1)), -1});
    CHECK(compatibility_eliminate(bad, "h").kind == ReductionOutcome::Inconsistent);
}

TEST_CASE("first-order solutions") {
    HyperexpSolution c = solve_first_order_hyperexp(OrePoly::d());
    CHECK(c.value.as_frac() == F("1"));
    HyperexpSolution h0 = solve_first_order_hyperexp(OrePoly(Axis::X, {F("-(4/x + 2/(1 + x))"), F("1")}));
    CHECK(h0.exact);
    CHECK(h0.value.as_frac() == F("x^4*(1 + x)^2"));
    // A denominator without rational roots stays as an exponential integral.
    HyperexpSolution e = solve_first_order_hyperexp(OrePoly(Axis::X, {F("-1/(x^2 + 1)"), F("1")}));
    CHECK_FALSE(e.exact);
    CHECK(e.value.log_derivative(Axis::X) == F("1/(x^2 + 1)"));
}

TEST_CASE("condition core strips content and monomials") {
    CHECK(condition_core(F("-6*x^2*g0(x)*(g1(x) + 1)/g2(x)")) == (MPoly::variable(jet("g1", 0)) + 1).monic());
}
