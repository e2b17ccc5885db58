#include "properties.hpp"

#include <random>
#include <sstream>

#include "iif/ansatz.hpp"
#include "iif/ore.hpp"
#include "iif/system.hpp"

namespace iif::props {
namespace {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rat rational() {
        int den = integer(1, 4);
        return make_rat(integer(-5, 5), den);
    }

    Rat nonzero_rational() {
        Rat r;
        do r = rational();
        while (r == 0);
        return r;
    }

    MPoly poly_x(int max_deg) {
        MPoly x = MPoly::variable(var_x()), p;
        for (int k = 0; k <= max_deg; ++k) p += rational() * x.pow(static_cast<unsigned>(k));
        return p;
    }

    MPoly poly_xy(int max_deg) {
        MPoly x = MPoly::variable(var_x()), y = MPoly::variable(var_y()), p;
        for (int i = 0; i <= max_deg; ++i)
            for (int j = 0; i + j <= max_deg; ++j)
                if (integer(0, 2) != 0) p += rational() * x.pow(static_cast<unsigned>(i)) * y.pow(static_cast<unsigned>(j));
        return p;
    }

    /// Polynomial in x and y^2 only.
    MPoly poly_x_y2(int max_deg_x, int max_half_deg_y) {
        MPoly y = MPoly::variable(var_y()), p;
        for (int j = 0; j <= max_half_deg_y; ++j) p += poly_x(max_deg_x) * y.pow(static_cast<unsigned>(2 * j));
        return p;
    }

    OrePoly operator_x(int order, int coeff_deg) {
        std::vector<Frac> c;
        for (int k = 0; k <= order; ++k) c.emplace_back(poly_x(coeff_deg));
        if (c.back().is_zero()) c.back() = Frac(1);
        return OrePoly(Axis::X, std::move(c));
    }

    /// Draws (P, Q) from make() until they are coprime in y.
    template <class Make>
    std::pair<MPoly, MPoly> coprime_pair(Make make) {
        for (;;) {
            MPoly p = make(), q = make();
            if (!p.is_zero() && !q.is_zero() && coprime_in_y(Frac(p), Frac(q))) return {p, q};
        }
    }

private:
    std::mt19937_64 rng_;
};

void record(Outcome& o, bool ok, int index, const std::string& what) {
    ++o.cases;
    if (ok) return;
    if (o.failures++ == 0) o.first_failure = "case " + std::to_string(index) + ": " + what;
}

}  // namespace

Outcome ore_associativity(int cases, std::uint64_t seed) {
    Gen g(seed);
    Outcome o;
    for (int i = 0; i < cases; ++i) {
        OrePoly a = g.operator_x(g.integer(0, 2), 2);
        OrePoly b = g.operator_x(g.integer(0, 2), 2);
        OrePoly c = g.operator_x(g.integer(0, 2), 2);
        bool ok = (a * b) * c == a * (b * c);
        record(o, ok, i, to_string(a) + " | " + to_string(b) + " | " + to_string(c));
    }
    return o;
}

Outcome gcrd_soundness(int cases, std::uint64_t seed) {
    Gen g(seed);
    Outcome o;
    for (int i = 0; i < cases; ++i) {
        // G = D + r(x) with r polynomial; Q1, Q2 of order <= 2.
        OrePoly gop(Axis::X, {Frac(g.poly_x(1)), Frac(1)});
        OrePoly q1 = g.operator_x(g.integer(0, 2), 1);
        OrePoly q2 = g.operator_x(g.integer(0, 2), 1);
        OrePoly d = ore_gcrd(q1 * gop, q2 * gop);
        auto [quot, rem] = right_divide(d, gop);
        bool ok = d.order() >= 1 && rem.is_zero();
        record(o, ok, i, "G = " + to_string(gop) + ", gcrd = " + to_string(d));
    }
    return o;
}

Outcome residual_linearity(int cases, std::uint64_t seed) {
    Gen g(seed);
    Outcome o;
    for (int i = 0; i < cases; ++i) {
        auto [p, q] = g.coprime_pair([&] { return g.poly_xy(2) + MPoly(1); });
        PlanarSystem sys(p, q);
        Frac v1(g.poly_xy(3)), v2(g.poly_xy(3));
        Rat a = g.rational(), b = g.rational();
        Frac alpha(g.nonzero_rational());
        Frac lhs = iif_residual(sys, Frac(a) * v1 + Frac(b) * v2, alpha);
        Frac rhs = Frac(a) * iif_residual(sys, v1, alpha) + Frac(b) * iif_residual(sys, v2, alpha);
        record(o, lhs == rhs, i, "P = " + to_string(p) + ", Q = " + to_string(q));
    }
    return o;
}

Outcome powered_identity(int cases, std::uint64_t seed) {
    Gen g(seed);
    Outcome o;
    const Var x = var_x(), y = var_y();
    for (int i = 0; i < cases; ++i) {
        auto [p, q] = g.coprime_pair([&] { return g.poly_xy(2) + MPoly::variable(x); });
        PlanarSystem sys(p, q);
        Frac c(g.poly_xy(2));
        const int n = 2 + i % 2;
        Frac lhs = iif_residual(sys, c.pow(n), Frac(1));
        Frac inner = sys.P() * c.partial(x) + sys.Q() * c.partial(y) - sys.divergence() * c / Frac(n);
        Frac rhs = Frac(n) * c.pow(n - 1) * inner;
        record(o, lhs == rhs, i, "n = " + std::to_string(n) + ", c = " + to_string(c));
    }
    return o;
}

Outcome parity(int cases, std::uint64_t seed) {
    Gen g(seed);
    Outcome o;
    const MPoly y = MPoly::variable(var_y());
    for (int i = 0; i < cases; ++i) {
        MPoly p, q;
        do {
            p = y * (g.poly_x_y2(2, 1) + MPoly(1));
            q = g.poly_x_y2(2, 1) + MPoly(1);
        } while (!coprime_in_y(Frac(p), Frac(q)));
        PlanarSystem sys(p, q);
        Frac v(g.poly_x_y2(2, 2));
        bool ok = true;
        for (const auto& [k, c] : y_coefficients(iif_residual(sys, v, Frac(g.nonzero_rational()))))
            ok = ok && (k % 2 == 1 || c.is_zero());
        // The coefficient system of a symbolic even ansatz carries odd labels only.
        AnsatzSpec spec;
        spec.degree = 4;
        spec.parity = Parity::Even;
        for (const auto& e : build_coefficient_system(sys, spec).equations) ok = ok && e.power % 2 == 1;
        record(o, ok, i, "P = " + to_string(p) + ", Q = " + to_string(q));
    }
    return o;
}

}  // namespace iif::props
