// Multivariate gcd over Q by recursive primitive remainder sequences.
#include <algorithm>

#include "iif/error.hpp"
#include "iif/mpoly.hpp"
#include "iif/upoly.hpp"

namespace iif {

namespace {

MPoly normalize_unit(const MPoly& p) { return p.is_zero() ? p : p.monic(); }

MPoly strip_monomial(const MPoly& p, const Monomial& m) {
    if (m.is_one()) return p;
    std::vector<Term> ts;
    ts.reserve(p.size());
    for (const auto& t : p.terms()) ts.push_back({m.quotient_of(t.mono), t.coef});
    return MPoly::from_terms(std::move(ts));
}

MPoly gcd_primitive_prs(MPoly a, MPoly b, Var v);

// gcd of nonzero a, b with trivial monomial content.
MPoly gcd_core(const MPoly& a, const MPoly& b) {
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    if (a == b) return a.monic();

    std::vector<Var> va = a.variables();
    std::vector<Var> vb = b.variables();

    // A variable present in only one argument reduces to its coefficients.
    for (Var v : va) {
        if (!std::binary_search(vb.begin(), vb.end(), v)) {
            MPoly g = b;
            for (auto& [e, c] : a.coefficients_in(v)) {
                g = gcd(g, c);
                if (g.is_constant()) return MPoly(1);
            }
            return g;
        }
    }
    for (Var v : vb) {
        if (!std::binary_search(va.begin(), va.end(), v)) return gcd_core(b, a);
    }

    if (va.size() == 1) {
        UPoly ua = *UPoly::from_mpoly(a, va[0]);
        UPoly ub = *UPoly::from_mpoly(b, va[0]);
        return upoly_gcd(ua, ub).to_mpoly();
    }

    // Cheap exact-divisibility shortcut.
    if (a.total_degree() <= b.total_degree()) {
        if (divide_exact(b, a)) return a.monic();
    } else if (divide_exact(a, b)) {
        return b.monic();
    }

    Var main = va[0];
    Exponent best = std::max(a.degree(main), b.degree(main));
    for (Var v : va) {
        Exponent d = std::max(a.degree(v), b.degree(v));
        if (d < best) {
            best = d;
            main = v;
        }
    }
    return gcd_primitive_prs(a, b, main);
}

MPoly primitive_part(const MPoly& p, Var v) {
    MPoly c = content_in(p, v);
    return c.is_constant() ? p : divide_or_throw(p, c);
}

MPoly gcd_primitive_prs(MPoly a, MPoly b, Var v) {
    MPoly ca = content_in(a, v);
    MPoly cb = content_in(b, v);
    MPoly content = gcd(ca, cb);
    if (!ca.is_constant()) a = divide_or_throw(a, ca);
    if (!cb.is_constant()) b = divide_or_throw(b, cb);
    if (a.degree(v) < b.degree(v)) std::swap(a, b);
    while (!b.is_zero()) {
        if (b.degree(v) == 0) {
            b = MPoly(1);
            break;
        }
        MPoly r = pseudo_remainder(a, b, v);
        a = std::move(b);
        b = r.is_zero() ? r : primitive_part(r, v).monic();
    }
    MPoly g = b.is_zero() ? a : b;
    if (g.degree(v) == 0) g = MPoly(1);
    return (content * primitive_part(g, v)).monic();
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    Monomial ma = a.monomial_content();
    Monomial mb = b.monomial_content();
    Monomial m = Monomial::gcd(ma, mb);
    MPoly g = gcd_core(strip_monomial(a, ma), strip_monomial(b, mb));
    return g.mul_monomial(m, 1).monic();
}

MPoly content_in(const MPoly& p, Var v) {
    if (p.is_zero()) return p;
    if (!p.contains(v)) return p.monic();
    MPoly g;
    for (auto& [e, c] : p.coefficients_in(v)) {
        g = gcd(g, c);
        if (g.is_constant()) return MPoly(1);
    }
    return g;
}

std::vector<std::pair<MPoly, unsigned>> squarefree_factors(const MPoly& p) {
    std::map<unsigned, MPoly> acc;
    auto record = [&acc](const MPoly& f, unsigned mult) {
        if (f.is_constant()) return;
        auto it = acc.find(mult);
        if (it == acc.end()) acc.emplace(mult, f.monic());
        else it->second = (it->second * f).monic();
    };

    // Work one variable at a time: content first, then Yun on the primitive part.
    std::vector<std::pair<MPoly, unsigned>> stack;
    stack.emplace_back(p, 1);
    while (!stack.empty()) {
        auto [f, outer] = stack.back();
        stack.pop_back();
        if (f.is_constant()) continue;
        Var v = f.variables().front();
        MPoly c = content_in(f, v);
        if (!c.is_constant()) {
            stack.emplace_back(c, outer);
            f = divide_or_throw(f, c);
        }
        if (!f.contains(v)) {
            stack.emplace_back(f, outer);
            continue;
        }
        MPoly fp = f.partial(v);
        MPoly g = gcd(f, fp);
        MPoly w = divide_or_throw(f, g);
        MPoly d = divide_or_throw(fp, g) - w.partial(v);
        unsigned i = 1;
        while (!w.is_constant()) {
            MPoly ai = gcd(w, d);
            w = divide_or_throw(w, ai);
            d = divide_or_throw(d, ai) - w.partial(v);
            record(ai, i * outer);
            ++i;
        }
    }
    std::vector<std::pair<MPoly, unsigned>> out;
    for (auto& [m, f] : acc) out.emplace_back(f, m);
    return out;
}

}  // namespace iif
