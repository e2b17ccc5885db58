#include "iif/derivation.hpp"

#include <map>
#include <vector>

namespace iif {

namespace {

bool moves_with(Var v, Axis axis) {
    const SymbolInfo& s = info(v);
    switch (s.kind) {
        case SymKind::X: return axis == Axis::X;
        case SymKind::Y: return axis == Axis::Y;
        case SymKind::Param: return false;
        case SymKind::Jet: return s.axis == axis;
    }
    return false;
}

}  // namespace

MPoly derive(const MPoly& p, Axis axis) {
    MPoly out;
    for (Var v : p.variables()) {
        if (!moves_with(v, axis)) continue;
        MPoly dp = p.partial(v);
        if (is_jet(v)) dp *= MPoly::variable(next_jet(v));
        out += dp;
    }
    return out;
}

Frac derive(const Frac& f, Axis axis) {
    if (f.is_polynomial()) return Frac(derive(f.num(), axis), f.den());
    MPoly dn = derive(f.num(), axis);
    MPoly dd = derive(f.den(), axis);
    if (dd.is_zero()) return Frac(dn, f.den());
    return Frac(dn * f.den() - f.num() * dd, f.den() * f.den());
}

Frac derive(const Frac& f, Axis axis, int times) {
    Frac r = f;
    for (int i = 0; i < times; ++i) r = derive(r, axis);
    return r;
}

std::set<std::string> function_names(const Frac& f) {
    std::set<std::string> out;
    for (const MPoly* p : {&f.num(), &f.den()})
        for (Var v : p->variables())
            if (is_jet(v)) out.insert(info(v).name);
    return out;
}

int max_jet_order(const Frac& f, std::string_view name) {
    int best = -1;
    for (const MPoly* p : {&f.num(), &f.den()})
        for (Var v : p->variables()) {
            const SymbolInfo& s = info(v);
            if (s.kind == SymKind::Jet && s.name == name) best = std::max(best, s.order);
        }
    return best;
}

Frac substitute_function(const Frac& f, std::string_view name, Axis axis, const Frac& expr) {
    int top = max_jet_order(f, name);
    if (top < 0) return f;
    std::vector<Frac> derivs{expr};
    for (int k = 1; k <= top; ++k) derivs.push_back(derive(derivs.back(), axis));
    Frac out = f;
    for (int k = top; k >= 0; --k) {
        Var v = jet(name, k, axis);
        out = substitute(out, v, derivs[static_cast<std::size_t>(k)]);
    }
    return out;
}

bool is_constant_coefficient(const Frac& f) {
    for (const MPoly* p : {&f.num(), &f.den()})
        for (Var v : p->variables())
            if (!is_param(v)) return false;
    return true;
}

}  // namespace iif
