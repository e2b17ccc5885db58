#include "iif/linear.hpp"

#include "iif/error.hpp"

namespace iif {

namespace {

bool is_unknown_jet(Var v, const std::set<std::string>& unknowns) {
    const SymbolInfo& s = info(v);
    return s.kind == SymKind::Jet && unknowns.count(s.name) > 0;
}

}  // namespace

LinearForm LinearForm::from_frac(const Frac& f, const std::set<std::string>& unknowns) {
    for (Var v : f.den().variables())
        if (is_unknown_jet(v, unknowns))
            throw MathError(ErrorKind::Unsupported, "unknown function in a denominator");
    LinearForm out;
    std::vector<Term> rest;
    std::map<Var, std::vector<Term>> buckets;
    for (const auto& t : f.num().terms()) {
        Var found = 0;
        bool any = false;
        for (const auto& [v, e] : t.mono.factors()) {
            if (!is_unknown_jet(v, unknowns)) continue;
            if (any || e != 1) throw MathError(ErrorKind::Unsupported, "expression is not linear in the unknowns");
            any = true;
            found = v;
        }
        if (!any) rest.push_back(t);
        else buckets[found].push_back({t.mono.without(found), t.coef});
    }
    for (auto& [v, ts] : buckets) out.terms_.emplace(v, Frac(MPoly::from_terms(std::move(ts)), f.den()));
    out.rest_ = Frac(MPoly::from_terms(std::move(rest)), f.den());
    return out;
}

LinearForm LinearForm::unknown(std::string_view name, Axis axis, int order) {
    LinearForm out;
    out.terms_.emplace(jet(name, order, axis), Frac(1));
    return out;
}

std::set<std::string> LinearForm::unknowns() const {
    std::set<std::string> out;
    for (const auto& [v, c] : terms_) out.insert(info(v).name);
    return out;
}

int LinearForm::order_of(std::string_view name) const {
    int best = -1;
    for (const auto& [v, c] : terms_)
        if (info(v).name == name) best = std::max(best, info(v).order);
    return best;
}

Frac LinearForm::coefficient(std::string_view name, int order) const {
    for (const auto& [v, c] : terms_) {
        const SymbolInfo& s = info(v);
        if (s.name == name && s.order == order) return c;
    }
    return Frac();
}

OrePoly LinearForm::operator_on(std::string_view name, Axis axis) const {
    int top = order_of(name);
    std::vector<Frac> cs(static_cast<std::size_t>(top + 1));
    for (const auto& [v, c] : terms_) {
        const SymbolInfo& s = info(v);
        if (s.name == name) {
            cs[static_cast<std::size_t>(s.order)] = c;
            axis = s.axis;
        }
    }
    return OrePoly(axis, std::move(cs));
}

LinearForm LinearForm::derive(Axis axis) const {
    LinearForm out;
    out.rest_ = iif::derive(rest_, axis);
    auto add = [&out](Var v, const Frac& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = out.terms_.emplace(v, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    };
    for (const auto& [v, c] : terms_) {
        add(v, iif::derive(c, axis));
        if (info(v).axis == axis) add(next_jet(v), c);
    }
    return out;
}

LinearForm LinearForm::substitute(std::string_view name, const LinearForm& expr, Axis axis) const {
    int top = order_of(name);
    if (top < 0) return *this;
    std::vector<LinearForm> derivs{expr};
    for (int k = 1; k <= top; ++k) derivs.push_back(derivs.back().derive(axis));
    LinearForm out(rest_);
    for (const auto& [v, c] : terms_) {
        const SymbolInfo& s = info(v);
        if (s.name == name) {
            out = out + c * derivs[static_cast<std::size_t>(s.order)];
        } else {
            LinearForm single;
            single.terms_.emplace(v, c);
            out = out + single;
        }
    }
    return out;
}

LinearForm LinearForm::map_coefficients(const std::function<Frac(const Frac&)>& fn) const {
    LinearForm out(fn(rest_));
    for (const auto& [v, c] : terms_) {
        Frac m = fn(c);
        if (!m.is_zero()) out.terms_.emplace(v, m);
    }
    return out;
}

Frac LinearForm::to_frac() const {
    Frac acc = rest_;
    for (const auto& [v, c] : terms_) acc += c * Frac::variable(v);
    return acc;
}

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
    LinearForm out = a;
    out.rest_ += b.rest_;
    for (const auto& [v, c] : b.terms_) {
        auto [it, inserted] = out.terms_.emplace(v, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    }
    return out;
}

LinearForm operator-(const LinearForm& a, const LinearForm& b) { return a + Frac(-1) * b; }

LinearForm operator*(const Frac& c, const LinearForm& a) {
    if (c.is_zero()) return LinearForm();
    LinearForm out(c * a.rest_);
    for (const auto& [v, x] : a.terms_) out.terms_.emplace(v, c * x);
    return out;
}

std::string to_string(const LinearForm& f) { return to_string(f.to_frac()); }

}  // namespace iif
