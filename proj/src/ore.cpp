#include "iif/ore.hpp"

#include <algorithm>

#include "iif/error.hpp"

namespace iif {

void StepLog::assume_nonzero(const Frac& f) {
    if (f.is_rational()) return;
    Frac key(f.num().monic());
    if (key.is_rational()) return;
    if (std::find(side_conditions.begin(), side_conditions.end(), key) == side_conditions.end())
        side_conditions.push_back(key);
}

void StepLog::merge(const StepLog& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
    for (const auto& s : other.side_conditions) assume_nonzero(s);
}

OrePoly::OrePoly(Axis axis, std::vector<Frac> coeffs) : axis_(axis), c_(std::move(coeffs)) { trim(); }

void OrePoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

OrePoly OrePoly::monic() const {
    if (is_zero()) return *this;
    Frac inv = lead().inverse();
    std::vector<Frac> cs;
    cs.reserve(c_.size());
    for (const auto& c : c_) cs.push_back(c * inv);
    return OrePoly(axis_, std::move(cs));
}

Frac OrePoly::apply(const Frac& f) const {
    Frac acc;
    Frac dk = f;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (k > 0) dk = derive(dk, axis_);
        if (!c_[k].is_zero()) acc += c_[k] * dk;
    }
    return acc;
}

OrePoly operator+(const OrePoly& a, const OrePoly& b) {
    std::vector<Frac> cs(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < cs.size(); ++k) cs[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return OrePoly(a.is_zero() ? b.axis_ : a.axis_, std::move(cs));
}

OrePoly operator-(const OrePoly& a, const OrePoly& b) { return a + Frac(-1) * b; }

OrePoly operator*(const Frac& a, const OrePoly& b) {
    std::vector<Frac> cs;
    cs.reserve(b.c_.size());
    for (const auto& c : b.c_) cs.push_back(a * c);
    return OrePoly(b.axis_, std::move(cs));
}

OrePoly operator*(const OrePoly& a, const OrePoly& b) {
    if (a.is_zero() || b.is_zero()) return OrePoly(a.axis_);
    Axis ax = a.axis_;
    // D^i b = sum_k C(i,k) b^(k) D^(i-k)
    std::vector<Frac> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        std::vector<Frac> derivs{b.c_[j]};
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            while (derivs.size() <= i) derivs.push_back(derive(derivs.back(), ax));
            for (std::size_t k = 0; k <= i; ++k) {
                if (derivs[k].is_zero()) continue;
                Rat c = binomial(static_cast<unsigned>(i), static_cast<unsigned>(k));
                out[i - k + j] += Frac(c) * a.c_[i] * derivs[k];
            }
        }
    }
    return OrePoly(ax, std::move(out));
}

std::pair<OrePoly, OrePoly> right_divide(const OrePoly& a, const OrePoly& b, StepLog* log) {
    if (b.is_zero()) throw MathError(ErrorKind::ZeroDenominator, "right division by the zero operator");
    Axis ax = b.axis();
    if (log) log->assume_nonzero(b.lead());
    Frac inv = b.lead().inverse();
    OrePoly q(ax), r = a;
    while (!r.is_zero() && r.order() >= b.order()) {
        int shift = r.order() - b.order();
        std::vector<Frac> mono(static_cast<std::size_t>(shift) + 1);
        mono.back() = r.lead() * inv;
        OrePoly t(ax, std::move(mono));
        q = q + t;
        r = r - t * b;
    }
    return {q, r};
}

OrePoly ore_gcrd(const OrePoly& a, const OrePoly& b, StepLog* log) {
    OrePoly u = a.monic(), v = b.monic();
    if (u.order() < v.order()) std::swap(u, v);
    while (!v.is_zero()) {
        OrePoly r = right_divide(u, v, log).second;
        if (log)
            log->step("right remainder of orders " + std::to_string(u.order()) + " by " + std::to_string(v.order()) +
                      " has order " + std::to_string(r.order()));
        u = std::move(v);
        if (!r.is_zero() && log) log->assume_nonzero(r.lead());
        v = r.monic();
    }
    return u.monic();
}

namespace {

bool needs_parens(const std::string& s) {
    for (std::size_t i = 1; i + 2 < s.size(); ++i)
        if (s[i] == ' ' && (s[i + 1] == '+' || s[i + 1] == '-') && s[i + 2] == ' ') return true;
    return false;
}

}  // namespace

std::string to_string(const OrePoly& op) {
    if (op.is_zero()) return "0";
    std::string out;
    for (int k = op.order(); k >= 0; --k) {
        const Frac& c = op.coeffs()[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        std::string cs = to_string(c);
        bool negative = false;
        if (!needs_parens(cs) && cs[0] == '-') {
            negative = true;
            cs = cs.substr(1);
        }
        if (needs_parens(cs) || cs.find('/') != std::string::npos) cs = "(" + cs + ")";
        std::string dpart = k == 0 ? "" : (k == 1 ? "D" : "D^" + std::to_string(k));
        std::string term;
        if (k == 0) term = cs;
        else if (cs == "1") term = dpart;
        else term = cs + "*" + dpart;
        if (out.empty()) out = (negative ? "-" : "") + term;
        else out += (negative ? " - " : " + ") + term;
    }
    return out;
}

Frac reduce_mod_relation(const Frac& expr, std::string_view name, const OrePoly& relation) {
    if (relation.order() != 2) throw MathError(ErrorKind::Unsupported, "relation must have order 2");
    if (relation.lead().is_zero()) throw MathError(ErrorKind::LeadingCoefficientZero, "relation leading coefficient");
    Axis ax = relation.axis();
    int top = max_jet_order(expr, name);
    if (top < 2) return expr;
    Var w0 = jet(name, 0, ax);
    Var w1 = jet(name, 1, ax);
    Var w2 = jet(name, 2, ax);
    Frac second = -(relation.coeff(1) * Frac::variable(w1) + relation.coeff(0) * Frac::variable(w0)) / relation.lead();
    // replacement[k] expresses w^(k) through w and w'.
    std::vector<Frac> replacement{Frac::variable(w0), Frac::variable(w1), second};
    for (int k = 3; k <= top; ++k) {
        Frac next = substitute(derive(replacement.back(), ax), w2, second);
        replacement.push_back(next);
    }
    Frac out = expr;
    for (int k = top; k >= 2; --k) out = substitute(out, jet(name, k, ax), replacement[static_cast<std::size_t>(k)]);
    return out;
}

}  // namespace iif
