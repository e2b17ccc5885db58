#include "iif/frac.hpp"

#include "iif/error.hpp"

namespace iif {

Frac Frac::make_unit(MPoly num, MPoly den) {
    Rat lead = den.leading().coef;
    if (lead != 1) {
        Rat inv = 1 / lead;
        num *= inv;
        den *= inv;
    }
    return Frac(std::move(num), std::move(den), Raw{});
}

Frac::Frac(const MPoly& num, const MPoly& den) : den_(1) {
    if (den.is_zero()) throw MathError(ErrorKind::ZeroDenominator, "fraction with zero denominator");
    if (num.is_zero()) return;
    if (den.is_constant()) {
        num_ = num * (1 / den.constant_value());
        return;
    }
    MPoly g = gcd(num, den);
    if (g.is_constant()) {
        *this = make_unit(num, den);
    } else {
        *this = make_unit(divide_or_throw(num, g), divide_or_throw(den, g));
    }
}

Frac Frac::operator-() const { return Frac(-num_, den_, Raw{}); }

Frac Frac::inverse() const {
    if (num_.is_zero()) throw MathError(ErrorKind::ZeroDenominator, "inverse of zero");
    return make_unit(den_, num_);
}

Frac Frac::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    return Frac(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)), Raw{});
}

Frac Frac::partial(Var v) const {
    if (!contains(v)) return Frac();
    if (den_.is_constant()) return Frac(num_.partial(v), den_, Raw{});
    return Frac(num_.partial(v) * den_ - num_ * den_.partial(v), den_ * den_);
}

Frac operator+(const Frac& a, const Frac& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.den_.is_constant()) return Frac(a.num_ + b.num_, a.den_, Frac::Raw{});
        return Frac(a.num_ + b.num_, a.den_);
    }
    if (a.den_.is_constant()) return Frac(a.num_ * b.den_ + b.num_, b.den_, Frac::Raw{});
    if (b.den_.is_constant()) return Frac(a.num_ + b.num_ * a.den_, a.den_, Frac::Raw{});
    MPoly g = gcd(a.den_, b.den_);
    if (g.is_constant()) {
        // Coprime denominators leave nothing to cancel.
        return Frac::make_unit(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    MPoly ad = divide_or_throw(a.den_, g);
    MPoly bd = divide_or_throw(b.den_, g);
    MPoly num = a.num_ * bd + b.num_ * ad;
    if (num.is_zero()) return Frac();
    MPoly h = gcd(num, g);
    if (!h.is_constant()) {
        num = divide_or_throw(num, h);
        g = divide_or_throw(g, h);
    }
    return Frac::make_unit(std::move(num), g * ad * bd);
}

Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }

Frac operator*(const Frac& a, const Frac& b) {
    if (a.is_zero() || b.is_zero()) return Frac();
    if (a.is_polynomial() && b.is_polynomial()) return Frac(a.num_ * b.num_, MPoly(1), Frac::Raw{});
    MPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!bd.is_constant()) {
        MPoly g = gcd(an, bd);
        if (!g.is_constant()) {
            an = divide_or_throw(an, g);
            bd = divide_or_throw(bd, g);
        }
    }
    if (!ad.is_constant()) {
        MPoly g = gcd(bn, ad);
        if (!g.is_constant()) {
            bn = divide_or_throw(bn, g);
            ad = divide_or_throw(ad, g);
        }
    }
    return Frac::make_unit(an * bn, ad * bd);
}

Frac operator/(const Frac& a, const Frac& b) { return a * b.inverse(); }

Frac substitute(const MPoly& p, Var v, const Frac& value) {
    if (!p.contains(v)) return Frac(p);
    if (value.is_polynomial()) return Frac(substitute(p, v, value.num() * (1 / value.den().constant_value())));
    // Homogenize: sum c_k num^k den^(d-k) / den^d.
    auto coeffs = p.coefficients_in(v);
    Exponent d = coeffs.rbegin()->first;
    MPoly acc;
    for (auto& [k, c] : coeffs) acc += c * value.num().pow(k) * value.den().pow(d - k);
    return Frac(acc, value.den().pow(d));
}

Frac substitute(const Frac& f, Var v, const Frac& value) {
    if (!f.contains(v)) return f;
    return substitute(f.num(), v, value) / substitute(f.den(), v, value);
}

std::pair<MPoly, MPoly> display_parts(const Frac& f) {
    MPoly num = f.num();
    MPoly den = f.den();
    Rat scale = 1 / den.rational_content();
    // Sign of the first printed term of the denominator.
    std::string s = to_string(den);
    if (!s.empty() && s[0] == '-') scale = -scale;
    return {num * scale, den * scale};
}

std::string to_string(const Frac& f) {
    auto [num, den] = display_parts(f);
    if (den.is_constant()) {
        MPoly n = num * (1 / den.constant_value());
        return to_string(n);
    }
    return "(" + to_string(num) + ")/(" + to_string(den) + ")";
}

}  // namespace iif
