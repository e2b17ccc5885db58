#pragma once

#include <string>

#include "iif/mpoly.hpp"

namespace iif {

/// Element of the fraction field Q(x, y, parameters, jets).
/// Numerator and denominator are coprime and the denominator is monic with
/// respect to the internal monomial order, so equal values compare equal.
class Frac {
public:
    Frac() : den_(1) {}
    Frac(const MPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
    Frac(const Rat& c) : num_(c), den_(1) {}    // NOLINT(google-explicit-constructor)
    Frac(long c) : num_(c), den_(1) {}          // NOLINT(google-explicit-constructor)
    /// Throws ZeroDenominator when den = 0.
    Frac(const MPoly& num, const MPoly& den);

    static Frac variable(Var v) { return Frac(MPoly::variable(v)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    /// True for rational constants only.
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    Rat rational_value() const { return num_.constant_value() / den_.constant_value(); }
    bool contains(Var v) const { return num_.contains(v) || den_.contains(v); }

    Frac operator-() const;
    Frac inverse() const;
    Frac pow(int n) const;
    /// Formal partial derivative treating every variable as independent.
    Frac partial(Var v) const;

    friend Frac operator+(const Frac& a, const Frac& b);
    friend Frac operator-(const Frac& a, const Frac& b);
    friend Frac operator*(const Frac& a, const Frac& b);
    friend Frac operator/(const Frac& a, const Frac& b);
    Frac& operator+=(const Frac& o) { return *this = *this + o; }
    Frac& operator-=(const Frac& o) { return *this = *this - o; }
    Frac& operator*=(const Frac& o) { return *this = *this * o; }
    Frac& operator/=(const Frac& o) { return *this = *this / o; }
    friend bool operator==(const Frac& a, const Frac& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

private:
    struct Raw {};
    Frac(MPoly num, MPoly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
    static Frac make_unit(MPoly num, MPoly den);

    MPoly num_;
    MPoly den_;
};

/// Substitute a rational expression for v.
Frac substitute(const Frac& f, Var v, const Frac& value);
Frac substitute(const MPoly& p, Var v, const Frac& value);

/// Numerator and denominator scaled so the denominator has coprime integer
/// coefficients and a positive leading printed term.
std::pair<MPoly, MPoly> display_parts(const Frac& f);

/// `num` or `(num)/(den)`.
std::string to_string(const Frac& f);

}  // namespace iif
