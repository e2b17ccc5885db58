#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iif/mpoly.hpp"

namespace iif {

/// Dense univariate polynomial over Q, coefficients in ascending order.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(Var v) : var_(v) {}
    UPoly(Var v, std::vector<Rat> coeffs);

    static UPoly monomial(Var v, unsigned k, const Rat& c = 1);
    /// Fails when p involves any variable other than v.
    static std::optional<UPoly> from_mpoly(const MPoly& p, Var v);

    Var var() const { return var_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& lead() const { return c_.back(); }
    Rat operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }

    UPoly monic() const;
    UPoly derivative() const;
    Rat eval(const Rat& at) const;
    MPoly to_mpoly() const;

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const Rat& c, const UPoly& a);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.var_ == b.var_ && a.c_ == b.c_; }

    /// Euclidean division; throws ZeroDenominator for b = 0.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

private:
    void trim();

    Var var_ = 0;
    std::vector<Rat> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
UPoly upoly_gcd(const UPoly& a, const UPoly& b);

/// Distinct rational roots of p.
std::vector<Rat> rational_roots(const UPoly& p);

std::string to_string(const UPoly& p);

/// Univariate rational function with coprime parts and monic denominator.
struct RatFunc {
    UPoly num;
    UPoly den;
};

/// Cancels common factors; throws ZeroDenominator when den = 0.
RatFunc ratfunc_normalize(const UPoly& num, const UPoly& den);

}  // namespace iif
