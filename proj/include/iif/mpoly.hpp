#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iif/rat.hpp"
#include "iif/symbol.hpp"

namespace iif {

using Exponent = std::uint32_t;

/// Power product of variables, kept sorted by variable key with positive exponents.
class Monomial {
public:
    using Factor = std::pair<Var, Exponent>;
    using Storage = boost::container::small_vector<Factor, 4>;

    Monomial() = default;
    static Monomial of(Var v, Exponent e = 1);

    const Storage& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    Exponent degree(Var v) const;
    unsigned total_degree() const;

    bool divides(const Monomial& other) const;
    /// other / *this; requires divides(other).
    Monomial quotient_of(const Monomial& other) const;
    Monomial without(Var v) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

    static Monomial gcd(const Monomial& a, const Monomial& b);

private:
    Storage factors_;
    friend class MPoly;
};

/// Lexicographic monomial order, larger variable keys more significant.
/// Returns <0, 0, >0.
int compare(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    Rat coef;
};

/// Sparse multivariate polynomial over Q. Terms are kept in strictly decreasing
/// monomial order with nonzero coefficients, so equality is structural.
class MPoly {
public:
    MPoly() = default;
    MPoly(const Rat& c);  // NOLINT(google-explicit-constructor)
    MPoly(long c) : MPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)

    static MPoly variable(Var v);
    static MPoly monomial(Monomial m, Rat c = 1);
    /// Sorts and merges an arbitrary term list.
    static MPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_monomial() const { return terms_.size() == 1; }
    Rat constant_value() const;
    const Term& leading() const { return terms_.front(); }

    Exponent degree(Var v) const;
    unsigned total_degree() const;
    bool contains(Var v) const;
    std::vector<Var> variables() const;

    /// View as a polynomial in v: exponent -> coefficient (free of v).
    std::map<Exponent, MPoly> coefficients_in(Var v) const;
    MPoly coefficient(Var v, Exponent e) const;
    MPoly partial(Var v) const;

    /// Largest monomial dividing every term.
    Monomial monomial_content() const;
    /// Positive rational c such that p/c has coprime integer coefficients.
    Rat rational_content() const;
    /// Divides through by the leading coefficient.
    MPoly monic() const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const Rat& c);

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
    friend MPoly operator*(const Rat& c, MPoly a) { return a *= c; }
    friend MPoly operator*(MPoly a, long c) { return a *= Rat(c); }
    friend MPoly operator*(long c, MPoly a) { return a *= Rat(c); }
    friend bool operator==(const MPoly& a, const MPoly& b);
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly mul_monomial(const Monomial& m, const Rat& c) const;
    MPoly pow(unsigned n) const;

private:
    std::vector<Term> terms_;
};

/// Quotient if b divides a exactly.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);
/// Like divide_exact but throws when the division leaves a remainder.
MPoly divide_or_throw(const MPoly& a, const MPoly& b);

/// Replace v by the polynomial value.
MPoly substitute(const MPoly& p, Var v, const MPoly& value);

/// Sparse pseudo-remainder of a by b with respect to v.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, Var v);

/// Monic greatest common divisor; gcd(0, 0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);

/// gcd of the coefficients of p viewed as a polynomial in v.
MPoly content_in(const MPoly& p, Var v);

/// Square-free decomposition: p = c * prod f_i^i, returns (f_i, i) with nonconstant f_i.
std::vector<std::pair<MPoly, unsigned>> squarefree_factors(const MPoly& p);

/// Canonical text such as `3/2*x^2 - x + 1`.
std::string to_string(const MPoly& p);

}  // namespace iif
