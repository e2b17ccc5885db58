#include "iif/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "iif/error.hpp"

namespace iif {

UPoly::UPoly(Var v, std::vector<Rat> coeffs) : var_(v), c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::monomial(Var v, unsigned k, const Rat& c) {
    std::vector<Rat> cs(k + 1, Rat(0));
    cs[k] = c;
    return UPoly(v, std::move(cs));
}

std::optional<UPoly> UPoly::from_mpoly(const MPoly& p, Var v) {
    std::vector<Rat> cs(p.degree(v) + 1, Rat(0));
    for (const auto& t : p.terms()) {
        Exponent e = t.mono.degree(v);
        if (t.mono.factors().size() > (e > 0 ? 1U : 0U)) return std::nullopt;
        cs[e] = t.coef;
    }
    return UPoly(v, std::move(cs));
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return (1 / lead()) * *this;
}

UPoly UPoly::derivative() const {
    std::vector<Rat> cs;
    for (std::size_t k = 1; k < c_.size(); ++k) cs.push_back(c_[k] * static_cast<unsigned long>(k));
    return UPoly(var_, std::move(cs));
}

Rat UPoly::eval(const Rat& at) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
}

MPoly UPoly::to_mpoly() const {
    std::vector<Term> ts;
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) ts.push_back({Monomial::of(var_, static_cast<Exponent>(k)), c_[k]});
    return MPoly::from_terms(std::move(ts));
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rat> cs(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t k = 0; k < cs.size(); ++k) cs[k] = a[k] + b[k];
    return UPoly(a.is_zero() ? b.var_ : a.var_, std::move(cs));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.var_);
    std::vector<Rat> cs(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) cs[i + j] += a.c_[i] * b.c_[j];
    return UPoly(a.var_, std::move(cs));
}

UPoly operator*(const Rat& c, const UPoly& a) {
    std::vector<Rat> cs = a.c_;
    for (auto& x : cs) x *= c;
    return UPoly(a.var_, std::move(cs));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw MathError(ErrorKind::ZeroDenominator, "univariate division by zero");
    std::vector<Rat> r = a.c_;
    int db = b.degree();
    if (a.degree() < db) return {UPoly(a.var_), a};
    std::vector<Rat> q(a.degree() - db + 1, Rat(0));
    Rat inv = 1 / b.lead();
    for (int k = a.degree(); k >= db; --k) {
        if (r[k] == 0) continue;
        Rat f = r[k] * inv;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
    }
    return {UPoly(a.var_, std::move(q)), UPoly(a.var_, std::move(r))};
}

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
    UPoly u = a, v = b;
    while (!v.is_zero()) {
        UPoly r = divmod(u, v).second;
        u = std::move(v);
        v = r.monic();
    }
    return u.monic();
}

namespace {

std::vector<Int> positive_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

std::vector<Rat> rational_roots(const UPoly& p) {
    std::vector<Rat> roots;
    if (p.degree() <= 0) return roots;
    std::size_t low = 0;
    while (p.coeffs()[low] == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    // Integer coefficients for the rational root theorem.
    Int l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Int> ic;
    for (std::size_t k = low; k < p.coeffs().size(); ++k) ic.push_back(Int(p.coeffs()[k] * l));
    if (ic.size() == 1) return roots;
    UPoly reduced(p.var(), std::vector<Rat>(p.coeffs().begin() + static_cast<long>(low), p.coeffs().end()));
    const Int limit("1000000000000");
    if (abs(ic.front()) > limit || abs(ic.back()) > limit) return roots;
    for (const Int& num : positive_divisors(ic.front())) {
        for (const Int& den : positive_divisors(ic.back())) {
            for (int sign : {1, -1}) {
                Rat r(num * sign, den);
                r.canonicalize();
                if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
                if (reduced.eval(r) == 0) roots.push_back(r);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string to_string(const UPoly& p) { return to_string(p.to_mpoly()); }

RatFunc ratfunc_normalize(const UPoly& num, const UPoly& den) {
    if (den.is_zero()) throw MathError(ErrorKind::ZeroDenominator, "rational function with zero denominator");
    if (num.is_zero()) return {UPoly(den.var()), UPoly(den.var(), {Rat(1)})};
    UPoly g = upoly_gcd(num, den);
    UPoly n = divmod(num, g).first;
    UPoly d = divmod(den, g).first;
    Rat l = d.lead();
    return {(1 / l) * n, d.monic()};
}

}  // namespace iif
