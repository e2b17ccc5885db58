#include "iif/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "iif/error.hpp"

namespace iif {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, Exponent e) {
    Monomial m;
    if (e > 0) m.factors_.emplace_back(v, e);
    return m;
}

Exponent Monomial::degree(Var v) const {
    for (const auto& [var, e] : factors_)
        if (var == v) return e;
    return 0;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

bool Monomial::divides(const Monomial& other) const {
    auto it = other.factors_.begin();
    for (const auto& [v, e] : factors_) {
        while (it != other.factors_.end() && it->first < v) ++it;
        if (it == other.factors_.end() || it->first != v || it->second < e) return false;
    }
    return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
    Monomial r;
    auto it = factors_.begin();
    for (const auto& [v, e] : other.factors_) {
        Exponent sub = 0;
        if (it != factors_.end() && it->first == v) {
            sub = it->second;
            ++it;
        }
        if (e > sub) r.factors_.emplace_back(v, e - sub);
    }
    return r;
}

Monomial Monomial::without(Var v) const {
    Monomial r;
    for (const auto& f : factors_)
        if (f.first != v) r.factors_.push_back(f);
    return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
        if (i->first < j->first) {
            r.factors_.push_back(*i++);
        } else if (j->first < i->first) {
            r.factors_.push_back(*j++);
        } else {
            r.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    r.factors_.insert(r.factors_.end(), i, a.factors_.end());
    r.factors_.insert(r.factors_.end(), j, b.factors_.end());
    return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto j = b.factors_.begin();
    for (const auto& [v, e] : a.factors_) {
        while (j != b.factors_.end() && j->first < v) ++j;
        if (j != b.factors_.end() && j->first == v) r.factors_.emplace_back(v, std::min(e, j->second));
    }
    return r;
}

int compare(const Monomial& a, const Monomial& b) {
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    auto i = fa.rbegin();
    auto j = fb.rbegin();
    while (i != fa.rend() && j != fb.rend()) {
        if (i->first != j->first) return i->first > j->first ? 1 : -1;
        if (i->second != j->second) return i->second > j->second ? 1 : -1;
        ++i;
        ++j;
    }
    if (i != fa.rend()) return 1;
    if (j != fb.rend()) return -1;
    return 0;
}

// ---------------------------------------------------------------- MPoly basics

MPoly::MPoly(const Rat& c) {
    if (c != 0) terms_.push_back({Monomial{}, c});
}

MPoly MPoly::variable(Var v) { return monomial(Monomial::of(v), 1); }

MPoly MPoly::monomial(Monomial m, Rat c) {
    MPoly p;
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
    MPoly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coef += t.coef;
            if (p.terms_.back().coef == 0) p.terms_.pop_back();
        } else if (t.coef != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Rat MPoly::constant_value() const {
    if (terms_.empty()) return 0;
    const Term& last = terms_.back();
    return last.mono.is_one() ? last.coef : Rat(0);
}

Exponent MPoly::degree(Var v) const {
    Exponent d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
    return d;
}

unsigned MPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

bool MPoly::contains(Var v) const {
    for (const auto& t : terms_)
        if (t.mono.degree(v) > 0) return true;
    return false;
}

std::vector<Var> MPoly::variables() const {
    std::vector<Var> vs;
    for (const auto& t : terms_)
        for (const auto& f : t.mono.factors()) vs.push_back(f.first);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

std::map<Exponent, MPoly> MPoly::coefficients_in(Var v) const {
    std::map<Exponent, std::vector<Term>> buckets;
    for (const auto& t : terms_) buckets[t.mono.degree(v)].push_back({t.mono.without(v), t.coef});
    std::map<Exponent, MPoly> out;
    for (auto& [e, ts] : buckets) out.emplace(e, from_terms(std::move(ts)));
    return out;
}

MPoly MPoly::coefficient(Var v, Exponent e) const {
    std::vector<Term> ts;
    for (const auto& t : terms_)
        if (t.mono.degree(v) == e) ts.push_back({t.mono.without(v), t.coef});
    return from_terms(std::move(ts));
}

MPoly MPoly::partial(Var v) const {
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        Exponent e = t.mono.degree(v);
        if (e == 0) continue;
        Monomial m = t.mono.without(v) * Monomial::of(v, e - 1);
        ts.push_back({std::move(m), t.coef * e});
    }
    return from_terms(std::move(ts));
}

Monomial MPoly::monomial_content() const {
    if (terms_.empty()) return {};
    Monomial m = terms_.front().mono;
    for (const auto& t : terms_) {
        if (m.is_one()) break;
        m = Monomial::gcd(m, t.mono);
    }
    return m;
}

Rat MPoly::rational_content() const {
    if (terms_.empty()) return 1;
    Int g = 0, l = 1;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
    }
    Rat c(g, l);
    c.canonicalize();
    return c;
}

MPoly MPoly::monic() const {
    if (terms_.empty()) return *this;
    Rat inv = 1 / terms_.front().coef;
    return *this * inv;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

namespace {

template <bool Subtract>
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        int c = compare(i->mono, j->mono);
        if (c > 0) {
            out.push_back(*i++);
        } else if (c < 0) {
            out.push_back({j->mono, Subtract ? Rat(-j->coef) : j->coef});
            ++j;
        } else {
            Rat s = Subtract ? Rat(i->coef - j->coef) : Rat(i->coef + j->coef);
            if (s != 0) out.push_back({i->mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i != a.end(); ++i) out.push_back(*i);
    for (; j != b.end(); ++j) out.push_back({j->mono, Subtract ? Rat(-j->coef) : j->coef});
    return out;
}

}  // namespace

MPoly& MPoly::operator+=(const MPoly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms<false>(terms_, o.terms_);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms<true>(terms_, o.terms_);
    return *this;
}

MPoly& MPoly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
    *this = *this * o;
    return *this;
}

MPoly MPoly::mul_monomial(const Monomial& m, const Rat& c) const {
    MPoly r;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    // Multiplying by a monomial preserves the order.
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const MPoly& small = a.size() <= b.size() ? a : b;
    const MPoly& large = a.size() <= b.size() ? b : a;
    // Each row is sorted; merge them pairwise.
    std::vector<std::vector<Term>> rows;
    rows.reserve(small.size());
    for (const auto& t : small.terms_) rows.push_back(large.mul_monomial(t.mono, t.coef).terms_);
    while (rows.size() > 1) {
        std::vector<std::vector<Term>> next;
        next.reserve((rows.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < rows.size(); i += 2) next.push_back(merge_terms<false>(rows[i], rows[i + 1]));
        if (rows.size() % 2 == 1) next.push_back(std::move(rows.back()));
        rows = std::move(next);
    }
    MPoly r;
    r.terms_ = std::move(rows.front());
    return r;
}

bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
}

MPoly MPoly::pow(unsigned n) const {
    MPoly result(1);
    MPoly base = *this;
    while (n > 0) {
        if (n & 1U) result *= base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

// ---------------------------------------------------------------- division

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw MathError(ErrorKind::ZeroDenominator, "polynomial division by zero");
    if (a.is_zero()) return MPoly{};
    if (b.is_constant()) return a * (1 / b.constant_value());
    const Term& lb = b.leading();
    MPoly rem = a;
    std::vector<Term> quot;
    while (!rem.is_zero()) {
        const Term& lr = rem.leading();
        if (!lb.mono.divides(lr.mono)) return std::nullopt;
        Monomial qm = lb.mono.quotient_of(lr.mono);
        Rat qc = lr.coef / lb.coef;
        rem -= b.mul_monomial(qm, qc);
        quot.push_back({std::move(qm), std::move(qc)});
    }
    // Quotient terms were produced in decreasing order.
    MPoly q;
    q = MPoly::from_terms(std::move(quot));
    return q;
}

MPoly divide_or_throw(const MPoly& a, const MPoly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw MathError(ErrorKind::Unsupported, "inexact polynomial division");
    return *q;
}

MPoly substitute(const MPoly& p, Var v, const MPoly& value) {
    if (!p.contains(v)) return p;
    auto coeffs = p.coefficients_in(v);
    // Horner from the top degree.
    MPoly acc;
    Exponent prev = coeffs.rbegin()->first;
    bool first = true;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (!first) acc = acc * value.pow(prev - it->first);
        acc += it->second;
        prev = it->first;
        first = false;
    }
    return acc * value.pow(prev);
}

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, Var v) {
    Exponent db = b.degree(v);
    MPoly lb = b.coefficient(v, db);
    MPoly tail = b - lb.mul_monomial(Monomial::of(v, db), 1);
    MPoly r = a;
    while (!r.is_zero()) {
        Exponent dr = r.degree(v);
        if (dr < db) break;
        MPoly lr = r.coefficient(v, dr);
        MPoly rest = r - lr.mul_monomial(Monomial::of(v, dr), 1);
        // r = lb*rest - lr*v^(dr-db)*tail
        r = lb * rest - (lr * tail).mul_monomial(Monomial::of(v, dr - db), 1);
    }
    return r;
}

// ---------------------------------------------------------------- printing

namespace {

bool display_mono_greater(const Monomial& a, const Monomial& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    std::vector<Monomial::Factor> fa(a.factors().begin(), a.factors().end());
    std::vector<Monomial::Factor> fb(b.factors().begin(), b.factors().end());
    auto by_display = [](const Monomial::Factor& p, const Monomial::Factor& q) { return display_less(p.first, q.first); };
    std::sort(fa.begin(), fa.end(), by_display);
    std::sort(fb.begin(), fb.end(), by_display);
    std::size_t i = 0;
    for (; i < fa.size() && i < fb.size(); ++i) {
        if (fa[i].first != fb[i].first) return display_less(fa[i].first, fb[i].first);
        if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
    }
    return fa.size() > fb.size();
}

std::string mono_string(const Monomial& m) {
    std::vector<Monomial::Factor> fs(m.factors().begin(), m.factors().end());
    std::sort(fs.begin(), fs.end(),
              [](const Monomial::Factor& p, const Monomial::Factor& q) { return display_less(p.first, q.first); });
    std::string out;
    for (const auto& [v, e] : fs) {
        if (!out.empty()) out += '*';
        out += display_name(v);
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
}

}  // namespace

std::string to_string(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::vector<const Term*> ts;
    for (const auto& t : p.terms()) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](const Term* a, const Term* b) { return display_mono_greater(a->mono, b->mono); });
    std::ostringstream os;
    bool first = true;
    for (const Term* t : ts) {
        Rat c = t->coef;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (t->mono.is_one()) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << '*';
            os << mono_string(t->mono);
        }
    }
    return os.str();
}

}  // namespace iif
